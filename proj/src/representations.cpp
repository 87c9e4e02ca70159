#include "ncgalois/representations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace ncgalois {

namespace {

constexpr std::uint64_t kTableSeed = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kCanonicalSeed = 0x2545f4914f6cdd1dULL;
constexpr int kMaxResample = 8;

void check_shapes(const FiniteGroup& g, const std::vector<Matrix>& mats) {
  if (static_cast<int>(mats.size()) != g.order())
    throw Error(ErrorCode::DimensionMismatch, "need one matrix per group element");
  const Index d = mats.empty() ? 0 : mats[0].rows();
  for (const auto& m : mats)
    if (m.rows() != d || m.cols() != d) throw Error(ErrorCode::DimensionMismatch, "representation matrices must be square of equal size");
  for (const auto& m : mats)
    if (!m.allFinite()) throw Error(ErrorCode::InvalidInput, "representation matrix has non-finite entries");
}

}  // namespace

double homomorphism_residual(const FiniteGroup& g, const std::vector<Matrix>& mats) {
  double worst = 0.0;
  const int n = g.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      worst = std::max(worst, (mats[a] * mats[b] - mats[g.mul(a, b)]).cwiseAbs().maxCoeff());
  return worst;
}

UnitaryRep::UnitaryRep(GroupPtr group, std::vector<Matrix> matrices, double tol)
    : group_(std::move(group)), matrices_(std::move(matrices)) {
  if (!group_) throw Error(ErrorCode::InvalidInput, "representation without group");
  check_shapes(*group_, matrices_);
  dim_ = matrices_[0].rows();
  for (int g = 0; g < group_->order(); ++g)
    if (!is_unitary(matrices_[g], tol * std::max<double>(1.0, static_cast<double>(dim_))))
      throw Error(ErrorCode::NotUnitary, "matrix of element " + std::to_string(g) + " is not unitary");
  if ((matrices_[group_->identity()] - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > tol)
    throw Error(ErrorCode::NotAHomomorphism, "identity element is not represented by the identity matrix");
  if (homomorphism_residual(*group_, matrices_) > tol)
    throw Error(ErrorCode::NotAHomomorphism, "rep(a) rep(b) differs from rep(ab)");
}

UnitaryRep trivial_rep(const GroupPtr& g, Index dim) {
  return UnitaryRep(g, std::vector<Matrix>(g->order(), Matrix::Identity(dim, dim)));
}

UnitaryRep regular_rep(const GroupPtr& g) {
  const int n = g->order();
  std::vector<Matrix> mats(n, Matrix::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int h = 0; h < n; ++h) mats[a](g->mul(a, h), h) = 1.0;
  return UnitaryRep(g, std::move(mats));
}

UnitaryRep permutation_rep(const GroupPtr& g, const std::vector<Permutation>& perms) {
  if (static_cast<int>(perms.size()) != g->order()) throw Error(ErrorCode::DimensionMismatch, "need one permutation per element");
  const Index d = perms.empty() ? 0 : static_cast<Index>(perms[0].size());
  std::vector<Matrix> mats;
  for (const auto& p : perms) {
    if (static_cast<Index>(p.size()) != d) throw Error(ErrorCode::DimensionMismatch, "permutations of different degree");
    Matrix m = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) m(p[i], i) = 1.0;
    mats.push_back(std::move(m));
  }
  return UnitaryRep(g, std::move(mats));
}

UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b) {
  require_same_parent(a.group(), b.group());
  const Index da = a.dim(), db = b.dim();
  std::vector<Matrix> mats;
  for (int g = 0; g < a.group()->order(); ++g) {
    Matrix m = Matrix::Zero(da + db, da + db);
    m.topLeftCorner(da, da) = a(g);
    m.bottomRightCorner(db, db) = b(g);
    mats.push_back(std::move(m));
  }
  return UnitaryRep(a.group(), std::move(mats));
}

UnitaryRep conjugate_rep(const UnitaryRep& rep, const Matrix& w) {
  std::vector<Matrix> mats;
  for (const auto& m : rep.matrices()) mats.push_back(w.adjoint() * m * w);
  return UnitaryRep(rep.group(), std::move(mats));
}

UnitaryRep restrict_to(const UnitaryRep& rep, const Matrix& isometry) { return conjugate_rep(rep, isometry); }

Matrix averaged_gram(const std::vector<Matrix>& mats) {
  Matrix p = Matrix::Zero(mats[0].rows(), mats[0].cols());
  for (const auto& m : mats) p += m.adjoint() * m;
  return p / static_cast<double>(mats.size());
}

UnitaryRep unitarize(const GroupPtr& g, const std::vector<Matrix>& mats, double tol) {
  check_shapes(*g, mats);
  for (int a = 0; a < g->order(); ++a) {
    const RealVector s = singular_values(mats[a]);
    if (s.size() && s(s.size() - 1) <= 1e-12 * std::max(1.0, s(0)))
      throw Error(ErrorCode::SingularMatrix, "matrix of element " + std::to_string(a) + " is singular");
  }
  const double scale = std::max(1.0, std::sqrt(averaged_gram(mats).cwiseAbs().maxCoeff()));
  if (homomorphism_residual(*g, mats) > tol * scale * scale)
    throw Error(ErrorCode::NotAHomomorphism, "input matrices do not multiply like the group");
  const Matrix p = averaged_gram(mats);
  const Matrix s = matrix_real_power(p, 0.5);
  const Matrix s_inv = matrix_real_power(p, -0.5);
  std::vector<Matrix> out;
  for (const auto& m : mats) out.push_back(s * m * s_inv);
  return UnitaryRep(g, std::move(out), tol * 10);
}

Matrix weyl_operator(const UnitaryRep& rep, const Vector& u) {
  if (u.size() != rep.dim()) throw Error(ErrorCode::DimensionMismatch, "vector length differs from representation dimension");
  if (u.norm() <= 1e-14) throw Error(ErrorCode::ZeroVector, "Weyl operator needs a nonzero vector");
  Matrix k = Matrix::Zero(rep.dim(), rep.dim());
  for (const auto& m : rep.matrices()) {
    const Vector v = m * u;
    k += v * v.adjoint();
  }
  return k / static_cast<double>(rep.matrices().size());
}

GroupFunction character(const UnitaryRep& rep) {
  std::vector<Complex> chi;
  for (const auto& m : rep.matrices()) chi.push_back(m.trace());
  return GroupFunction(rep.group(), std::move(chi));
}

Complex character_inner(const GroupFunction& a, const GroupFunction& b) {
  require_same_parent(a.parent(), b.parent());
  Complex s = 0.0;
  for (int g = 0; g < a.size(); ++g) s += a(g) * std::conj(b(g));
  return s / static_cast<double>(a.size());
}

double character_norm(const UnitaryRep& rep) {
  const GroupFunction chi = character(rep);
  return character_inner(chi, chi).real();
}

bool IrrepTable::complete() const {
  long total = 0;
  for (const auto& r : irreps) total += static_cast<long>(r.dim() * r.dim());
  return total == group->order();
}

int IrrepTable::find(const GroupFunction& chi) const {
  for (int s = 0; s < size(); ++s)
    if (max_abs_diff(characters[s], chi) <= 1e-8) return s;
  return -1;
}

namespace {

std::vector<Matrix> restricted(const UnitaryRep& rep, const Matrix& q) {
  std::vector<Matrix> out;
  out.reserve(rep.matrices().size());
  for (const auto& m : rep.matrices()) out.push_back(q.adjoint() * m * q);
  return out;
}

double restricted_character_norm(const std::vector<Matrix>& mats) {
  double s = 0.0;
  for (const auto& m : mats) s += std::norm(m.trace());
  return s / static_cast<double>(mats.size());
}

void split_recursive(const UnitaryRep& rep, const Matrix& q, Rng& rng, std::vector<Matrix>& leaves) {
  const std::vector<Matrix> mats = restricted(rep, q);
  const double c = restricted_character_norm(mats);
  if (std::abs(c - std::round(c)) > 1e-6)
    throw Error(ErrorCode::DecompositionFailed, "restricted commutant dimension " + std::to_string(c) + " is not an integer");
  if (std::lround(c) == 1) {
    leaves.push_back(q);
    return;
  }
  const Index k = q.cols();
  for (int attempt = 0; attempt <= kMaxResample; ++attempt) {
    const Matrix h = rng.hermitian(k);
    Matrix t = Matrix::Zero(k, k);
    for (const auto& m : mats) t += m * h * m.adjoint();
    t /= static_cast<double>(mats.size());
    const HermitianEig e = hermitian_eig(t);
    const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
    bool collision = false;
    for (Index i = 1; i < k; ++i) {
      const double gap = e.values(i) - e.values(i - 1);
      if (gap > 1e-10 * scale && gap < 1e-8 * scale) collision = true;
    }
    const auto clusters = cluster_values(e.values, 1e-10 * scale);
    if (collision || clusters.size() < 2) continue;
    for (const auto& [b, end] : clusters) split_recursive(rep, Matrix(q * e.vectors.middleCols(b, end - b)), rng, leaves);
    return;
  }
  throw Error(ErrorCode::DecompositionFailed, "eigenvalue collisions persisted after resampling");
}

// Unitary W with rho(g) W = W sigma(g), from an averaged random seed matrix.
Matrix align(const std::vector<Matrix>& rho, const UnitaryRep& sigma, Rng& rng) {
  const Index k = sigma.dim();
  for (int attempt = 0; attempt <= kMaxResample; ++attempt) {
    const Matrix x = rng.gaussian(k, k);
    Matrix w = Matrix::Zero(k, k);
    for (std::size_t g = 0; g < rho.size(); ++g) w += rho[g] * x * sigma(static_cast<int>(g)).adjoint();
    w /= static_cast<double>(rho.size());
    const double c = (w.adjoint() * w).trace().real() / static_cast<double>(k);
    if (c < 1e-6) continue;
    w /= std::sqrt(c);
    if (is_unitary(w, 1e-8)) return w;
  }
  throw Error(ErrorCode::DecompositionFailed, "could not build a unitary intertwiner to the canonical irrep");
}

UnitaryRep canonical_basis(const UnitaryRep& rho) {
  const Index d = rho.dim();
  if (d == 1) return rho;
  const int n = rho.group()->order();
  Rng rng(kCanonicalSeed);
  for (int attempt = 0; attempt <= kMaxResample; ++attempt) {
    Matrix h = Matrix::Zero(d, d);
    // Both Hermitian parts: for Q8 every rho(g) + rho(g)^* is scalar.
    for (int g = 0; g < n; ++g) {
      h += rng.uniform(0.5, 1.5) * (rho(g) + rho(g).adjoint());
      h += rng.uniform(0.5, 1.5) * Complex(0, 1) * (rho(g) - rho(g).adjoint());
    }
    const HermitianEig e = hermitian_eig(h);
    const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
    bool simple = true;
    for (Index i = 1; i < d; ++i) simple = simple && (e.values(i) - e.values(i - 1) > 1e-6 * scale);
    if (!simple) continue;
    Matrix v = e.vectors;
    std::vector<Matrix> mats = restricted(rho, v);
    for (Index k = 1; k < d; ++k) {
      for (int g = 0; g < n; ++g) {
        const Complex z = mats[g](0, k);
        if (std::abs(z) > 1e-6) {
          v.col(k) *= std::conj(z) / std::abs(z);
          break;
        }
      }
    }
    return restrict_to(rho, v);
  }
  throw Error(ErrorCode::DecompositionFailed, "no simple-spectrum element found for the canonical basis");
}

bool character_before(const GroupFunction& a, Index da, const GroupFunction& b, Index db) {
  if (da != db) return da < db;
  for (int g = 0; g < a.size(); ++g) {
    if (std::abs(a(g).real() - b(g).real()) > 1e-9) return a(g).real() > b(g).real();
    if (std::abs(a(g).imag() - b(g).imag()) > 1e-9) return a(g).imag() > b(g).imag();
  }
  return false;
}

}  // namespace

std::vector<Matrix> split_irreducible(const UnitaryRep& rep, Rng& rng) {
  std::vector<Matrix> leaves;
  if (rep.dim() == 0) return leaves;
  split_recursive(rep, Matrix::Identity(rep.dim(), rep.dim()), rng, leaves);
  return leaves;
}

IrrepTable compute_irrep_table(const GroupPtr& g) {
  const UnitaryRep reg = regular_rep(g);
  Rng rng(kTableSeed);
  const std::vector<Matrix> leaves = split_irreducible(reg, rng);

  std::vector<UnitaryRep> reps;
  std::vector<GroupFunction> chars;
  for (const auto& q : leaves) {
    UnitaryRep rho = restrict_to(reg, q);
    GroupFunction chi = character(rho);
    bool seen = false;
    for (const auto& c : chars) seen = seen || max_abs_diff(c, chi) <= 1e-8;
    if (seen) continue;
    reps.push_back(canonical_basis(rho));
    chars.push_back(character(reps.back()));
  }

  std::vector<int> order(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return character_before(chars[a], reps[a].dim(), chars[b], reps[b].dim());
  });

  IrrepTable table{g, {}, {}};
  for (int i : order) {
    table.irreps.push_back(reps[i]);
    table.characters.push_back(chars[i]);
  }
  if (!table.complete()) throw Error(ErrorCode::DecompositionFailed, "irrep dimensions do not satisfy sum d^2 = |G|");
  return table;
}

std::shared_ptr<const IrrepTable> irrep_table(const GroupPtr& g) {
  static std::shared_mutex mutex;
  static std::map<MultTable, std::shared_ptr<const IrrepTable>> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(g->table());
    if (it != cache.end()) return it->second;
  }
  std::unique_lock lock(mutex);
  auto it = cache.find(g->table());
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const IrrepTable>(compute_irrep_table(g));
  cache.emplace(g->table(), table);
  return table;
}

Decomposition decompose(const UnitaryRep& rep, std::uint64_t seed) {
  const auto table = irrep_table(rep.group());
  Rng rng(seed);
  const std::vector<Matrix> leaves = split_irreducible(rep, rng);

  std::vector<std::vector<Matrix>> by_irrep(table->size());
  for (const auto& q : leaves) {
    const std::vector<Matrix> rho = restricted(rep, q);
    std::vector<Complex> chi;
    for (const auto& m : rho) chi.push_back(m.trace());
    const int s = table->find(GroupFunction(rep.group(), chi));
    if (s < 0) throw Error(ErrorCode::DecompositionFailed, "leaf character matches no irrep");
    by_irrep[s].push_back(q * align(rho, table->irreps[s], rng));
  }

  Decomposition d;
  d.intertwiner = Matrix::Zero(rep.dim(), rep.dim());
  Index col = 0;
  int sum_sq = 0;
  for (int s = 0; s < table->size(); ++s) {
    if (by_irrep[s].empty()) continue;
    const int m = static_cast<int>(by_irrep[s].size());
    d.blocks.push_back({s, m});
    sum_sq += m * m;
    for (const auto& q : by_irrep[s]) {
      d.intertwiner.middleCols(col, q.cols()) = q;
      col += q.cols();
    }
  }
  const double c = character_norm(rep);
  d.commutant_dimension = static_cast<int>(std::lround(c));
  if (col != rep.dim() || sum_sq != d.commutant_dimension)
    throw Error(ErrorCode::DecompositionFailed, "multiplicity accounting is inconsistent with the character norm");
  return d;
}

double decomposition_residual(const UnitaryRep& rep, const Decomposition& d, const IrrepTable& table) {
  double worst = 0.0;
  for (int g = 0; g < rep.group()->order(); ++g) {
    Matrix expected = Matrix::Zero(rep.dim(), rep.dim());
    Index off = 0;
    for (const auto& b : d.blocks) {
      const Index k = table.dim(b.irrep);
      for (int c = 0; c < b.multiplicity; ++c, off += k) expected.block(off, off, k, k) = table.irreps[b.irrep](g);
    }
    const Matrix got = d.intertwiner.adjoint() * rep(g) * d.intertwiner;
    worst = std::max(worst, (got - expected).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<MatrixCoefficient> matrix_coefficients(const UnitaryRep& rep) {
  std::vector<MatrixCoefficient> out;
  for (Index i = 0; i < rep.dim(); ++i)
    for (Index j = 0; j < rep.dim(); ++j) {
      std::vector<Complex> v;
      for (const auto& m : rep.matrices()) v.push_back(m(i, j));
      out.push_back({i, j, GroupFunction(rep.group(), std::move(v))});
    }
  return out;
}

SchurReport schur_check(const UnitaryRep& rep1, const UnitaryRep& rep2, double tol) {
  require_same_parent(rep1.group(), rep2.group());
  if (std::abs(character_norm(rep1) - 1.0) > 1e-8 || std::abs(character_norm(rep2) - 1.0) > 1e-8)
    throw Error(ErrorCode::NotIrreducible, "schur_check needs irreducible representations");
  const int n = rep1.group()->order();
  const Index d1 = rep1.dim(), d2 = rep2.dim();
  SchurReport r;
  r.d1 = d1;
  r.d2 = d2;
  r.same_irrep = max_abs_diff(character(rep1), character(rep2)) <= 1e-8;

  // Coefficient table: row g, column i*d + j.
  Matrix c1(n, d1 * d1), c2(n, d2 * d2);
  for (int g = 0; g < n; ++g) {
    for (Index i = 0; i < d1; ++i)
      for (Index j = 0; j < d1; ++j) c1(g, i * d1 + j) = rep1(g)(i, j);
    for (Index k = 0; k < d2; ++k)
      for (Index l = 0; l < d2; ++l) c2(g, k * d2 + l) = rep2(g)(k, l);
  }
  r.values = c1.transpose() * c2.conjugate() / static_cast<double>(n);

  Matrix expected = Matrix::Zero(d1 * d1, d2 * d2);
  if (r.same_irrep) {
    // rep2 = W* rep1 W gives (1/d) W_ik conj(W_jl).
    std::vector<Matrix> m1 = rep1.matrices();
    Rng rng(0x51ed);
    const Matrix w = align(m1, rep2, rng);
    for (Index i = 0; i < d1; ++i)
      for (Index j = 0; j < d1; ++j)
        for (Index k = 0; k < d2; ++k)
          for (Index l = 0; l < d2; ++l)
            expected(i * d1 + j, k * d2 + l) = w(i, k) * std::conj(w(j, l)) / static_cast<double>(d1);
  }
  r.max_residual = (r.values - expected).cwiseAbs().maxCoeff();
  r.matches = r.max_residual <= tol;
  return r;
}

std::vector<PeterWeylFunction> peter_weyl_basis(const IrrepTable& table) {
  if (!table.complete()) throw Error(ErrorCode::IncompleteTable, "sum of squared dimensions differs from group order");
  std::vector<PeterWeylFunction> out;
  for (int s = 0; s < table.size(); ++s) {
    const UnitaryRep& rep = table.irreps[s];
    const double scale = std::sqrt(static_cast<double>(rep.dim()));
    for (auto& mc : matrix_coefficients(rep)) {
      std::vector<Complex> v = mc.values.values();
      for (auto& x : v) x *= scale;
      out.push_back({s, mc.i, mc.j, GroupFunction(table.group, std::move(v))});
    }
  }
  return out;
}

double peter_weyl_residual(const IrrepTable& table) {
  const auto basis = peter_weyl_basis(table);
  const int n = table.group->order();
  Matrix f(n, static_cast<Index>(basis.size()));
  for (std::size_t b = 0; b < basis.size(); ++b)
    for (int g = 0; g < n; ++g) f(g, static_cast<Index>(b)) = basis[b].values(g);
  const Matrix gram = f.adjoint() * f / static_cast<double>(n);
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

FourierBlocks fourier(const GroupFunction& f, const IrrepTable& table) {
  if (!table.complete()) throw Error(ErrorCode::IncompleteTable, "sum of squared dimensions differs from group order");
  require_same_parent(f.parent(), table.group);
  FourierBlocks out;
  for (const auto& rep : table.irreps) {
    Matrix b = Matrix::Zero(rep.dim(), rep.dim());
    for (int g = 0; g < f.size(); ++g) b += f(g) * rep(g);
    out.push_back(std::move(b));
  }
  return out;
}

GroupFunction inverse_fourier(const FourierBlocks& blocks, const IrrepTable& table) {
  if (!table.complete()) throw Error(ErrorCode::IncompleteTable, "sum of squared dimensions differs from group order");
  if (static_cast<int>(blocks.size()) != table.size()) throw Error(ErrorCode::DimensionMismatch, "block count differs from irrep count");
  const int n = table.group->order();
  std::vector<Complex> v(n, 0.0);
  for (int s = 0; s < table.size(); ++s) {
    const double d = static_cast<double>(table.dim(s));
    for (int g = 0; g < n; ++g) v[g] += d * (table.irreps[s](g).adjoint() * blocks[s]).trace();
  }
  for (auto& x : v) x /= static_cast<double>(n);
  return GroupFunction(table.group, std::move(v));
}

Matrix measure_rep(const GroupFunction& mu, const UnitaryRep& carrier) {
  require_same_parent(mu.parent(), carrier.group());
  Matrix out = Matrix::Zero(carrier.dim(), carrier.dim());
  for (int g = 0; g < mu.size(); ++g) out += mu(g) * carrier(g);
  return out;
}

ProperReport is_proper(const UnitaryRep& pi) {
  const auto table = irrep_table(pi.group());
  const GroupFunction chi = character(pi);
  ProperReport r;
  for (int s = 0; s < table->size(); ++s) {
    const double m = character_inner(chi, table->characters[s]).real();
    const int mi = static_cast<int>(std::lround(m));
    r.multiplicities.push_back(mi);
    (mi > 0 ? r.sigma_prime : r.sigma_zero).push_back(s);
  }
  const int n = pi.group()->order();
  Matrix flat(pi.dim() * pi.dim(), n);
  for (int g = 0; g < n; ++g) flat.col(g) = vec(pi(g));
  r.rank = rank(flat);
  r.proper = r.rank == n;
  return r;
}

}  // namespace ncgalois
