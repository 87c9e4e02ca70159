#include "ncgalois/algebras.hpp"

#include <algorithm>
#include <cmath>

namespace ncgalois {

namespace {

constexpr double kClosureTol = 1e-8;
constexpr std::uint64_t kProbeSeed = 0x6a09e667f3bcc908ULL;
constexpr int kMaxResample = 8;

Matrix stack_vecs(const std::vector<Matrix>& ms, Index n) {
  Matrix out(n * n, static_cast<Index>(ms.size()));
  for (std::size_t k = 0; k < ms.size(); ++k) out.col(static_cast<Index>(k)) = vec(ms[k]);
  return out;
}

}  // namespace

StarAlgebra trusted_algebra(Index n, Subspace basis) { return StarAlgebra(n, std::move(basis), StarAlgebra::Trusted{}); }

StarAlgebra::StarAlgebra(Index n, Subspace basis, const Tolerance&) : n_(n), basis_(std::move(basis)) {
  if (basis_.ambient_dim() != n * n) throw Error(ErrorCode::DimensionMismatch, "algebra basis must live in the n^2 matrix space");
  if (basis_.dim() == 0) throw Error(ErrorCode::NotAnAlgebra, "empty basis cannot contain the identity");
  if (residual(Matrix::Identity(n, n)) > kClosureTol * std::sqrt(static_cast<double>(n)))
    throw Error(ErrorCode::NotAnAlgebra, "identity is not in the span");
  const double r = closure_residual(*this);
  if (r > kClosureTol) throw Error(ErrorCode::NotAnAlgebra, "span is not closed under products and adjoints, residual " + std::to_string(r));
}

StarAlgebra StarAlgebra::full(Index n) { return trusted_algebra(n, Subspace(Matrix(Matrix::Identity(n * n, n * n)))); }

StarAlgebra StarAlgebra::scalars(Index n) {
  Matrix b = vec(Matrix::Identity(n, n)) / std::sqrt(static_cast<double>(n));
  return trusted_algebra(n, Subspace(std::move(b)));
}

StarAlgebra StarAlgebra::diagonal(Index n) {
  Matrix b = Matrix::Zero(n * n, n);
  for (Index i = 0; i < n; ++i) b(i * n + i, i) = 1.0;
  return trusted_algebra(n, Subspace(std::move(b)));
}

std::vector<Matrix> StarAlgebra::elements() const {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (Index k = 0; k < dim(); ++k) out.push_back(element(k));
  return out;
}

Matrix StarAlgebra::project(const Matrix& a) const { return unvec(basis_.project(vec(a)), n_); }

double StarAlgebra::residual(const Matrix& a) const { return basis_.residual(vec(a)); }

bool StarAlgebra::contains(const StarAlgebra& other, double tol) const { return subspace_contains(basis_, other.basis_, tol); }

bool StarAlgebra::equals(const StarAlgebra& other, double tol) const { return subspace_equal(basis_, other.basis_, tol); }

Matrix StarAlgebra::random_element(Rng& rng, bool hermitian) const {
  Vector c(dim());
  for (Index k = 0; k < dim(); ++k) c(k) = rng.complex_normal();
  Matrix x = unvec(basis_.basis() * c, n_);
  if (hermitian) x = Matrix((x + x.adjoint()) / 2.0);
  return x;
}

double closure_residual(const StarAlgebra& a, std::uint64_t seed) {
  const Index n = a.ambient_dim();
  const Index d = a.dim();
  if (a.is_full()) return 0.0;
  std::vector<Matrix> probes;
  if (d <= 16) {
    probes = a.elements();
  } else {
    Rng rng(seed);
    for (int k = 0; k < 6; ++k) {
      Matrix x = a.random_element(rng, false);
      probes.push_back(x / x.norm());
    }
  }
  std::vector<Matrix> images;
  for (const auto& p : probes) images.push_back(p.adjoint());
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = 0; j < probes.size(); ++j) images.push_back(probes[i] * probes[j]);
  return a.subspace().residual(stack_vecs(images, n));
}

StarAlgebra algebra_from_generators(const std::vector<Matrix>& gens, Index n, const Tolerance& tol) {
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::DimensionMismatch, "generator is not n x n");
  std::vector<Matrix> seeds{Matrix::Identity(n, n)};
  for (const auto& g : gens) {
    seeds.push_back(g);
    seeds.push_back(g.adjoint());
  }
  Subspace span = column_span(stack_vecs(seeds, n), tol);
  std::vector<Matrix> gen_star(seeds.begin() + 1, seeds.end());
  // Multiplying the current span by the generators grows it by at least one dimension per round.
  for (Index round = 0; round <= n * n; ++round) {
    std::vector<Matrix> products;
    for (Index k = 0; k < span.dim(); ++k) {
      const Matrix b = unvec(span.basis().col(k), n);
      for (const auto& g : gen_star) products.push_back(b * g);
    }
    if (products.empty()) return StarAlgebra(n, span, tol);
    const Matrix pv = stack_vecs(products, n);
    const Matrix outside = pv - span.basis() * (span.basis().adjoint() * pv);
    const double scale = std::max(1.0, pv.colwise().norm().maxCoeff());
    if (outside.colwise().norm().maxCoeff() <= 1e-9 * scale) return StarAlgebra(n, span, tol);
    Matrix both(n * n, span.dim() + pv.cols());
    both << span.basis(), pv;
    span = column_span(both, tol);
  }
  throw Error(ErrorCode::NoConvergence, "generated span did not stabilize within n^2 rounds");
}

Subspace commutant_of_set(const std::vector<Matrix>& elems, const Matrix& probe, Index n, const Tolerance& tol) {
  if (elems.empty()) return Subspace(Matrix(Matrix::Identity(n * n, n * n)));
  const HermitianEig e = hermitian_eig(probe);
  const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  // Loose merging keeps the ansatz a superset of the true commutant.
  const auto clusters = cluster_values(e.values, 1e-7 * scale);
  const Matrix& v = e.vectors;

  std::vector<std::pair<Index, Index>> params;
  for (const auto& [b, end] : clusters)
    for (Index q = b; q < end; ++q)
      for (Index p = b; p < end; ++p) params.emplace_back(p, q);
  const Index u = static_cast<Index>(params.size());

  StreamedNullspace solver(u);
  Matrix block(n * n, u);
  for (const auto& s : elems) {
    const Matrix sv = s * v;
    const Matrix vs = v.adjoint() * s;
    for (Index c = 0; c < u; ++c) {
      const auto [p, q] = params[static_cast<std::size_t>(c)];
      // vec(S v_p v_q^* - v_p v_q^* S)
      Eigen::Map<Matrix> col(block.col(c).data(), n, n);
      col.noalias() = sv.col(p) * v.col(q).adjoint();
      col.noalias() -= v.col(p) * vs.row(q);
    }
    solver.add_rows(block);
  }
  const Subspace coeffs = solver.solve(tol);

  Matrix pv(n * n, u);
  for (Index c = 0; c < u; ++c) {
    const auto [p, q] = params[static_cast<std::size_t>(c)];
    Eigen::Map<Matrix> col(pv.col(c).data(), n, n);
    col.noalias() = v.col(p) * v.col(q).adjoint();
  }
  return Subspace(Matrix(pv * coeffs.basis()));
}

StarAlgebra commutant(const StarAlgebra& a, const Tolerance& tol) {
  const Index n = a.ambient_dim();
  if (a.dim() == 1) return StarAlgebra::full(n);
  if (a.is_full()) return StarAlgebra::scalars(n);
  Rng rng(kProbeSeed ^ static_cast<std::uint64_t>(a.dim() * 1000003 + n));
  const Matrix probe = a.random_element(rng, true);
  return StarAlgebra(n, commutant_of_set(a.elements(), probe, n, tol), tol);
}

bool bicommutant_check(const StarAlgebra& a, double tol) { return bicommutant_check(a, commutant(a), tol); }

bool bicommutant_check(const StarAlgebra& a, const StarAlgebra& c, double tol) {
  const Index n = a.ambient_dim();
  if (c.dim() > 2) {
    // A is inside C'' which is inside S' for any S in C, so S' = A settles it.
    Rng rng(kProbeSeed ^ static_cast<std::uint64_t>(c.dim()));
    const Matrix x = c.random_element(rng, false);
    const Matrix y = c.random_element(rng, false);
    const Subspace s = commutant_of_set({x, y}, Matrix((x + x.adjoint()) / 2.0), n);
    if (s.dim() == a.dim() && s.contains(a.subspace().basis(), tol)) return true;
  }
  return commutant(c).equals(a, tol);
}

StarAlgebra intersect(const StarAlgebra& a, const StarAlgebra& b, const Tolerance& tol) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "algebras act on different spaces");
  if (b.is_full()) return a;
  if (a.is_full()) return b;
  return StarAlgebra(a.ambient_dim(), subspace_intersection(a.subspace(), b.subspace(), tol), tol);
}

StarAlgebra relative_commutant(const StarAlgebra& a, const StarAlgebra& m, const Tolerance& tol) {
  if (a.ambient_dim() != m.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "algebras act on different spaces");
  if (!m.contains(a)) throw Error(ErrorCode::NotContained, "first algebra is not contained in the second");
  return intersect(commutant(a, tol), m, tol);
}

StarAlgebra center(const StarAlgebra& m, const Tolerance& tol) { return relative_commutant(m, m, tol); }

bool is_factor(const StarAlgebra& m) { return center(m).dim() == 1; }

namespace {

struct CentralBlock {
  Matrix q;  // orthonormal basis of the range of the central projection
  Index block_dim = 0;
  Index multiplicity = 0;
  Matrix w;  // r x r, columns a*m + j
};

std::vector<Matrix> compress(const std::vector<Matrix>& elems, const Matrix& q) {
  std::vector<Matrix> out;
  for (const auto& b : elems) out.push_back(q.adjoint() * b * q);
  return out;
}

bool build_block_basis(CentralBlock& blk, const std::vector<Matrix>& local, Rng& rng) {
  const Index r = blk.q.cols();
  const Index nb = blk.block_dim, mb = blk.multiplicity;
  auto random_local = [&](bool herm) {
    Matrix x = Matrix::Zero(r, r);
    for (const auto& b : local) x += rng.complex_normal() * b;
    if (herm) x = Matrix((x + x.adjoint()) / 2.0);
    return x;
  };
  const Matrix y = random_local(true);
  const HermitianEig e = hermitian_eig(y);
  const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  const auto clusters = cluster_values(e.values, 1e-8 * scale);
  if (static_cast<Index>(clusters.size()) != nb) return false;
  for (const auto& [b, end] : clusters)
    if (end - b != mb) return false;

  const Matrix z = random_local(false);
  const Matrix e1 = e.vectors.middleCols(0, mb);
  blk.w = Matrix::Zero(r, r);
  for (Index a = 0; a < nb; ++a) {
    const Matrix ea = e.vectors.middleCols(a * mb, mb);
    Matrix f = ea * (ea.adjoint() * z * e1);  // r x m: image of the first eigenspace basis
    const double nf = f.norm() / std::sqrt(static_cast<double>(mb));
    if (nf < 1e-6) return false;
    f /= nf;
    for (Index j = 0; j < mb; ++j) blk.w.col(a * mb + j) = f.col(j);
  }
  return is_unitary(blk.w, 1e-7);
}

}  // namespace

BlockStructure block_structure(const StarAlgebra& m, std::uint64_t seed) {
  const Index n = m.ambient_dim();
  const StarAlgebra z = center(m);
  const std::vector<Matrix> elems = m.elements();
  Rng rng(seed);

  for (int attempt = 0; attempt <= kMaxResample; ++attempt) {
    const Matrix h = z.random_element(rng, true);
    const HermitianEig e = hermitian_eig(h);
    const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
    const auto clusters = cluster_values(e.values, 1e-8 * scale);
    if (static_cast<Index>(clusters.size()) != z.dim()) continue;

    std::vector<CentralBlock> blocks;
    bool ok = true;
    for (const auto& [b, end] : clusters) {
      CentralBlock blk;
      blk.q = e.vectors.middleCols(b, end - b);
      const std::vector<Matrix> local = compress(elems, blk.q);
      const Index r = blk.q.cols();
      Matrix lv(r * r, static_cast<Index>(local.size()));
      for (std::size_t k = 0; k < local.size(); ++k) lv.col(static_cast<Index>(k)) = vec(local[k]);
      const Index d = column_span(lv).dim();
      const Index nb = static_cast<Index>(std::lround(std::sqrt(static_cast<double>(d))));
      if (nb * nb != d || nb == 0 || r % nb != 0) {
        ok = false;
        break;
      }
      blk.block_dim = nb;
      blk.multiplicity = r / nb;
      if (!build_block_basis(blk, local, rng)) {
        ok = false;
        break;
      }
      blocks.push_back(std::move(blk));
    }
    if (!ok) continue;

    std::stable_sort(blocks.begin(), blocks.end(), [](const CentralBlock& a, const CentralBlock& b) {
      if (a.block_dim != b.block_dim) return a.block_dim < b.block_dim;
      return a.multiplicity < b.multiplicity;
    });

    BlockStructure out;
    out.unitary = Matrix::Zero(n, n);
    Index col = 0;
    for (const auto& blk : blocks) {
      out.blocks.push_back({blk.block_dim, blk.multiplicity});
      out.central_projections.push_back(blk.q * blk.q.adjoint());
      out.unitary.middleCols(col, blk.q.cols()) = blk.q * blk.w;
      col += blk.q.cols();
    }

    // Every basis element must become sum_i X_i (x) 1_{m_i}.
    double worst = 0.0;
    for (const auto& b : elems) {
      const Matrix c = out.unitary.adjoint() * b * out.unitary;
      Matrix expected = Matrix::Zero(n, n);
      Index off = 0;
      for (const auto& wb : out.blocks) {
        const Index nb = wb.block_dim, mb = wb.multiplicity;
        for (Index a = 0; a < nb; ++a)
          for (Index bb = 0; bb < nb; ++bb) {
            const Complex x = c(off + a * mb, off + bb * mb);
            for (Index j = 0; j < mb; ++j) expected(off + a * mb + j, off + bb * mb + j) = x;
          }
        off += nb * mb;
      }
      worst = std::max(worst, (c - expected).cwiseAbs().maxCoeff());
    }
    out.residual = worst;
    if (worst > 1e-7) continue;
    return out;
  }
  throw Error(ErrorCode::CenterSplitFailed, "could not split the center into minimal projections");
}

bool preserves(const StarAlgebra& m, const UnitaryRep& u, const Subgroup& h, double tol) {
  if (m.is_full()) return true;
  const Index n = m.ambient_dim();
  std::vector<Matrix> probes;
  if (m.dim() <= 16) {
    probes = m.elements();
  } else {
    Rng rng(kProbeSeed + 17);
    for (int k = 0; k < 4; ++k) {
      Matrix x = m.random_element(rng, false);
      probes.push_back(x / x.norm());
    }
  }
  std::vector<Matrix> images;
  for (int g : h.generators())
    for (const auto& p : probes) images.push_back(u(g) * p * u(g).adjoint());
  if (images.empty()) return true;
  return m.subspace().residual(stack_vecs(images, n)) <= tol;
}

StarAlgebra fixed_point_algebra(const StarAlgebra& m, const UnitaryRep& u, const Subgroup& h, const Tolerance& tol) {
  require_same_parent(u.group(), h.parent());
  const Index n = m.ambient_dim();
  if (u.dim() != n) throw Error(ErrorCode::DimensionMismatch, "representation dimension differs from the algebra's");
  if (!preserves(m, u, h)) throw Error(ErrorCode::NotInvariantAlgebra, "Ad(U_h) does not map the algebra into itself");
  const std::vector<int> gens = h.generators();
  if (gens.empty()) return m;
  std::vector<Matrix> elems;
  for (int g : gens) elems.push_back(u(g));
  Rng rng(kProbeSeed ^ 0x5bd1e995ULL);
  Matrix probe = Matrix::Zero(n, n);
  for (int g : h.members()) probe += rng.uniform(0.5, 1.5) * (u(g) + u(g).adjoint());
  const Subspace fixed = commutant_of_set(elems, probe, n, tol);
  if (m.is_full()) return StarAlgebra(n, fixed, tol);
  return StarAlgebra(n, subspace_intersection(fixed, m.subspace(), tol), tol);
}

Matrix average_over(const Matrix& a, const UnitaryRep& u, const std::vector<int>& members) {
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (int g : members) out += u(g) * a * u(g).adjoint();
  return out / static_cast<double>(members.size());
}

Matrix averaging_projection(const Matrix& a, const UnitaryRep& u) {
  if (a.rows() != u.dim() || a.cols() != u.dim()) throw Error(ErrorCode::DimensionMismatch, "matrix size differs from representation dimension");
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (const auto& m : u.matrices()) out += m * a * m.adjoint();
  return out / static_cast<double>(u.matrices().size());
}

AveragingReport averaging_decomposition(const Matrix& a, const UnitaryRep& u, const std::vector<Matrix>& invariant_states) {
  AveragingReport r;
  r.fixed_part = averaging_projection(a, u);
  r.remainder = a - r.fixed_part;
  r.idempotence_residual = (averaging_projection(r.fixed_part, u) - r.fixed_part).cwiseAbs().maxCoeff();
  for (const auto& rho : invariant_states) r.state_residuals.push_back(std::abs((rho * r.remainder).trace()));
  return r;
}

}  // namespace ncgalois
