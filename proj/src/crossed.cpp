#include "ncgalois/crossed.hpp"

#include <algorithm>

namespace ncgalois {

namespace {

constexpr double kActionTol = 1e-9;

Matrix apply_table(const StarAlgebra& base, const Matrix& t, const Matrix& a) {
  const Matrix& q = base.subspace().basis();
  return unvec(q * (t * (q.adjoint() * vec(a))), base.ambient_dim());
}

void validate_tables(const StarAlgebra& base, const FiniteGroup& g, const std::vector<Matrix>& tables) {
  const Index d = base.dim();
  if (static_cast<int>(tables.size()) != g.order())
    throw Error(ErrorCode::DimensionMismatch, "need one automorphism table per group element");
  for (const auto& t : tables)
    if (t.rows() != d || t.cols() != d) throw Error(ErrorCode::DimensionMismatch, "automorphism table has the wrong size");
  if ((tables[g.identity()] - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kActionTol)
    throw Error(ErrorCode::NotInvariantAlgebra, "identity element does not act trivially");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if ((tables[a] * tables[b] - tables[g.mul(a, b)]).cwiseAbs().maxCoeff() > kActionTol)
        throw Error(ErrorCode::NotInvariantAlgebra,
                    "action law fails at (" + std::to_string(a) + ", " + std::to_string(b) + ")");

  const std::vector<Matrix> basis = base.elements();
  for (int h = 0; h < g.order(); ++h) {
    const Matrix& t = tables[h];
    std::vector<Matrix> img;
    for (const auto& b : basis) img.push_back(apply_table(base, t, b));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if ((apply_table(base, t, basis[k].adjoint()) - img[k].adjoint()).norm() > kActionTol)
        throw Error(ErrorCode::NotInvariantAlgebra, "element " + std::to_string(h) + " does not commute with the adjoint");
      for (std::size_t l = 0; l < basis.size(); ++l)
        if ((apply_table(base, t, basis[k] * basis[l]) - img[k] * img[l]).norm() > kActionTol * std::max(1.0, img[k].norm()))
          throw Error(ErrorCode::NotInvariantAlgebra, "element " + std::to_string(h) + " is not multiplicative");
    }
  }
}

UnitaryRep slot_shift(const GroupPtr& g, Index n) {
  const int order = g->order();
  std::vector<Matrix> mats;
  for (int a = 0; a < order; ++a) {
    Matrix m = Matrix::Zero(order * n, order * n);
    for (int h = 0; h < order; ++h) m.block(g->mul(a, h) * n, h * n, n, n) = Matrix::Identity(n, n);
    mats.push_back(std::move(m));
  }
  return UnitaryRep(g, std::move(mats));
}

CrossedProduct build(const StarAlgebra& base, const GroupPtr& g, std::vector<Matrix> tables, std::optional<UnitaryRep> v) {
  const Index n = base.ambient_dim();
  UnitaryRep u = slot_shift(g, n);
  CrossedProduct cp{base, g, std::move(tables), std::move(v), n * g->order(), u, StarAlgebra::scalars(n * g->order()), 0.0, false};
  // pi(a) U_g pi(b) U_h = pi(a alpha^g(b)) U_gh, so the products pi(B_k) U_g already span the algebra.
  const std::vector<Matrix> basis = base.elements();
  Matrix span(cp.carrier_dim * cp.carrier_dim, static_cast<Index>(basis.size()) * g->order());
  Index col = 0;
  for (const auto& b : basis) {
    const Matrix pb = cp.pi_alpha(b);
    for (int h = 0; h < g->order(); ++h) span.col(col++) = vec(pb * u(h));
  }
  cp.algebra = StarAlgebra(cp.carrier_dim, column_span(span));
  cp.covariance_residual = covariance_check(cp);
  // The commutant only needs the generators pi(B_k) and U_h for generating h.
  std::vector<Matrix> gens;
  for (const auto& b : basis) gens.push_back(cp.pi_alpha(b));
  for (int h : Subgroup::whole(g).generators()) gens.push_back(u(h));
  Rng rng(0x9e3779b97f4a7c15ULL);
  const StarAlgebra c(cp.carrier_dim, commutant_of_set(gens, cp.algebra.random_element(rng, true), cp.carrier_dim));
  cp.bicommutant_ok = bicommutant_check(cp.algebra, c);
  return cp;
}

}  // namespace

Matrix CrossedProduct::act(int g, const Matrix& a) const { return apply_table(base, action[g], a); }

Matrix CrossedProduct::pi_alpha(const Matrix& a) const {
  const Index n = base.ambient_dim();
  Matrix out = Matrix::Zero(carrier_dim, carrier_dim);
  for (int h = 0; h < group->order(); ++h) out.block(h * n, h * n, n, n) = act(group->inverse(h), a);
  return out;
}

Matrix ad_table(const StarAlgebra& base, const Matrix& v) {
  const Index d = base.dim();
  const Matrix& q = base.subspace().basis();
  Matrix t(d, d);
  for (Index l = 0; l < d; ++l) {
    const Matrix img = v * base.element(l) * v.adjoint();
    if (base.residual(img) > kActionTol * std::max(1.0, img.norm()))
      throw Error(ErrorCode::NotInvariantAlgebra, "unitary does not preserve the base algebra");
    t.col(l) = q.adjoint() * vec(img);
  }
  return t;
}

CrossedProduct crossed_product(const StarAlgebra& base, const UnitaryRep& v) {
  if (v.dim() != base.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "action and base sizes differ");
  std::vector<Matrix> tables;
  for (const auto& m : v.matrices()) tables.push_back(ad_table(base, m));
  return build(base, v.group(), std::move(tables), v);
}

CrossedProduct crossed_product(const StarAlgebra& base, const GroupPtr& g, const std::vector<Matrix>& tables) {
  validate_tables(base, *g, tables);
  return build(base, g, tables, std::nullopt);
}

double covariance_check(const CrossedProduct& cp) {
  double worst = 0.0;
  const std::vector<Matrix> basis = cp.base.elements();
  for (int g = 0; g < cp.group->order(); ++g) {
    const Matrix& ug = cp.u(g);
    for (const auto& a : basis)
      worst = std::max(worst, (ug * cp.pi_alpha(a) * ug.adjoint() - cp.pi_alpha(cp.act(g, a))).cwiseAbs().maxCoeff());
  }
  return worst;
}

CrossedGaloisReport crossed_galois(const CrossedProduct& cp, unsigned threads) {
  CrossedGaloisReport out;
  GaloisOptions opts;
  opts.threads = threads;
  out.galois = galois_map(cp.algebra, cp.u, opts);

  std::vector<Matrix> gens;
  for (const auto& b : cp.base.elements()) gens.push_back(cp.pi_alpha(b));
  const StarAlgebra image = algebra_from_generators(gens, cp.carrier_dim);

  std::vector<int> by_fixed;
  for (const auto& f : out.galois.fixed_algebras) {
    const StarAlgebra p = intersect(f, image);
    int id = -1;
    for (std::size_t k = 0; k < out.pullbacks.size() && id < 0; ++k)
      if (out.pullbacks[k].equals(p)) id = static_cast<int>(k);
    if (id < 0) {
      id = static_cast<int>(out.pullbacks.size());
      out.pullbacks.push_back(p);
    }
    by_fixed.push_back(id);
  }
  for (const auto& row : out.galois.rows) out.pullback_ids.push_back(by_fixed[row.fixed_id]);

  // Injective when inequivalent subgroup classes keep distinct pull-backs.
  std::vector<int> ids;
  for (const auto& cls : out.galois.equivalence.classes) ids.push_back(out.pullback_ids[cls.front()]);
  std::sort(ids.begin(), ids.end());
  out.pullback_injective = std::adjacent_find(ids.begin(), ids.end()) == ids.end();
  return out;
}

}  // namespace ncgalois
