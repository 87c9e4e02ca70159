#include "ncgalois/modular.hpp"

#include <algorithm>
#include <cmath>

#include "ncgalois/parallel.hpp"

namespace ncgalois {

namespace {

double rel_residual(const RealMatrix& lhs, const RealMatrix& rhs) {
  return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());
}

double rel_residual(const Matrix& lhs, const Matrix& rhs) {
  return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());
}

RealMatrix sym_power(const RealMatrix& a, double p) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es((a + a.transpose()) / 2.0);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "real symmetric eigensolver failed");
  RealVector d = es.eigenvalues();
  for (Index i = 0; i < d.size(); ++i) {
    if (d(i) <= 0) throw Error(ErrorCode::NotPositiveDefinite, "operator is not positive definite");
    d(i) = std::pow(d(i), p);
  }
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

Matrix complexify(const RealMatrix& r) {
  const Index d = r.rows() / 2;
  Matrix c(d, d);
  c.real() = r.topLeftCorner(d, d);
  c.imag() = r.bottomLeftCorner(d, d);
  return c;
}

}  // namespace

Vector GNSSpace::coords(const Matrix& a) const { return algebra.subspace().basis().adjoint() * vec(a); }

Matrix GNSSpace::element(const Vector& x) const { return unvec(algebra.subspace().basis() * x, algebra.ambient_dim()); }

Matrix GNSSpace::left_mult(const Matrix& a) const {
  const Index d = dim();
  Matrix l(d, d);
  for (Index k = 0; k < d; ++k) l.col(k) = coords(a * algebra.element(k));
  return l;
}

GNSSpace gns(const StarAlgebra& m, const State& phi) {
  if (phi.ambient_dim() != m.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "state and algebra sizes differ");
  const Index d = m.dim();
  const std::vector<Matrix> b = m.elements();
  Matrix g(d, d);
  for (Index k = 0; k < d; ++k)
    for (Index l = 0; l < d; ++l) g(k, l) = (phi.density() * b[k].adjoint() * b[l]).trace();
  g = Matrix((g + g.adjoint()) / 2.0);
  const HermitianEig e = hermitian_eig(g);
  if (e.values(0) <= 1e-10) throw Error(ErrorCode::NotFaithful, "state is not faithful on the algebra");

  GNSSpace s{m, phi.density(), g, Vector(), 0.0};
  s.cyclic = s.coords(Matrix::Identity(m.ambient_dim(), m.ambient_dim()));

  Rng rng(0x3c6ef372fe94f82bULL);
  const Matrix g_inv = g.inverse();
  for (int k = 0; k < 3; ++k) {
    const Matrix x = m.random_element(rng, false);
    const Matrix y = m.random_element(rng, false);
    const Matrix lx = s.left_mult(x);
    s.representation_residual = std::max(s.representation_residual, rel_residual(Matrix(s.left_mult(x * y)), Matrix(lx * s.left_mult(y))));
    s.representation_residual =
        std::max(s.representation_residual, rel_residual(Matrix(s.left_mult(x.adjoint())), Matrix(g_inv * lx.adjoint() * g)));
  }
  return s;
}

RealMatrix realify_linear(const Matrix& c) {
  const Index r = c.rows(), k = c.cols();
  RealMatrix out(2 * r, 2 * k);
  out << c.real(), -c.imag(), c.imag(), c.real();
  return out;
}

RealMatrix realify_antilinear(const Matrix& c) {
  const Index r = c.rows(), k = c.cols();
  RealMatrix out(2 * r, 2 * k);
  out << c.real(), c.imag(), c.imag(), -c.real();
  return out;
}

RealMatrix complex_structure(Index d) {
  RealMatrix out = RealMatrix::Zero(2 * d, 2 * d);
  out.topRightCorner(d, d) = -RealMatrix::Identity(d, d);
  out.bottomLeftCorner(d, d) = RealMatrix::Identity(d, d);
  return out;
}

RealMatrix ModularData::adjoint(const RealMatrix& x) const { return metric.ldlt().solve(x.transpose() * metric); }

ModularData tomita(const GNSSpace& space) {
  const Index d = space.dim();
  Matrix k(d, d);
  for (Index l = 0; l < d; ++l) k.col(l) = space.coords(space.algebra.element(l).adjoint());

  ModularData md;
  md.rho = space.density;
  md.metric = realify_linear(space.metric);
  md.s = realify_antilinear(k);
  md.f = md.adjoint(md.s);
  md.delta = md.f * md.s;

  // Delta is self-adjoint for the metric; whiten with g^1/2 to take powers.
  const RealMatrix w = sym_power(md.metric, 0.5);
  const RealMatrix w_inv = sym_power(md.metric, -0.5);
  const RealMatrix sym = w * md.delta * w_inv;
  md.delta_half = w_inv * sym_power(sym, 0.5) * w;
  md.delta_minus_half = w_inv * sym_power(sym, -0.5) * w;
  md.j = md.s * md.delta_minus_half;
  return md;
}

std::vector<NamedResidual> modular_identities(const ModularData& md) {
  const Index n2 = md.s.rows();
  const RealMatrix id = RealMatrix::Identity(n2, n2);
  const RealMatrix cs = complex_structure(n2 / 2);
  const RealMatrix delta_inv = md.delta_minus_half * md.delta_minus_half;

  std::vector<NamedResidual> out;
  out.push_back({"i_delta_eq_FS", rel_residual(md.delta, RealMatrix(md.f * md.s))});
  out.push_back({"ii_S_inverse_eq_S", rel_residual(RealMatrix(md.s * md.s), id)});
  out.push_back({"iii_J_squared_eq_1", rel_residual(RealMatrix(md.j * md.j), id)});
  out.push_back({"iv_J_selfadjoint", rel_residual(md.j, md.adjoint(md.j))});
  out.push_back({"v_delta_minus_half_eq_J_delta_half_J", rel_residual(md.delta_minus_half, RealMatrix(md.j * md.delta_half * md.j))});
  out.push_back({"vi_F_eq_J_delta_minus_half", rel_residual(md.f, RealMatrix(md.j * md.delta_minus_half))});
  out.push_back({"vii_SF_eq_delta_inverse", rel_residual(RealMatrix(md.s * md.f), delta_inv)});
  out.push_back({"viii_S_eq_delta_minus_half_J", rel_residual(md.s, RealMatrix(md.delta_minus_half * md.j))});
  out.push_back({"polar_S_eq_J_delta_half", rel_residual(md.s, RealMatrix(md.j * md.delta_half))});
  out.push_back({"J_antiunitary", rel_residual(RealMatrix(md.j.transpose() * md.metric * md.j), md.metric)});
  out.push_back({"J_antilinear", rel_residual(RealMatrix(md.j * cs), RealMatrix(-cs * md.j))});
  out.push_back({"S_antilinear", rel_residual(RealMatrix(md.s * cs), RealMatrix(-cs * md.s))});
  out.push_back({"F_antilinear", rel_residual(RealMatrix(md.f * cs), RealMatrix(-cs * md.f))});
  out.push_back({"delta_linear", rel_residual(RealMatrix(md.delta * cs), RealMatrix(cs * md.delta))});
  return out;
}

std::vector<NamedResidual> closed_form_residuals(const GNSSpace& space, const ModularData& md) {
  std::vector<NamedResidual> out;
  if (!space.algebra.is_full()) return out;
  const Index d = space.dim();
  const Matrix& rho = space.density;
  const Matrix rho_inv = matrix_real_power(rho, -1.0);
  const Matrix rho_half = matrix_real_power(rho, 0.5);
  const Matrix rho_mhalf = matrix_real_power(rho, -0.5);
  Matrix dc(d, d), jc(d, d), fc(d, d);
  for (Index l = 0; l < d; ++l) {
    const Matrix b = space.algebra.element(l);
    dc.col(l) = space.coords(rho * b * rho_inv);
    jc.col(l) = space.coords(rho_half * b.adjoint() * rho_mhalf);
    fc.col(l) = space.coords(rho * b.adjoint() * rho_inv);
  }
  out.push_back({"delta_closed_form", rel_residual(md.delta, realify_linear(dc))});
  out.push_back({"J_closed_form", rel_residual(md.j, realify_antilinear(jc))});
  out.push_back({"F_closed_form", rel_residual(md.f, realify_antilinear(fc))});
  return out;
}

TomitaTakesakiCheck tomita_takesaki_check(const GNSSpace& space, const ModularData& md, const std::vector<double>& t_grid,
                                          unsigned threads) {
  const Index d = space.dim();
  const std::vector<Matrix> basis = space.algebra.elements();
  std::vector<Matrix> lc;
  std::vector<RealMatrix> lr;
  for (const auto& b : basis) {
    lc.push_back(space.left_mult(b));
    lr.push_back(realify_linear(lc.back()));
  }

  TomitaTakesakiCheck out;
  for (const auto& a : lr) {
    const RealMatrix jaj = md.j * a * md.j;
    for (const auto& b : lr) out.jmj_in_commutant = std::max(out.jmj_in_commutant, rel_residual(RealMatrix(jaj * b), RealMatrix(b * jaj)));
  }

  Matrix lspan(d * d, d);
  for (Index k = 0; k < d; ++k) lspan.col(k) = vec(lc[static_cast<std::size_t>(k)]);
  const Subspace lsub = column_span(lspan);

  const Matrix delta_c = complexify(md.delta);
  const Matrix g_half = matrix_real_power(space.metric, 0.5);
  const Matrix g_mhalf = matrix_real_power(space.metric, -0.5);
  Matrix h = g_half * delta_c * g_mhalf;
  h = Matrix((h + h.adjoint()) / 2.0);

  std::vector<double> inv(t_grid.size(), 0.0), match(t_grid.size(), 0.0);
  parallel_for(t_grid.size(), threads, [&](std::size_t i) {
    const double t = t_grid[i];
    const Matrix fwd = g_mhalf * matrix_imaginary_power(h, t) * g_half;
    const Matrix bwd = g_mhalf * matrix_imaginary_power(h, -t) * g_half;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Matrix x = fwd * lc[k] * bwd;
      inv[i] = std::max(inv[i], lsub.residual(vec(x)) / std::max(1.0, x.norm()));
      if (space.algebra.is_full())
        match[i] = std::max(match[i], rel_residual(x, Matrix(space.left_mult(modular_flow(space.density, t, basis[k])))));
    }
  });
  out.flow_invariance = *std::max_element(inv.begin(), inv.end());
  out.flow_matches_sigma = *std::max_element(match.begin(), match.end());
  return out;
}

BlockTomita tomita_blockwise(const StarAlgebra& m, const State& phi) {
  BlockTomita out;
  out.structure = block_structure(m);
  Index off = 0;
  for (const auto& blk : out.structure.blocks) {
    const Index nb = blk.block_dim, mb = blk.multiplicity;
    const Matrix ub = out.structure.unitary.middleCols(off, nb * mb);
    const Matrix local = ub.adjoint() * phi.density() * ub;
    Matrix reduced = Matrix::Zero(nb, nb);
    for (Index a = 0; a < nb; ++a)
      for (Index b = 0; b < nb; ++b)
        for (Index j = 0; j < mb; ++j) reduced(a, b) += local(a * mb + j, b * mb + j);
    reduced = Matrix((reduced + reduced.adjoint()) / 2.0);
    const double w = reduced.trace().real();
    if (w <= 1e-12) throw Error(ErrorCode::NotFaithful, "state vanishes on a central block");
    out.weights.push_back(w);
    out.reduced_densities.push_back(reduced / w);
    const GNSSpace space = gns(StarAlgebra::full(nb), State(Matrix(reduced / w)));
    out.blocks.push_back(tomita(space));
    out.identities.push_back(modular_identities(out.blocks.back()));
    off += nb * mb;
  }
  return out;
}

Matrix modular_flow(const Matrix& rho, double t, const Matrix& a) {
  return matrix_imaginary_power(rho, t) * a * matrix_imaginary_power(rho, -t);
}

double kms_check(const Matrix& rho, const Matrix& a, const Matrix& b, double beta) {
  const Matrix lhs = matrix_real_power(rho, 1.0 - beta) * a * matrix_real_power(rho, beta) * b;
  return std::abs(lhs.trace() - (rho * b * a).trace());
}

Matrix connes_cocycle(const Matrix& rho1, const Matrix& rho2, double t) {
  return matrix_imaginary_power(rho2, t) * matrix_imaginary_power(rho1, -t);
}

namespace {

Matrix balanced_flow_block(const Matrix& rho1, const Matrix& rho2, double t, bool lower) {
  const Index n = rho1.rows();
  Matrix bal = Matrix::Zero(2 * n, 2 * n);
  bal.topLeftCorner(n, n) = rho1 / 2.0;
  bal.bottomRightCorner(n, n) = rho2 / 2.0;
  Matrix e = Matrix::Zero(2 * n, 2 * n);
  if (lower)
    e.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  else
    e.topRightCorner(n, n) = Matrix::Identity(n, n);
  const Matrix flowed = modular_flow(bal, t, e);
  return lower ? Matrix(flowed.bottomLeftCorner(n, n)) : Matrix(flowed.topRightCorner(n, n));
}

}  // namespace

Matrix balanced_cocycle(const Matrix& rho1, const Matrix& rho2, double t) { return balanced_flow_block(rho1, rho2, t, true); }

Matrix balanced_cocycle_adjoint(const Matrix& rho1, const Matrix& rho2, double t) {
  return balanced_flow_block(rho1, rho2, t, false);
}

double CocycleReport::max_residual() const {
  return std::max({intertwining, cocycle, inverse, chain_rule, unitarity, balanced_lower, balanced_upper});
}

CocycleReport cocycle_report(const Matrix& rho1, const Matrix& rho2, const Matrix& rho3, const std::vector<double>& t_grid,
                             std::uint64_t seed, unsigned threads) {
  const Index n = rho1.rows();
  Rng rng(seed);
  std::vector<Matrix> panel;
  for (int k = 0; k < 4; ++k) panel.push_back(rng.gaussian(n, n));

  const std::size_t m = t_grid.size();
  std::vector<CocycleReport> per(m);
  parallel_for(m, threads, [&](std::size_t i) {
    const double t = t_grid[i];
    CocycleReport& r = per[i];
    const Matrix g = connes_cocycle(rho1, rho2, t);
    r.unitarity = (g.adjoint() * g - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    for (const auto& a : panel)
      r.intertwining = std::max(r.intertwining, rel_residual(modular_flow(rho2, t, a), Matrix(g * modular_flow(rho1, t, a) * g.adjoint())));
    for (double s : t_grid) {
      const Matrix lhs = connes_cocycle(rho1, rho2, s + t);
      const Matrix rhs = connes_cocycle(rho1, rho2, s) * modular_flow(rho1, s, g);
      r.cocycle = std::max(r.cocycle, rel_residual(lhs, rhs));
    }
    r.inverse = rel_residual(connes_cocycle(rho2, rho1, t), Matrix(g.adjoint()));
    r.chain_rule = rel_residual(connes_cocycle(rho1, rho3, t), Matrix(connes_cocycle(rho2, rho3, t) * g));
    r.balanced_lower = rel_residual(balanced_cocycle(rho1, rho2, t), g);
    r.balanced_upper = rel_residual(balanced_cocycle_adjoint(rho1, rho2, t), Matrix(g.adjoint()));
  });
  CocycleReport out;
  for (const auto& r : per) {
    out.intertwining = std::max(out.intertwining, r.intertwining);
    out.cocycle = std::max(out.cocycle, r.cocycle);
    out.inverse = std::max(out.inverse, r.inverse);
    out.chain_rule = std::max(out.chain_rule, r.chain_rule);
    out.unitarity = std::max(out.unitarity, r.unitarity);
    out.balanced_lower = std::max(out.balanced_lower, r.balanced_lower);
    out.balanced_upper = std::max(out.balanced_upper, r.balanced_upper);
  }
  return out;
}

const std::vector<double>& default_t_grid() {
  static const std::vector<double> grid{-2.0, -1.0, -0.3, 0.0, 0.3, 1.0, 2.0};
  return grid;
}

}  // namespace ncgalois
