#include "ncgalois/ncprob.hpp"

#include <algorithm>
#include <cmath>

#include "ncgalois/parallel.hpp"

namespace ncgalois {

State::State(Matrix density) : density_(std::move(density)) {
  if (density_.rows() != density_.cols() || density_.rows() == 0)
    throw Error(ErrorCode::InvalidState, "density must be a non-empty square matrix");
  if (!is_hermitian(density_)) throw Error(ErrorCode::InvalidState, "density is not Hermitian");
  if (std::abs(density_.trace() - Complex(1.0)) > 1e-10) throw Error(ErrorCode::InvalidState, "density trace differs from 1");
  min_eig_ = hermitian_eig(density_).values(0);
  if (min_eig_ < -1e-12) throw Error(ErrorCode::InvalidState, "density has a negative eigenvalue");
}

State State::tracial(Index n) { return State(Matrix(Matrix::Identity(n, n) / static_cast<double>(n))); }

State average_state(const State& psi, const UnitaryRep& u) {
  if (u.dim() != psi.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "state and representation sizes differ");
  Matrix rho = Matrix::Zero(u.dim(), u.dim());
  for (const auto& m : u.matrices()) rho += m.adjoint() * psi.density() * m;
  rho /= static_cast<double>(u.matrices().size());
  return State((rho + rho.adjoint()) / 2.0);
}

Matrix conditional_expectation(const Matrix& a, const UnitaryRep& u, const Subgroup& h) {
  require_same_parent(u.group(), h.parent());
  if (a.rows() != u.dim() || a.cols() != u.dim()) throw Error(ErrorCode::DimensionMismatch, "matrix size differs from representation");
  return average_over(a, u, h.members());
}

const AxiomResult& CondExpReport::axiom(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return a;
  throw Error(ErrorCode::InvalidInput, "unknown axiom " + name);
}

CondExpReport verify_cond_exp_axioms(const UnitaryRep& u, const Subgroup& h, const State& phi, const CondExpOptions& options) {
  const Index n = u.dim();
  if (phi.ambient_dim() != n) throw Error(ErrorCode::DimensionMismatch, "state and representation sizes differ");
  const StarAlgebra fixed = fixed_point_algebra(StarAlgebra::full(n), u, h);
  auto e = [&](const Matrix& a) { return average_over(a, u, h.members()); };

  Rng rng(options.seed);
  std::vector<Matrix> panel;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Matrix unit = Matrix::Zero(n, n);
      unit(i, j) = 1.0;
      panel.push_back(unit);
    }
  for (int k = 0; k < options.panel_size; ++k) panel.push_back(rng.gaussian(n, n));

  struct Worst {
    double value = 0.0;
    std::size_t index = 0;
    void update(double v, std::size_t i) {
      if (v > value) {
        value = v;
        index = i;
      }
    }
  };
  Worst contraction, idem, state, bimod, schwarz, positivity;
  for (std::size_t k = 0; k < panel.size(); ++k) {
    const Matrix& a = panel[k];
    const Matrix ea = e(a);
    contraction.update(std::max(0.0, operator_norm(ea) - operator_norm(a)), k);
    idem.update((e(ea) - ea).norm(), k);
    state.update(std::abs(phi(ea) - phi(a)), k);

    const Matrix l = fixed.random_element(rng, false);
    const Matrix r = fixed.random_element(rng, false);
    bimod.update((e(l * a * r) - l * ea * r).norm(), k);

    const Matrix exx = e(a.adjoint() * a);
    const Matrix gap = exx - ea.adjoint() * ea;
    schwarz.update(std::max(0.0, -hermitian_eig((gap + gap.adjoint()) / 2.0).values(0)), k);
    positivity.update(std::max(0.0, -hermitian_eig((exx + exx.adjoint()) / 2.0).values(0)), k);
  }
  for (const auto& b : fixed.elements()) idem.update((e(b) - b).norm(), panel.size());
  const double unital = (e(Matrix::Identity(n, n)) - Matrix::Identity(n, n)).norm();

  CondExpReport report;
  auto add = [&](const std::string& name, const Worst& w) {
    AxiomResult a{name, w.value, options.tol, w.value <= options.tol, ""};
    if (!a.passed) a.witness = "panel element " + std::to_string(w.index);
    report.axioms.push_back(std::move(a));
  };
  add("contraction", contraction);
  add("idempotent_on_fixed", idem);
  add("state_preserving", state);
  add("bimodule", bimod);
  add("schwarz", schwarz);
  add("positivity", positivity);
  add("unital", Worst{unital, 0});
  report.all_passed = std::all_of(report.axioms.begin(), report.axioms.end(), [](const AxiomResult& a) { return a.passed; });
  return report;
}

Matrix state_preserving_projection(const Matrix& a, const StarAlgebra& n, const State& phi) {
  const std::vector<Matrix> basis = n.elements();
  const Index d = static_cast<Index>(basis.size());
  Matrix gram(d, d);
  Vector rhs(d);
  for (Index k = 0; k < d; ++k) {
    for (Index l = 0; l < d; ++l) gram(k, l) = phi(basis[k].adjoint() * basis[l]);
    rhs(k) = phi(basis[k].adjoint() * a);
  }
  const Vector c = gram.ldlt().solve(rhs);
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (Index l = 0; l < d; ++l) out += c(l) * basis[l];
  return out;
}

IndependenceReport independence_check(const StarAlgebra& a1, const StarAlgebra& a2, const State& phi,
                                      const std::optional<StarAlgebra>& common, double tol) {
  if (!phi.faithful()) throw Error(ErrorCode::NotFaithful, "independence needs a faithful state");
  const Index n = a1.ambient_dim();
  const StarAlgebra nalg = common ? *common : StarAlgebra::scalars(n);
  if (!a1.contains(nalg) || !a2.contains(nalg))
    throw Error(ErrorCode::NotContained, "common subalgebra must lie in both algebras");
  const auto e = [&](const Matrix& x) { return state_preserving_projection(x, nalg, phi); };

  IndependenceReport r;
  const auto b1 = a1.elements();
  const auto b2 = a2.elements();
  std::vector<Matrix> e2;
  for (const auto& b : b2) e2.push_back(e(b));
  for (const auto& a : b1) {
    const Matrix ea = e(a);
    for (std::size_t j = 0; j < b2.size(); ++j) {
      const Matrix& b = b2[j];
      const Matrix ab = a * b;
      r.commutator_residual = std::max(r.commutator_residual, (ab - b * a).norm());
      r.factorization_residual = std::max(r.factorization_residual, std::abs(phi(ab) - phi(a) * phi(b)));
      r.e_factorization_residual = std::max(r.e_factorization_residual, (e(ab) - ea * e2[j]).norm());
    }
  }
  r.commuting = r.commutator_residual <= tol;
  r.factorizes = r.factorization_residual <= tol;
  r.independent = r.commuting && r.factorizes;
  r.e_independent = r.e_factorization_residual <= tol;
  r.implication_holds = !r.independent || r.e_independent;
  return r;
}

Filtration::Filtration(std::vector<Subgroup> chain, const UnitaryRep& u, const StarAlgebra& ambient)
    : chain_(std::move(chain)) {
  if (chain_.empty()) throw Error(ErrorCode::NotAChain, "filtration needs at least one subgroup");
  for (std::size_t t = 0; t + 1 < chain_.size(); ++t)
    if (!chain_[t + 1].is_subgroup_of(chain_[t]))
      throw Error(ErrorCode::NotAChain, "subgroup at position " + std::to_string(t + 1) + " is not inside its predecessor");
  for (const auto& h : chain_) algebras_.push_back(fixed_point_algebra(ambient, u, h));
  top_equals_ambient_ = algebras_.back().equals(ambient);
}

Martingale martingale_from(const Matrix& x, const Filtration& f, const UnitaryRep& u, std::uint64_t seed, unsigned threads) {
  const std::size_t len = f.length();
  Martingale m;
  m.elements.resize(len);
  parallel_for(len, threads, [&](std::size_t t) { m.elements[t] = conditional_expectation(x, u, f.chain()[t]); });

  const double scale = std::max(1.0, x.norm());
  for (std::size_t t = 0; t < len; ++t) {
    m.adaptedness_residual = std::max(m.adaptedness_residual, f.algebras()[t].residual(m.elements[t]) / scale);
    for (std::size_t s = 0; s < t; ++s)
      m.martingale_residual = std::max(
          m.martingale_residual, (conditional_expectation(m.elements[t], u, f.chain()[s]) - m.elements[s]).norm());
  }

  Rng rng(seed);
  const Index n = u.dim();
  std::vector<Matrix> panel;
  for (int k = 0; k < 50; ++k) panel.push_back(rng.gaussian(n, n));
  std::vector<double> worst(panel.size(), 0.0);
  parallel_for(panel.size(), threads, [&](std::size_t k) {
    for (std::size_t t = 0; t < len; ++t) {
      const Matrix et = conditional_expectation(panel[k], u, f.chain()[t]);
      for (std::size_t s = 0; s < t; ++s) {
        const Matrix lhs = conditional_expectation(et, u, f.chain()[s]);
        const Matrix rhs = conditional_expectation(panel[k], u, f.chain()[s]);
        worst[k] = std::max(worst[k], (lhs - rhs).norm());
      }
    }
  });
  m.tower_residual = *std::max_element(worst.begin(), worst.end());
  return m;
}

ConvergenceReport convergence_check(const Martingale& mart, const Filtration& f, const Matrix& x, const State& phi) {
  ConvergenceReport r;
  for (const auto& xt : mart.elements) r.moments.push_back(phi(xt.adjoint() * xt).real());
  r.nondecreasing = true;
  for (std::size_t t = 1; t < r.moments.size(); ++t)
    r.nondecreasing = r.nondecreasing && r.moments[t - 1] <= r.moments[t] + 1e-10;
  r.terminal_trivial = f.chain().back().order() == 1;
  r.terminal_residual = (mart.elements.back() - x).norm();
  return r;
}

}  // namespace ncgalois
