#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncgalois/algebras.hpp"
#include "ncgalois/galois.hpp"
#include "ncgalois/representations.hpp"

namespace ncgalois {

class State {
 public:
  // Checks Hermitian, unit trace (1e-10) and eigenvalues >= -1e-12; throws InvalidState.
  explicit State(Matrix density);
  static State tracial(Index n);

  Index ambient_dim() const { return density_.rows(); }
  const Matrix& density() const { return density_; }
  double min_eigenvalue() const { return min_eig_; }
  bool faithful() const { return min_eig_ > 1e-10; }
  Complex operator()(const Matrix& a) const { return (density_ * a).trace(); }

 private:
  Matrix density_;
  double min_eig_ = 0.0;
};

struct NCProbSpace {
  StarAlgebra algebra;
  State state;
};

State average_state(const State& psi, const UnitaryRep& u);

Matrix conditional_expectation(const Matrix& a, const UnitaryRep& u, const Subgroup& h);

struct AxiomResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string witness;
};

struct CondExpReport {
  std::vector<AxiomResult> axioms;
  bool all_passed = false;
  const AxiomResult& axiom(const std::string& name) const;
};

struct CondExpOptions {
  std::uint64_t seed = 1;
  int panel_size = 100;
  double tol = 1e-9;
};

// Axioms: contraction, idempotent_on_fixed, state_preserving, bimodule, schwarz,
// plus positivity and unitality.
CondExpReport verify_cond_exp_axioms(const UnitaryRep& u, const Subgroup& h, const State& phi,
                                     const CondExpOptions& options = {});

struct IndependenceReport {
  bool commuting = false;
  bool factorizes = false;
  bool independent = false;
  bool e_independent = false;
  bool implication_holds = false;  // independent => e_independent
  double commutator_residual = 0.0;
  double factorization_residual = 0.0;
  double e_factorization_residual = 0.0;
};

// E-independence uses the state-preserving projection onto common (default: scalars).
IndependenceReport independence_check(const StarAlgebra& a1, const StarAlgebra& a2, const State& phi,
                                      const std::optional<StarAlgebra>& common = std::nullopt, double tol = 1e-9);

// phi-orthogonal projection onto N in the GNS inner product <A,B> = phi(A* B).
Matrix state_preserving_projection(const Matrix& a, const StarAlgebra& n, const State& phi);

class Filtration {
 public:
  // chain must be decreasing: H_{t+1} subset H_t.
  Filtration(std::vector<Subgroup> chain, const UnitaryRep& u, const StarAlgebra& ambient);

  const std::vector<Subgroup>& chain() const { return chain_; }
  const std::vector<StarAlgebra>& algebras() const { return algebras_; }
  std::size_t length() const { return chain_.size(); }
  bool top_equals_ambient() const { return top_equals_ambient_; }

 private:
  std::vector<Subgroup> chain_;
  std::vector<StarAlgebra> algebras_;
  bool top_equals_ambient_ = false;
};

struct Martingale {
  std::vector<Matrix> elements;
  double adaptedness_residual = 0.0;
  double martingale_residual = 0.0;  // max_s<t ||E_{H_s}(X_t) - X_s||
  double tower_residual = 0.0;       // max_s<t ||E_{H_s} E_{H_t} - E_{H_s}|| on a panel
};

Martingale martingale_from(const Matrix& x, const Filtration& f, const UnitaryRep& u, std::uint64_t seed = 1,
                           unsigned threads = 1);

struct ConvergenceReport {
  std::vector<double> moments;  // phi(X_t^* X_t)
  bool nondecreasing = false;
  bool terminal_trivial = false;  // H_T = {e}
  double terminal_residual = 0.0;  // ||X_T - X||
};

ConvergenceReport convergence_check(const Martingale& mart, const Filtration& f, const Matrix& x, const State& phi);

}  // namespace ncgalois
