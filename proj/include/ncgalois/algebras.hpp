#pragma once

#include <cstdint>
#include <vector>

#include "ncgalois/groups.hpp"
#include "ncgalois/numerics.hpp"
#include "ncgalois/representations.hpp"

namespace ncgalois {

// Unital *-subalgebra of M_n stored as a Hilbert-Schmidt orthonormal basis of vec(M_n).
class StarAlgebra {
 public:
  // Re-verifies unit, adjoint closure and product closure; throws NotAnAlgebra.
  StarAlgebra(Index n, Subspace basis, const Tolerance& tol = {});
  static StarAlgebra full(Index n);
  static StarAlgebra scalars(Index n);
  static StarAlgebra diagonal(Index n);

  Index ambient_dim() const { return n_; }
  Index dim() const { return basis_.dim(); }
  const Subspace& subspace() const { return basis_; }
  bool contains_identity() const { return true; }
  bool is_full() const { return basis_.dim() == n_ * n_; }

  Matrix element(Index k) const { return unvec(basis_.basis().col(k), n_); }
  std::vector<Matrix> elements() const;
  // Hilbert-Schmidt orthogonal projection onto the algebra.
  Matrix project(const Matrix& a) const;
  double residual(const Matrix& a) const;
  bool contains(const Matrix& a, double tol = 1e-9) const { return residual(a) <= tol; }
  bool contains(const StarAlgebra& other, double tol = 1e-9) const;
  bool equals(const StarAlgebra& other, double tol = 1e-9) const;
  // Random element sum_k c_k B_k with seeded Gaussian coefficients, Hermitian if asked.
  Matrix random_element(Rng& rng, bool hermitian) const;

 private:
  struct Trusted {};
  StarAlgebra(Index n, Subspace basis, Trusted) : n_(n), basis_(std::move(basis)) {}
  friend StarAlgebra trusted_algebra(Index n, Subspace basis);

  Index n_;
  Subspace basis_;
};

double closure_residual(const StarAlgebra& a, std::uint64_t seed = 7);

StarAlgebra algebra_from_generators(const std::vector<Matrix>& gens, Index n, const Tolerance& tol = {});

// Solutions X of X S = S X for every S in elems. The probe must be Hermitian and lie in
// the *-algebra generated by elems; it only narrows the search space.
Subspace commutant_of_set(const std::vector<Matrix>& elems, const Matrix& probe, Index n, const Tolerance& tol = {});

StarAlgebra commutant(const StarAlgebra& a, const Tolerance& tol = {});
bool bicommutant_check(const StarAlgebra& a, double tol = 1e-9);
// Same check with a precomputed commutant c = A'.
bool bicommutant_check(const StarAlgebra& a, const StarAlgebra& c, double tol = 1e-9);
StarAlgebra relative_commutant(const StarAlgebra& a, const StarAlgebra& m, const Tolerance& tol = {});
StarAlgebra center(const StarAlgebra& m, const Tolerance& tol = {});
bool is_factor(const StarAlgebra& m);
StarAlgebra intersect(const StarAlgebra& a, const StarAlgebra& b, const Tolerance& tol = {});

struct WedderburnBlock {
  Index block_dim = 0;     // n_i
  Index multiplicity = 0;  // m_i
};

struct BlockStructure {
  std::vector<WedderburnBlock> blocks;
  // Columns grouped by block; inside block i, column a*m_i + j spans copy j of basis vector a,
  // so U* X U = sum_i X_i (x) 1_{m_i} for X in the algebra.
  Matrix unitary;
  std::vector<Matrix> central_projections;
  double residual = 0.0;
};

BlockStructure block_structure(const StarAlgebra& m, std::uint64_t seed = 1);

// Ad(U_h) for h in H preserves M (checked on generators of H).
bool preserves(const StarAlgebra& m, const UnitaryRep& u, const Subgroup& h, double tol = 1e-9);
StarAlgebra fixed_point_algebra(const StarAlgebra& m, const UnitaryRep& u, const Subgroup& h, const Tolerance& tol = {});

Matrix average_over(const Matrix& a, const UnitaryRep& u, const std::vector<int>& members);
Matrix averaging_projection(const Matrix& a, const UnitaryRep& u);

struct AveragingReport {
  Matrix fixed_part;
  Matrix remainder;
  double idempotence_residual = 0.0;
  // |trace(rho (A - A^G))| for each supplied invariant density.
  std::vector<double> state_residuals;
};
AveragingReport averaging_decomposition(const Matrix& a, const UnitaryRep& u, const std::vector<Matrix>& invariant_states);

}  // namespace ncgalois
