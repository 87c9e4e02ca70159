#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ncgalois/groups.hpp"
#include "ncgalois/numerics.hpp"

namespace ncgalois {

class UnitaryRep {
 public:
  // Validates unitarity, identity and the homomorphism law at tolerance tol.
  UnitaryRep(GroupPtr group, std::vector<Matrix> matrices, double tol = 1e-9);

  const GroupPtr& group() const { return group_; }
  Index dim() const { return dim_; }
  const Matrix& operator()(int g) const { return matrices_[g]; }
  const std::vector<Matrix>& matrices() const { return matrices_; }

 private:
  GroupPtr group_;
  Index dim_ = 0;
  std::vector<Matrix> matrices_;
};

UnitaryRep trivial_rep(const GroupPtr& g, Index dim = 1);
// Left-regular: U_g e_h = e_{gh}.
UnitaryRep regular_rep(const GroupPtr& g);
// perms[g] is the permutation attached to element g; P e_i = e_{p(i)}.
UnitaryRep permutation_rep(const GroupPtr& g, const std::vector<Permutation>& perms);
UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b);
UnitaryRep conjugate_rep(const UnitaryRep& rep, const Matrix& w);  // w* rep w
UnitaryRep restrict_to(const UnitaryRep& rep, const Matrix& isometry);  // Q* rep Q

double homomorphism_residual(const FiniteGroup& g, const std::vector<Matrix>& mats);

// Gram-square-root conjugation onto the averaged inner product.
UnitaryRep unitarize(const GroupPtr& g, const std::vector<Matrix>& mats, double tol = 1e-9);
Matrix averaged_gram(const std::vector<Matrix>& mats);

Matrix weyl_operator(const UnitaryRep& rep, const Vector& u);

GroupFunction character(const UnitaryRep& rep);
Complex character_inner(const GroupFunction& a, const GroupFunction& b);
// Dimension of the commutant, sum of squared multiplicities.
double character_norm(const UnitaryRep& rep);

struct IrrepTable {
  GroupPtr group;
  std::vector<UnitaryRep> irreps;
  std::vector<GroupFunction> characters;

  int size() const { return static_cast<int>(irreps.size()); }
  Index dim(int sigma) const { return irreps[sigma].dim(); }
  bool complete() const;
  // Index of the irrep whose character matches chi within 1e-8, or -1.
  int find(const GroupFunction& chi) const;
};

// Memoized per multiplication table; thread-safe.
std::shared_ptr<const IrrepTable> irrep_table(const GroupPtr& g);
// Uncached computation from the regular representation.
IrrepTable compute_irrep_table(const GroupPtr& g);

struct IrrepBlock {
  int irrep = 0;
  int multiplicity = 0;
};

struct Decomposition {
  std::vector<IrrepBlock> blocks;
  // Columns ordered by block, then copy, then basis index inside the irrep.
  Matrix intertwiner;
  int commutant_dimension = 0;
};

Decomposition decompose(const UnitaryRep& rep, std::uint64_t seed);
// Largest deviation of intertwiner* rep(g) intertwiner from the declared block form.
double decomposition_residual(const UnitaryRep& rep, const Decomposition& d, const IrrepTable& table);

// Orthonormal bases of invariant irreducible subspaces, unordered.
std::vector<Matrix> split_irreducible(const UnitaryRep& rep, Rng& rng);

struct MatrixCoefficient {
  Index i = 0;
  Index j = 0;
  GroupFunction values;
};
std::vector<MatrixCoefficient> matrix_coefficients(const UnitaryRep& rep);

struct SchurReport {
  bool same_irrep = false;
  Index d1 = 0;
  Index d2 = 0;
  // Flattened value (1/|G|) sum_g D1_ij(g) conj(D2_kl(g)) at row i*d1+j, column k*d2+l.
  Matrix values;
  double max_residual = 0.0;
  bool matches = false;
};
SchurReport schur_check(const UnitaryRep& rep1, const UnitaryRep& rep2, double tol = 1e-10);

struct PeterWeylFunction {
  int irrep = 0;
  Index j = 0;
  Index k = 0;
  GroupFunction values;
};
std::vector<PeterWeylFunction> peter_weyl_basis(const IrrepTable& table);
// Max entry of |Gram - I| under the normalized Haar inner product.
double peter_weyl_residual(const IrrepTable& table);

using FourierBlocks = std::vector<Matrix>;
FourierBlocks fourier(const GroupFunction& f, const IrrepTable& table);
GroupFunction inverse_fourier(const FourierBlocks& blocks, const IrrepTable& table);

Matrix measure_rep(const GroupFunction& mu, const UnitaryRep& carrier);

struct ProperReport {
  bool proper = false;
  Index rank = 0;
  std::vector<int> multiplicities;
  std::vector<int> sigma_prime;
  std::vector<int> sigma_zero;
};
ProperReport is_proper(const UnitaryRep& pi);

}  // namespace ncgalois
