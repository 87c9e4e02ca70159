#pragma once

#include <string>
#include <vector>

#include "ncgalois/algebras.hpp"
#include "ncgalois/representations.hpp"

namespace ncgalois {

// Relative: inner case, (M^H)^~~ with ~ the commutant taken inside M.
// Ordinary: spatial case, M^H compared with (M^H)'' intersected with M.
enum class CommutantKind { Relative, Ordinary };

struct Violation {
  std::string check;
  std::string detail;
};

struct GaloisRow {
  Subgroup subgroup;
  Index fixed_dim = 0;
  int fixed_id = 0;
  bool bicommutant_verified = false;
  double bicommutant_residual = 0.0;
};

struct SubgroupEquivalence {
  // Indices into the subgroup list; classes ordered by first member.
  std::vector<std::vector<int>> classes;
};

struct GaloisReport {
  GroupPtr group;
  CommutantKind kind = CommutantKind::Relative;
  Index ambient_dim = 0;
  Index ambient_algebra_dim = 0;
  std::vector<GaloisRow> rows;
  SubgroupEquivalence equivalence;
  // Partition when each irrep of Sigma' is compared separately.
  SubgroupEquivalence per_irrep_equivalence;
  ProperReport properness;
  bool injective = false;          // distinct fixed algebras across classes
  bool constant_on_classes = false;  // equal fixed algebras inside classes
  bool anti_monotone = false;
  // Pairs of row indices with equal fixed algebras but different subgroups.
  std::vector<std::pair<int, int>> collisions;
  std::vector<Violation> violations;
  std::vector<StarAlgebra> fixed_algebras;  // by fixed_id
};

struct GaloisOptions {
  CommutantKind kind = CommutantKind::Relative;
  unsigned threads = 1;
  Tolerance tol{};
};

GaloisReport galois_map(const StarAlgebra& m, const UnitaryRep& pi, const GaloisOptions& options = {});
// Same analysis over a caller-supplied subgroup list.
GaloisReport galois_map(const StarAlgebra& m, const UnitaryRep& pi, const std::vector<Subgroup>& subgroups,
                        const GaloisOptions& options);

// Joint criterion: span of the direct sum over sigma_prime of sigma(h).
SubgroupEquivalence subgroup_equivalence(const std::vector<Subgroup>& subgroups, const IrrepTable& table,
                                         const std::vector<int>& sigma_prime);
// Literal per-irrep criterion.
SubgroupEquivalence subgroup_equivalence_per_irrep(const std::vector<Subgroup>& subgroups, const IrrepTable& table,
                                                   const std::vector<int>& sigma_prime);

struct MinimalActionReport {
  bool minimal = false;
  Index fixed_dim = 0;
  Index relative_commutant_dim = 0;
  // A non-scalar element of the relative commutant when minimality fails.
  Matrix witness;
};
MinimalActionReport is_minimal_action(const StarAlgebra& m, const UnitaryRep& pi);

}  // namespace ncgalois
