#pragma once

#include <optional>
#include <vector>

#include "ncgalois/algebras.hpp"
#include "ncgalois/galois.hpp"

namespace ncgalois {

// Finite-group crossed product on the carrier C^|G| (x) C^n, slot-major: index g*n + i.
struct CrossedProduct {
  StarAlgebra base;
  GroupPtr group;
  // alpha^g as a matrix on the coordinates of base's orthonormal basis.
  std::vector<Matrix> action;
  // Implementing unitaries when the action was supplied as Ad(V_g).
  std::optional<UnitaryRep> implementing;
  Index carrier_dim = 0;
  UnitaryRep u;  // U_g moves slot h to slot g*h
  StarAlgebra algebra;
  double covariance_residual = 0.0;
  bool bicommutant_ok = false;

  Matrix act(int g, const Matrix& a) const;
  // Block diagonal with block alpha^{h^-1}(a) in slot h.
  Matrix pi_alpha(const Matrix& a) const;
};

// Ad(V_g) restricted to base; throws NotInvariantAlgebra if some V_g does not preserve base.
CrossedProduct crossed_product(const StarAlgebra& base, const UnitaryRep& v);
// Explicit tables; validated as a *-automorphism action, else NotInvariantAlgebra.
CrossedProduct crossed_product(const StarAlgebra& base, const GroupPtr& g, const std::vector<Matrix>& tables);

// Automorphism table of Ad(V_g) on base coordinates.
Matrix ad_table(const StarAlgebra& base, const Matrix& v);

// max over g and basis A of ||U_g pi(A) U_g^* - pi(alpha^g(A))||.
double covariance_check(const CrossedProduct& cp);

struct CrossedGaloisReport {
  GaloisReport galois;
  // N cap pi_alpha(base), one per distinct fixed algebra of galois.
  std::vector<StarAlgebra> pullbacks;
  std::vector<int> pullback_ids;  // per galois row
  bool pullback_injective = false;
};

CrossedGaloisReport crossed_galois(const CrossedProduct& cp, unsigned threads = 1);

}  // namespace ncgalois
