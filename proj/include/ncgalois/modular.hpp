#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncgalois/algebras.hpp"
#include "ncgalois/ncprob.hpp"

namespace ncgalois {

// GNS space of (M, phi): coordinates x in C^d stand for sum_k x_k B_k over the
// Hilbert-Schmidt orthonormal basis B of M, with inner product phi(X^* Y).
struct GNSSpace {
  StarAlgebra algebra;
  Matrix density;
  Matrix metric;  // G_kl = trace(rho B_k^* B_l)
  Vector cyclic;  // coordinates of the identity
  double representation_residual = 0.0;

  Index dim() const { return algebra.dim(); }
  Vector coords(const Matrix& a) const;
  Matrix element(const Vector& x) const;
  // Matrix of left multiplication by a in coordinates.
  Matrix left_mult(const Matrix& a) const;
};

GNSSpace gns(const StarAlgebra& m, const State& phi);

// Real-linear operators act on the realification (re x, im x) of C^d.
RealMatrix realify_linear(const Matrix& c);
RealMatrix realify_antilinear(const Matrix& c);  // x -> c conj(x)
RealMatrix complex_structure(Index d);           // multiplication by i

struct ModularData {
  RealMatrix s, f, delta, j;
  RealMatrix delta_half, delta_minus_half;
  RealMatrix metric;  // realified real part of the GNS inner product
  Matrix rho;

  RealMatrix adjoint(const RealMatrix& x) const;  // with respect to metric
};

ModularData tomita(const GNSSpace& space);

struct NamedResidual {
  std::string name;
  double residual = 0.0;
};

// The eight relations between S, F, Delta, J plus polar form, (anti)linearity and anti-unitarity.
std::vector<NamedResidual> modular_identities(const ModularData& md);
// Delta(A) = rho A rho^-1, J(A) = rho^1/2 A^* rho^-1/2, F(A) = rho A^* rho^-1; full algebras only.
std::vector<NamedResidual> closed_form_residuals(const GNSSpace& space, const ModularData& md);

struct TomitaTakesakiCheck {
  double jmj_in_commutant = 0.0;       // max ||[J L(A) J, L(B)]||
  double flow_invariance = 0.0;        // max residual of Delta^it L(A) Delta^-it outside L(M)
  double flow_matches_sigma = 0.0;     // Delta^it L(A) Delta^-it versus L(sigma^t(A))
};
TomitaTakesakiCheck tomita_takesaki_check(const GNSSpace& space, const ModularData& md, const std::vector<double>& t_grid,
                                          unsigned threads = 1);

struct BlockTomita {
  BlockStructure structure;
  std::vector<double> weights;
  std::vector<Matrix> reduced_densities;
  std::vector<ModularData> blocks;
  std::vector<std::vector<NamedResidual>> identities;
};
// Applies tomita to each full block M_{n_i} with its normalized reduced density.
BlockTomita tomita_blockwise(const StarAlgebra& m, const State& phi);

Matrix modular_flow(const Matrix& rho, double t, const Matrix& a);
double kms_check(const Matrix& rho, const Matrix& a, const Matrix& b, double beta);

Matrix connes_cocycle(const Matrix& rho1, const Matrix& rho2, double t);
// Gamma_t read off the lower-left block of the balanced flow of [[0,0],[1,0]].
Matrix balanced_cocycle(const Matrix& rho1, const Matrix& rho2, double t);
// Upper-right block of the balanced flow of [[0,1],[0,0]]; equals Gamma_t^*.
Matrix balanced_cocycle_adjoint(const Matrix& rho1, const Matrix& rho2, double t);

struct CocycleReport {
  double intertwining = 0.0;
  double cocycle = 0.0;
  double inverse = 0.0;
  double chain_rule = 0.0;
  double unitarity = 0.0;
  double balanced_lower = 0.0;
  double balanced_upper = 0.0;
  double max_residual() const;
};

CocycleReport cocycle_report(const Matrix& rho1, const Matrix& rho2, const Matrix& rho3, const std::vector<double>& t_grid,
                             std::uint64_t seed = 1, unsigned threads = 1);

const std::vector<double>& default_t_grid();

}  // namespace ncgalois
