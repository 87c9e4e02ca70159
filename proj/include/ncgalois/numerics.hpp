#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncgalois/error.hpp"

namespace ncgalois {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct Tolerance {
  double abs_eps = 1e-12;
  double rel_eps = 1e-9;

  double rank_threshold(double largest) const { return abs_eps + rel_eps * largest; }
};

// Orthonormal column basis of a subspace of C^ambient.
class Subspace {
 public:
  explicit Subspace(Index ambient_dim = 0);
  // Columns must already be orthonormal.
  explicit Subspace(Matrix orthonormal_basis);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  Vector project(const Vector& v) const;
  // Largest column norm of (I - P) applied to the columns of vs.
  double residual(const Matrix& vs) const;
  bool contains(const Matrix& vs, double tol = 1e-9) const { return residual(vs) <= tol; }

 private:
  Index ambient_;
  Matrix basis_;
};

struct HermitianEig {
  RealVector values;  // ascending
  Matrix vectors;     // columns, phase-normalized
};

// Deterministic seeded generator. Built from raw mt19937_64 bits so streams match
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Complex complex_normal();
  std::size_t index(std::size_t n);

  Matrix gaussian(Index rows, Index cols);
  Matrix hermitian(Index n);
  Matrix unitary(Index n);
  // Faithful density matrix with eigenvalues bounded away from zero.
  Matrix density(Index n, double floor = 0.05);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Makes the largest-magnitude entry real positive (first one on ties).
void fix_phase(Eigen::Ref<Vector> v);

bool is_hermitian(const Matrix& a, double tol = 1e-10);
bool is_unitary(const Matrix& u, double tol = 1e-9);
void require_square(const Matrix& a, const char* what);

HermitianEig hermitian_eig(const Matrix& a);

// Returns index ranges [begin, end) of ascending values grouped where consecutive
// gaps are at most merge_gap.
std::vector<std::pair<Index, Index>> cluster_values(const RealVector& ascending, double merge_gap);

RealVector singular_values(const Matrix& a);
double operator_norm(const Matrix& a);
Index rank(const Matrix& a, const Tolerance& tol = {});

Subspace nullspace(const Matrix& a, const Tolerance& tol = {});
Subspace column_span(const Matrix& a, const Tolerance& tol = {});

// Nullspace of a tall stack of row blocks, Householder-compressed as blocks arrive.
class StreamedNullspace {
 public:
  explicit StreamedNullspace(Index cols) : cols_(cols), r_(0, cols) {}
  void add_rows(const Matrix& rows);
  Subspace solve(const Tolerance& tol = {}) const { return nullspace(r_, tol); }

 private:
  Index cols_;
  Matrix r_;
};

Matrix matrix_imaginary_power(const Matrix& p, double t, const Tolerance& tol = {});
Matrix matrix_real_power(const Matrix& p, double s, const Tolerance& tol = {});
Matrix psd_sqrt(const Matrix& p);

bool subspace_contains(const Subspace& big, const Subspace& small, double tol = 1e-9);
bool subspace_equal(const Subspace& a, const Subspace& b, double tol = 1e-9);
double subspace_distance(const Subspace& a, const Subspace& b);
Subspace subspace_intersection(const Subspace& a, const Subspace& b, const Tolerance& tol = {});

// Column-major vectorization of an n x n matrix and its inverse.
Vector vec(const Matrix& a);
Matrix unvec(const Eigen::Ref<const Vector>& v, Index n);

}  // namespace ncgalois
