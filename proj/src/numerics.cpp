#include "ncgalois/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <lapacke.h>

// Present when LAPACK comes from OpenBLAS.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace ncgalois {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotLatinSquare: return "NotLatinSquare";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::OrderBoundExceeded: return "OrderBoundExceeded";
    case ErrorCode::ParentMismatch: return "ParentMismatch";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::NotAnAlgebra: return "NotAnAlgebra";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::CenterSplitFailed: return "CenterSplitFailed";
    case ErrorCode::NotInvariantAlgebra: return "NotInvariantAlgebra";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotAChain: return "NotAChain";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  return code == ErrorCode::NoConvergence || code == ErrorCode::DecompositionFailed ||
         code == ErrorCode::CenterSplitFailed;
}

Subspace::Subspace(Index ambient_dim) : ambient_(ambient_dim), basis_(ambient_dim, 0) {}

Subspace::Subspace(Matrix orthonormal_basis)
    : ambient_(orthonormal_basis.rows()), basis_(std::move(orthonormal_basis)) {}

Vector Subspace::project(const Vector& v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from ambient dimension");
  return basis_ * (basis_.adjoint() * v);
}

double Subspace::residual(const Matrix& vs) const {
  if (vs.rows() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from ambient dimension");
  if (vs.cols() == 0) return 0.0;
  Matrix r = vs - basis_ * (basis_.adjoint() * vs);
  return r.colwise().norm().maxCoeff();
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re / std::numbers::sqrt2, im / std::numbers::sqrt2};
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

Matrix Rng::gaussian(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

Matrix Rng::hermitian(Index n) {
  Matrix g = gaussian(n, n);
  return (g + g.adjoint()) / 2.0;
}

Matrix Rng::unitary(Index n) {
  Matrix g = gaussian(n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Matrix Rng::density(Index n, double floor) {
  Matrix g = gaussian(n, n);
  Matrix p = g * g.adjoint() + floor * static_cast<double>(n) * Matrix::Identity(n, n);
  return p / p.trace().real();
}

void fix_phase(Eigen::Ref<Vector> v) {
  Index best = 0;
  double best_abs = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs * (1.0 + 1e-12) + 1e-14) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  v *= std::conj(v(best)) / best_abs;
  v(best) = Complex(best_abs, 0.0);
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be square");
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() <= tol;
}

HermitianEig hermitian_eig(const Matrix& a) {
  require_square(a, "hermitian_eig input");
  if (!a.allFinite()) throw Error(ErrorCode::InvalidInput, "matrix has non-finite entries");
  if (!is_hermitian(a)) throw Error(ErrorCode::NotHermitian, "A differs from its adjoint beyond tolerance");
  const Matrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "Hermitian eigensolver did not converge");
  HermitianEig out{es.eigenvalues(), es.eigenvectors()};
  for (Index j = 0; j < out.vectors.cols(); ++j) fix_phase(out.vectors.col(j));
  return out;
}

std::vector<std::pair<Index, Index>> cluster_values(const RealVector& ascending, double merge_gap) {
  std::vector<std::pair<Index, Index>> out;
  const Index n = ascending.size();
  Index start = 0;
  for (Index i = 1; i <= n; ++i) {
    if (i == n || ascending(i) - ascending(i - 1) > merge_gap) {
      out.emplace_back(start, i);
      start = i;
    }
  }
  return out;
}

namespace {

struct Svd {
  RealVector s;
  Matrix u;  // thin, when requested
  Matrix v;  // full, when requested
};

// LAPACK zgesvd; Eigen 3.4's BDCSVD loses the singular vectors on highly degenerate spectra.
Svd lapack_svd(Matrix a, bool thin_u, bool full_v) {
  // Callers parallelize themselves; a single BLAS thread keeps results independent of that.
  static std::once_flag pin;
  std::call_once(pin, [] {
    if (openblas_set_num_threads) openblas_set_num_threads(1);
  });
  const Index m = a.rows(), n = a.cols(), k = std::min(m, n);
  Svd out;
  out.s.resize(k);
  if (thin_u) out.u.resize(m, k);
  Matrix vt;
  if (full_v) vt.resize(n, n);
  RealVector superb(std::max<Index>(k, 1));
  auto* ap = reinterpret_cast<lapack_complex_double*>(a.data());
  auto* up = thin_u ? reinterpret_cast<lapack_complex_double*>(out.u.data()) : nullptr;
  auto* vp = full_v ? reinterpret_cast<lapack_complex_double*>(vt.data()) : nullptr;
  const lapack_int info =
      LAPACKE_zgesvd(LAPACK_COL_MAJOR, thin_u ? 'S' : 'N', full_v ? 'A' : 'N', static_cast<lapack_int>(m),
                     static_cast<lapack_int>(n), ap, static_cast<lapack_int>(m), out.s.data(), up,
                     static_cast<lapack_int>(std::max<Index>(m, 1)), vp, static_cast<lapack_int>(std::max<Index>(n, 1)),
                     superb.data());
  if (info != 0) throw Error(ErrorCode::NoConvergence, "SVD failed with LAPACK info " + std::to_string(info));
  if (full_v) out.v = vt.adjoint();
  return out;
}

}  // namespace

RealVector singular_values(const Matrix& a) {
  if (a.size() == 0) return RealVector(0);
  return lapack_svd(a, false, false).s;
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

Index rank(const Matrix& a, const Tolerance& tol) {
  const RealVector s = singular_values(a);
  if (s.size() == 0) return 0;
  const double thr = tol.rank_threshold(s(0));
  Index r = 0;
  while (r < s.size() && s(r) > thr) ++r;
  return r;
}

Subspace nullspace(const Matrix& a, const Tolerance& tol) {
  const Index m = a.rows();
  const Index n = a.cols();
  if (n == 0) return Subspace(Index{0});
  if (m == 0 || a.cwiseAbs().maxCoeff() == 0.0) return Subspace(Matrix(Matrix::Identity(n, n)));
  Matrix work;
  if (m > n) {
    // Householder compression keeps singular values and shrinks the SVD input.
    Eigen::HouseholderQR<Matrix> qr(a);
    work = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  } else {
    work = a;
  }
  const Svd svd = lapack_svd(std::move(work), false, true);
  const RealVector& s = svd.s;
  const double thr = tol.rank_threshold(s.size() ? s(0) : 0.0);
  Index r = 0;
  while (r < s.size() && s(r) > thr) ++r;
  return Subspace(Matrix(svd.v.rightCols(n - r)));
}

void StreamedNullspace::add_rows(const Matrix& rows) {
  if (rows.cols() != cols_) throw Error(ErrorCode::DimensionMismatch, "row block has wrong width");
  Matrix stack(r_.rows() + rows.rows(), cols_);
  stack << r_, rows;
  if (stack.rows() <= cols_) {
    r_ = std::move(stack);
    return;
  }
  Eigen::HouseholderQR<Matrix> qr(stack);
  r_ = qr.matrixQR().topRows(cols_).triangularView<Eigen::Upper>();
}

Subspace column_span(const Matrix& a, const Tolerance& tol) {
  const Index m = a.rows();
  if (a.cols() == 0 || m == 0) return Subspace(m);
  if (a.cwiseAbs().maxCoeff() == 0.0) return Subspace(m);
  const Svd svd = lapack_svd(a, true, false);
  const RealVector& s = svd.s;
  const double thr = tol.rank_threshold(s(0));
  Index r = 0;
  while (r < s.size() && s(r) > thr) ++r;
  return Subspace(Matrix(svd.u.leftCols(r)));
}

namespace {

HermitianEig positive_definite_eig(const Matrix& p, const Tolerance& tol) {
  HermitianEig e = hermitian_eig(p);
  const Index n = e.values.size();
  if (n == 0) return e;
  const double top = std::max(std::abs(e.values(0)), std::abs(e.values(n - 1)));
  if (e.values(0) <= tol.rank_threshold(top))
    throw Error(ErrorCode::NotPositiveDefinite,
                "minimum eigenvalue " + std::to_string(e.values(0)) + " is not above tolerance");
  return e;
}

}  // namespace

Matrix matrix_imaginary_power(const Matrix& p, double t, const Tolerance& tol) {
  const HermitianEig e = positive_definite_eig(p, tol);
  Vector d(e.values.size());
  for (Index i = 0; i < d.size(); ++i) d(i) = std::polar(1.0, t * std::log(e.values(i)));
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

Matrix matrix_real_power(const Matrix& p, double s, const Tolerance& tol) {
  const HermitianEig e = positive_definite_eig(p, tol);
  RealVector d(e.values.size());
  for (Index i = 0; i < d.size(); ++i) d(i) = std::pow(e.values(i), s);
  return e.vectors * d.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

Matrix psd_sqrt(const Matrix& p) {
  const HermitianEig e = hermitian_eig(p);
  RealVector d = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * d.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "subspaces live in different ambient spaces");
}

}  // namespace

bool subspace_contains(const Subspace& big, const Subspace& small, double tol) {
  require_same_ambient(big, small);
  if (small.dim() > big.dim()) return false;
  return big.residual(small.basis()) <= tol;
}

bool subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  require_same_ambient(a, b);
  return a.dim() == b.dim() && subspace_contains(a, b, tol) && subspace_contains(b, a, tol);
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return std::max(a.residual(b.basis()), b.residual(a.basis()));
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  require_same_ambient(a, b);
  const Index n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return Subspace(n);
  if (b.dim() == n) return a;
  if (a.dim() == n) return b;
  const Matrix& qa = a.basis();
  const Matrix& qb = b.basis();
  const Matrix outside = qa - qb * (qb.adjoint() * qa);
  const Subspace coeffs = nullspace(outside, tol);
  return Subspace(Matrix(qa * coeffs.basis()));
}

Vector vec(const Matrix& a) {
  return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvec(const Eigen::Ref<const Vector>& v, Index n) {
  if (v.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "vector length is not n^2");
  Matrix out(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) out(i, j) = v(j * n + i);
  return out;
}

}  // namespace ncgalois
