#include "bdlawson/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace bdlawson {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_lapack_info(const char* routine, lapack_int info) {
  if (info != 0) {
    throw Error(std::string(routine) + " failed with info " + std::to_string(info));
  }
}

// In-place zgeqrf; returns the reflector scalars.
std::vector<Complex> householder_factor(ComplexMatrix& a) {
  const lapack_int rows = static_cast<lapack_int>(a.rows());
  const lapack_int cols = static_cast<lapack_int>(a.cols());
  std::vector<Complex> tau(static_cast<std::size_t>(cols));
  lapack_int info =
      LAPACKE_zgeqrf(LAPACK_COL_MAJOR, rows, cols, a.data(), rows, tau.data());
  check_lapack_info("zgeqrf", info);
  return tau;
}

ComplexMatrix extract_r(const ComplexMatrix& factored) {
  const Index k = factored.cols();
  ComplexMatrix r = ComplexMatrix::Zero(k, k);
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i <= j; ++i) r(i, j) = factored(i, j);
  }
  return r;
}

double diag_floor_or_default(const ComplexMatrix& r, double floor) {
  if (floor >= 0.0) return floor;
  const Index k = r.rows();
  if (k == 0) return 0.0;
  const double maxdiag = r.diagonal().cwiseAbs().maxCoeff();
  return static_cast<double>(k) * kMachineEps * maxdiag;
}

void check_diagonal(const ComplexMatrix& r, double floor) {
  const Index k = r.rows();
  for (Index i = 0; i < k; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag <= floor) {
      throw SingularMatrixError("upper-triangular solve: diagonal entry " +
                                    std::to_string(i) + " has magnitude " +
                                    std::to_string(mag) + " at or below floor " +
                                    std::to_string(floor),
                                i, mag);
    }
  }
}

}  // namespace

ThinQr thin_qr(const ComplexMatrix& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  if (rows < cols) {
    throw ArgumentError("thin_qr: need rows >= cols, got " + std::to_string(rows) + " x " +
                        std::to_string(cols));
  }
  ThinQr out;
  if (cols == 0) {
    out.q.resize(rows, 0);
    out.r.resize(0, 0);
    return out;
  }
  ComplexMatrix a = m;
  std::vector<Complex> tau = householder_factor(a);
  out.r = extract_r(a);
  lapack_int info = LAPACKE_zungqr(LAPACK_COL_MAJOR, static_cast<lapack_int>(rows),
                                   static_cast<lapack_int>(cols), static_cast<lapack_int>(cols),
                                   a.data(), static_cast<lapack_int>(rows), tau.data());
  check_lapack_info("zungqr", info);
  out.q = std::move(a);
  return out;
}

double upper_triangular_condition_estimate(const ComplexMatrix& r) {
  const Index k = std::min(r.rows(), r.cols());
  if (k == 0) return 1.0;
  double maxdiag = 0.0;
  double mindiag = kInf;
  for (Index i = 0; i < k; ++i) {
    const double mag = std::abs(r(i, i));
    maxdiag = std::max(maxdiag, mag);
    mindiag = std::min(mindiag, mag);
  }
  if (mindiag == 0.0) return kInf;
  return maxdiag / mindiag;
}

SmallestSingularPair smallest_singular_pair(const ComplexMatrix& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  if (cols < 1) throw ArgumentError("smallest_singular_pair: need at least one column");
  if (rows < cols) {
    throw ArgumentError("smallest_singular_pair: need rows >= cols, got " +
                        std::to_string(rows) + " x " + std::to_string(cols));
  }
  // Singular values and right vectors of M equal those of its R factor.
  ComplexMatrix a = (rows > cols) ? detail::qr_r_factor(m) : ComplexMatrix(m);
  const lapack_int k = static_cast<lapack_int>(cols);
  std::vector<double> s(static_cast<std::size_t>(k));
  std::vector<double> superb(static_cast<std::size_t>(k));
  ComplexMatrix vt(cols, cols);
  Complex u_dummy;
  lapack_int info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', 'A', k, k, a.data(), k, s.data(),
                                   &u_dummy, 1, vt.data(), k, superb.data());
  check_lapack_info("zgesvd", info);
  SmallestSingularPair out;
  out.sigma_min = s[static_cast<std::size_t>(k - 1)];
  out.sigma_max = s[0];
  out.sigma_gap = (k >= 2) ? s[static_cast<std::size_t>(k - 2)] - out.sigma_min : kInf;
  out.right_vector = vt.row(cols - 1).adjoint();
  return out;
}

ComplexVector solve_upper_triangular(const ComplexMatrix& r, const ComplexVector& rhs,
                                     double floor) {
  if (r.rows() != r.cols()) throw ArgumentError("solve_upper_triangular: R must be square");
  if (r.rows() != rhs.size()) {
    throw ArgumentError("solve_upper_triangular: size mismatch");
  }
  check_diagonal(r, diag_floor_or_default(r, floor));
  return r.triangularView<Eigen::Upper>().solve(rhs);
}

ComplexMatrix apply_complement_projector(const ComplexMatrix& q, const ComplexMatrix& m) {
  if (q.cols() == 0) return m;
  if (q.rows() != m.rows()) {
    throw ArgumentError("apply_complement_projector: row mismatch");
  }
  return m - q * (q.adjoint() * m);
}

GevpMinimum hermitian_definite_gevp_min(const ComplexMatrix& ah, const ComplexMatrix& bh) {
  const Index k = ah.rows();
  if (ah.cols() != k || bh.rows() != k || bh.cols() != k) {
    throw ArgumentError("hermitian_definite_gevp_min: matrices must be square and same size");
  }
  if (k == 0) throw ArgumentError("hermitian_definite_gevp_min: empty pencil");
  const double scale_a = std::max(ah.norm(), 1.0);
  const double scale_b = std::max(bh.norm(), 1.0);
  if ((ah - ah.adjoint()).norm() > 1e-13 * scale_a ||
      (bh - bh.adjoint()).norm() > 1e-13 * scale_b) {
    throw ArgumentError("hermitian_definite_gevp_min: inputs are not Hermitian");
  }

  // Eigendecompose Bh; restrict to its numerical range.
  ComplexMatrix ub = 0.5 * (bh + bh.adjoint());
  std::vector<double> eb(static_cast<std::size_t>(k));
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(k),
                                   ub.data(), static_cast<lapack_int>(k), eb.data());
  check_lapack_info("zheevd", info);
  const double bmax = eb[static_cast<std::size_t>(k - 1)];
  if (bmax <= 0.0) {
    throw DegeneratePencilError("hermitian_definite_gevp_min: Bh has no positive eigenvalue");
  }
  if (eb[0] < -1e-12 * bmax) {
    throw ArgumentError("hermitian_definite_gevp_min: Bh is numerically indefinite");
  }
  const double cut = 1e-13 * bmax;
  Index r = 0;
  for (Index i = 0; i < k; ++i) {
    if (eb[static_cast<std::size_t>(i)] > cut) ++r;
  }
  // zheevd sorts ascending; the kept eigenvalues are the trailing r.
  ComplexMatrix s(k, r);
  for (Index j = 0; j < r; ++j) {
    const Index src = k - r + j;
    s.col(j) = ub.col(src) / std::sqrt(eb[static_cast<std::size_t>(src)]);
  }

  ComplexMatrix ared = s.adjoint() * ah * s;
  ared = 0.5 * (ared + ared.adjoint()).eval();
  std::vector<double> ea(static_cast<std::size_t>(r));
  info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(r), ared.data(),
                        static_cast<lapack_int>(r), ea.data());
  check_lapack_info("zheevd", info);

  GevpMinimum out;
  out.lambda_min = ea[0];
  out.lambda_max = ea[static_cast<std::size_t>(r - 1)];
  out.lambda_gap = (r >= 2) ? ea[1] - ea[0] : kInf;
  out.eigenvector = s * ared.col(0);
  const double bnorm = std::sqrt(std::real(
      Complex(out.eigenvector.adjoint() * (bh * out.eigenvector))));
  if (bnorm > 0.0) out.eigenvector /= bnorm;

  if (r < k) {
    // Restricted pencil: the pair must still satisfy the full equation, else
    // Ah couples range(Bh) with its null space and no finite eigenpair exists.
    const double resid =
        (ah * out.eigenvector - out.lambda_min * (bh * out.eigenvector)).norm();
    const double ref = ah.norm() + std::abs(out.lambda_min) * bh.norm();
    if (resid > 1e-8 * std::max(ref, 1.0)) {
      throw DegeneratePencilError(
          "hermitian_definite_gevp_min: no finite smallest eigenpair on range(Bh)");
    }
  }
  return out;
}

namespace detail {

ComplexMatrix qr_r_factor(const ComplexMatrix& m) {
  if (m.rows() < m.cols()) throw ArgumentError("qr_r_factor: need rows >= cols");
  if (m.cols() == 0) return ComplexMatrix(0, 0);
  ComplexMatrix a = m;
  householder_factor(a);
  return extract_r(a);
}

ComplexMatrix right_solve_upper(const ComplexMatrix& r, const ComplexMatrix& y, double floor) {
  if (r.rows() != r.cols()) throw ArgumentError("right_solve_upper: R must be square");
  if (y.cols() != r.rows()) throw ArgumentError("right_solve_upper: size mismatch");
  check_diagonal(r, diag_floor_or_default(r, floor));
  ComplexMatrix x = y;
  r.triangularView<Eigen::Upper>().solveInPlace<Eigen::OnTheRight>(x);
  return x;
}

double compensated_sum(const RealVector& v) {
  double sum = 0.0;
  double comp = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double x = v[i];
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace detail

}  // namespace bdlawson
