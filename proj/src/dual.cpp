#include "bdlawson/dual.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bdlawson/errors.hpp"

namespace bdlawson {

namespace {

ComplexMatrix row_scaled(const ComplexMatrix& m, const RealVector& scale) {
  ComplexMatrix out = m;
  for (Index i = 0; i < out.rows(); ++i) out.row(i) *= scale[i];
  return out;
}

RealVector sqrt_weights(const WeightVector& w) {
  RealVector s(w.size());
  for (Index i = 0; i < w.size(); ++i) s[i] = std::sqrt(w.w[i]);
  return s;
}

// Numerator columns minus F times denominator columns, restricted to a
// column range, then row-scaled by sqrt(w). For the coupled columns
// (i < ell) this is (y_i - f_j)/(x_j - t_i); for free columns the
// numerator block contributes nothing and the result is -f_j/(x_j - t_i).
ComplexMatrix residual_block(const BasisMatrices& basis, const ComplexVector& f,
                             const RealVector& sqw) {
  const Index m = basis.rows();
  const Index k = basis.count();
  const Index ell = basis.ell();
  ComplexMatrix out(m, k);
  out.leftCols(ell) = basis.cp.leftCols(ell) - f.asDiagonal() * basis.cq.leftCols(ell);
  out.rightCols(k - ell) = -(f.asDiagonal() * basis.cq.rightCols(k - ell));
  for (Index i = 0; i < m; ++i) out.row(i) *= sqw[i];
  return out;
}

void check_rectangular_inputs(const BasisMatrices& basis, const ComplexVector& f,
                              const WeightVector& w) {
  if (f.size() != basis.rows())
    throw ArgumentError("data vector length does not match the sample count");
  if (w.size() != basis.rows())
    throw ArgumentError("weight vector length does not match the sample count");
  if (basis.rows() < basis.count())
    throw ArgumentError("fewer samples than support nodes");
}

void check_weight_support(const BasisMatrices& basis, const WeightVector& w,
                          const DualSolverOptions& opts) {
  Index positive = 0;
  for (Index i = 0; i < w.size(); ++i)
    if (w.w[i] > opts.w_floor) ++positive;
  if (positive < basis.count()) {
    std::ostringstream msg;
    msg << "only " << positive << " weights exceed the floor; need at least "
        << basis.count();
    throw PreconditionError(msg.str());
  }
}

// R_q must be solvable twice (for the minimizer and the free numerator
// coefficients); reject it up front rather than surfacing a half-built
// evaluation from a triangular solve.
void gate_rq_conditioning(const ComplexMatrix& rq) {
  const Index k = rq.cols();
  double dmax = 0.0;
  double dmin = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < k; ++i) {
    const double a = std::abs(rq(i, i));
    dmax = std::max(dmax, a);
    dmin = std::min(dmin, a);
  }
  const double floor = static_cast<double>(k) * kMachineEps * dmax;
  if (k > 0 && (dmin <= floor || dmax == 0.0)) {
    const double cond = (dmin > 0.0) ? dmax / dmin : std::numeric_limits<double>::infinity();
    throw ConditioningError("denominator basis is numerically rank deficient", cond);
  }
}

bool r_factor_is_singular(const ComplexMatrix& r) {
  const Index k = r.cols();
  if (k == 0) return false;
  double dmax = 0.0;
  double dmin = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < k; ++i) {
    const double a = std::abs(r(i, i));
    dmax = std::max(dmax, a);
    dmin = std::min(dmin, a);
  }
  return dmin <= static_cast<double>(k) * kMachineEps * dmax;
}

// Shared epilogue: renormalize so ||sqrt(W) Cq (c1; c3)|| = 1 exactly as
// evaluated (triangular-solve error otherwise leaves the constraint off by
// the solve's condition number), fix the global phase, evaluate the
// numerator and denominator at the samples, and report d as the objective
// at the final coefficients. The objective at the recovered minimizer is
// second-order accurate in the coefficient error, which the raw sigma_min
// of either factorization route is not.
DualEvaluation finalize_evaluation(const BasisMatrices& basis, const ComplexVector& f,
                                   const RealVector& sqw, double sigma_min,
                                   ComplexVector c, double sigma_gap, double sigma_max,
                                   double rank_floor) {
  const Index k = basis.count();
  const Index ell = basis.ell();

  ComplexVector denom_coeffs(k);
  denom_coeffs.head(ell) = c.head(ell);
  denom_coeffs.tail(k - ell) = c.tail(k - ell);
  ComplexVector q_scaled = basis.cq * denom_coeffs;
  for (Index i = 0; i < q_scaled.size(); ++i) q_scaled[i] *= sqw[i];
  const double nrm = q_scaled.norm();
  if (!(nrm > 0.0))
    throw ConditioningError("dual minimizer has zero denominator norm", 0.0);
  c /= nrm;

  Index imax = 0;
  c.cwiseAbs().maxCoeff(&imax);
  const double mag = std::abs(c[imax]);
  if (mag > 0.0) c *= std::conj(c[imax]) / mag;

  DualEvaluation out;
  out.sigma_gap = sigma_gap;
  out.sigma_max = sigma_max;
  out.rank_deficient = sigma_min <= rank_floor * sigma_max;
  out.rational = assemble_from_coefficients(basis.support, basis.interp_values, c);
  denom_coeffs.head(ell) = c.head(ell);
  denom_coeffs.tail(k - ell) = c.tail(k - ell);
  ComplexVector numer_coeffs(k);
  numer_coeffs.head(ell) = c.head(ell);
  numer_coeffs.tail(k - ell) = c.segment(ell, k - ell);
  out.p_at_samples = basis.cp * numer_coeffs;
  out.q_at_samples = basis.cq * denom_coeffs;
  double d = 0.0;
  for (Index j = 0; j < out.p_at_samples.size(); ++j) {
    const double term = std::norm(out.p_at_samples[j] - f[j] * out.q_at_samples[j]);
    d += sqw[j] * sqw[j] * term;
  }
  out.d = d;
  out.c = std::move(c);
  return out;
}

// Streamlined ell = 0 route. Cp coincides with Cq, so one QR serves both:
// the reduced matrix is (I - Q Q^H) F Q and the numerator coefficients are
// recovered as R^{-1} Q^H (F Q u).
DualEvaluation dual_special_free(const BasisMatrices& basis, const ComplexVector& f,
                                 const RealVector& sqw, const DualSolverOptions& opts) {
  const Index m = basis.rows();
  const Index k = basis.count();

  ThinQr qq = thin_qr(row_scaled(basis.cq, sqw));
  gate_rq_conditioning(qq.r);

  ComplexMatrix fq = qq.q;
  for (Index i = 0; i < m; ++i) fq.row(i) *= f[i];
  ComplexMatrix reduced = apply_complement_projector(qq.q, fq);

  SmallestSingularPair sv = smallest_singular_pair(reduced);
  ComplexVector c3 = solve_upper_triangular(qq.r, sv.right_vector);

  ComplexVector qu = qq.q * sv.right_vector;
  for (Index i = 0; i < m; ++i) qu[i] *= f[i];
  ComplexVector c2 = solve_upper_triangular(qq.r, qq.q.adjoint() * qu);

  ComplexVector c(2 * k);
  c.head(k) = c2;
  c.tail(k) = c3;
  return finalize_evaluation(basis, f, sqw, sv.sigma_min, std::move(c), sv.sigma_gap,
                             sv.sigma_max, opts.rank_floor);
}

// Streamlined ell = n+1 route: every support node interpolates, so the
// coefficient vector is a single block and no projector is needed.
DualEvaluation dual_special_interp(const BasisMatrices& basis, const ComplexVector& f,
                                   const RealVector& sqw, const DualSolverOptions& opts) {
  ThinQr qq = thin_qr(row_scaled(basis.cq, sqw));
  gate_rq_conditioning(qq.r);

  ComplexMatrix reduced = detail::right_solve_upper(qq.r, residual_block(basis, f, sqw));
  SmallestSingularPair sv = smallest_singular_pair(reduced);
  ComplexVector c1 = solve_upper_triangular(qq.r, sv.right_vector);

  return finalize_evaluation(basis, f, sqw, sv.sigma_min, std::move(c1), sv.sigma_gap,
                             sv.sigma_max, opts.rank_floor);
}

// Block route, valid for every ell. The free numerator coefficients are
// eliminated through the QR of sqrt(W) Cp2, leaving a k-column reduced
// matrix whose smallest singular pair yields d and (c1; c3).
DualEvaluation dual_general(const BasisMatrices& basis, const ComplexVector& f,
                            const WeightVector& w, const RealVector& sqw,
                            const DualSolverOptions& opts) {
  const Index k = basis.count();
  const Index ell = basis.ell();
  const Index nfree = k - ell;

  ThinQr qq = thin_qr(row_scaled(basis.cq, sqw));
  gate_rq_conditioning(qq.r);

  ThinQr qp2;
  if (nfree > 0) {
    qp2 = thin_qr(row_scaled(basis.cp.rightCols(nfree), sqw));
    if (r_factor_is_singular(qp2.r)) {
      if (!opts.allow_oracle_fallback)
        throw ConditioningError("free numerator basis is numerically rank deficient",
                                std::numeric_limits<double>::infinity());
      DualEvaluation ev = dual_value_oracle(basis, f, w, opts);
      ev.used_oracle_fallback = true;
      return ev;
    }
  }

  ComplexMatrix block = residual_block(basis, f, sqw);
  ComplexMatrix projected =
      (nfree > 0) ? apply_complement_projector(qp2.q, block) : block;
  ComplexMatrix reduced = detail::right_solve_upper(qq.r, projected);

  SmallestSingularPair sv = smallest_singular_pair(reduced);
  ComplexVector c13 = solve_upper_triangular(qq.r, sv.right_vector);

  ComplexVector c(k + nfree);
  c.head(ell) = c13.head(ell);
  c.tail(nfree) = c13.tail(nfree);
  if (nfree > 0) {
    ComplexVector rhs = qp2.q.adjoint() * (block * c13);
    c.segment(ell, nfree) = -solve_upper_triangular(qp2.r, rhs);
  }
  return finalize_evaluation(basis, f, sqw, sv.sigma_min, std::move(c), sv.sigma_gap,
                             sv.sigma_max, opts.rank_floor);
}

}  // namespace

BasisMatrices build_basis(const ComplexVector& sample_nodes, const SupportPoints& support,
                          const ComplexVector& interp_values) {
  if (interp_values.size() != support.ell())
    throw ArgumentError("one interpolation value per interpolation node is required");
  if (sample_nodes.size() == 0) throw ArgumentError("sample node set is empty");
  support.validate_disjoint_from(sample_nodes);

  const Index m = sample_nodes.size();
  const Index k = support.count();
  BasisMatrices basis;
  basis.cp.resize(m, k);
  basis.cq.resize(m, k);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < k; ++i) {
      const Complex diff = sample_nodes[j] - support.node(i);
      if (diff == Complex(0.0, 0.0)) {
        std::ostringstream msg;
        msg << "sample " << j << " coincides with support node " << i;
        throw ArgumentError(msg.str());
      }
      const Complex inv = Complex(1.0, 0.0) / diff;
      basis.cq(j, i) = inv;
      basis.cp(j, i) = (i < support.ell()) ? interp_values[i] * inv : inv;
    }
  }
  basis.support = support;
  basis.interp_values = interp_values;
  return basis;
}

WeightVector::WeightVector(RealVector w_in) : w(std::move(w_in)) {
  if (w.size() == 0) throw ArgumentError("weight vector is empty");
  for (Index i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0)) throw ArgumentError("weights must be nonnegative and finite");
  }
  const double total = detail::compensated_sum(w);
  if (std::abs(total - 1.0) > 1e-14)
    throw ArgumentError("weights must sum to 1");
}

WeightVector WeightVector::uniform(Index m) {
  if (m <= 0) throw ArgumentError("weight vector is empty");
  RealVector w = RealVector::Constant(m, 1.0 / static_cast<double>(m));
  // Make the sum exactly 1 regardless of m by absorbing the rounding
  // residue into the last entry.
  w[m - 1] = 1.0 - detail::compensated_sum(w.head(m - 1));
  return WeightVector(std::move(w));
}

ComplexMatrix constraint_matrix_apply(const ComplexMatrix& raw, Index ell) {
  if (raw.cols() % 2 != 0)
    throw ArgumentError("block matrix must have an even number of columns");
  const Index k = raw.cols() / 2;
  if (ell < 0 || ell > k)
    throw ArgumentError("interpolation count out of range");
  ComplexMatrix out(raw.rows(), 2 * k - ell);
  out.leftCols(ell) = raw.leftCols(ell) + raw.middleCols(k, ell);
  out.middleCols(ell, k - ell) = raw.middleCols(ell, k - ell);
  out.rightCols(k - ell) = raw.rightCols(k - ell);
  return out;
}

DualEvaluation dual_value_fast(const BasisMatrices& basis, const ComplexVector& f,
                               const WeightVector& w, const DualSolverOptions& opts) {
  check_rectangular_inputs(basis, f, w);
  check_weight_support(basis, w, opts);
  const RealVector sqw = sqrt_weights(w);

  const Index ell = basis.ell();
  const Index k = basis.count();
  switch (opts.path) {
    case DualPath::general:
      return dual_general(basis, f, w, sqw, opts);
    case DualPath::special:
      if (ell == 0) return dual_special_free(basis, f, sqw, opts);
      if (ell == k) return dual_special_interp(basis, f, sqw, opts);
      throw ArgumentError("streamlined route exists only for ell = 0 or ell = n+1");
    case DualPath::automatic:
      break;
  }
  if (ell == 0) return dual_special_free(basis, f, sqw, opts);
  if (ell == k) return dual_special_interp(basis, f, sqw, opts);
  return dual_general(basis, f, w, sqw, opts);
}

DualEvaluation dual_value_oracle(const BasisMatrices& basis, const ComplexVector& f,
                                 const WeightVector& w, const DualSolverOptions& opts) {
  check_rectangular_inputs(basis, f, w);
  const RealVector sqw = sqrt_weights(w);
  const Index k = basis.count();
  const Index ell = basis.ell();
  const Index nfree = k - ell;
  const Index total = 2 * k - ell;

  ComplexMatrix a_raw(basis.rows(), 2 * k);
  a_raw.leftCols(k) = basis.cp;
  a_raw.rightCols(k) = -(f.asDiagonal() * basis.cq);
  ComplexMatrix b_raw = ComplexMatrix::Zero(basis.rows(), 2 * k);
  b_raw.rightCols(k) = basis.cq;
  ComplexMatrix a = row_scaled(constraint_matrix_apply(a_raw, ell), sqw);
  ComplexMatrix b = row_scaled(constraint_matrix_apply(b_raw, ell), sqw);

  ComplexMatrix ah = a.adjoint() * a;
  ComplexMatrix bh = b.adjoint() * b;

  // B^H B vanishes on the free numerator coefficients c2, so the pencil
  // (A^H A, B^H B) is structurally singular whenever ell < n+1. Its finite
  // eigenpairs are those of the definite pencil obtained by eliminating c2
  // through the second KKT block row, A_u^H (A_z z + A_u u) = 0, i.e. a
  // Schur complement of A^H A. The elimination uses an eigenvalue-based
  // pseudo-inverse so a rank-deficient free numerator block stays solvable.
  std::vector<Index> zidx;
  zidx.reserve(k);
  for (Index i = 0; i < ell; ++i) zidx.push_back(i);
  for (Index i = ell + nfree; i < total; ++i) zidx.push_back(i);
  std::vector<Index> uidx;
  uidx.reserve(nfree);
  for (Index i = ell; i < ell + nfree; ++i) uidx.push_back(i);

  ComplexMatrix reduced = ah(zidx, zidx);
  ComplexMatrix elimination = ComplexMatrix::Zero(nfree, k);
  if (nfree > 0) {
    ComplexMatrix ah_uu = ah(uidx, uidx);
    ComplexMatrix ah_uz = ah(uidx, zidx);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        (ah_uu + ah_uu.adjoint()) / 2.0);
    if (es.info() != Eigen::Success)
      throw DegeneratePencilError("free numerator block eigendecomposition failed");
    const RealVector lam = es.eigenvalues();
    const double lam_floor =
        static_cast<double>(nfree) * kMachineEps * std::max(lam.maxCoeff(), 0.0);
    RealVector inv = RealVector::Zero(nfree);
    for (Index i = 0; i < nfree; ++i)
      if (lam[i] > lam_floor) inv[i] = 1.0 / lam[i];
    elimination = es.eigenvectors() * inv.asDiagonal() *
                  es.eigenvectors().adjoint() * ah_uz;
    reduced -= ah(zidx, uidx) * elimination;
    reduced = ((reduced + reduced.adjoint()) / 2.0).eval();
  }

  GevpMinimum eig = hermitian_definite_gevp_min(reduced, bh(zidx, zidx));

  const double d = std::max(eig.lambda_min, 0.0);
  const double lam2 = eig.lambda_min + eig.lambda_gap;
  const double sigma_min = std::sqrt(d);
  const double sigma_gap = std::sqrt(std::max(lam2, 0.0)) - sigma_min;
  const double sigma_max = std::sqrt(std::max(eig.lambda_max, 0.0));

  ComplexVector c(total);
  for (Index i = 0; i < k; ++i) c[zidx[i]] = eig.eigenvector[i];
  if (nfree > 0) {
    ComplexVector u = -(elimination * eig.eigenvector);
    for (Index i = 0; i < nfree; ++i) c[uidx[i]] = u[i];
  }

  DualEvaluation out = finalize_evaluation(basis, f, sqw, sigma_min, std::move(c),
                                           sigma_gap, sigma_max, opts.rank_floor);

  // Strong-duality certificate: A^H A - d B^H B must be positive
  // semidefinite (globally, including the eliminated block) when d is the
  // true minimum.
  ComplexMatrix slack = ah - out.d * bh;
  GevpMinimum margin = hermitian_definite_gevp_min(
      slack, ComplexMatrix::Identity(slack.rows(), slack.cols()));
  GevpMinimum ref = hermitian_definite_gevp_min(
      ah, ComplexMatrix::Identity(ah.rows(), ah.cols()));
  out.psd_margin = margin.lambda_min;
  out.psd_reference = ref.lambda_max;
  return out;
}

}  // namespace bdlawson
