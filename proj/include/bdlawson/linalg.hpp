#pragma once

#include "bdlawson/errors.hpp"
#include "bdlawson/types.hpp"

namespace bdlawson {

/// Thin QR factorization M = Q R with Q (rows x cols) having orthonormal
/// columns and R (cols x cols) upper triangular. Householder reflections,
/// no column pivoting; requires rows >= cols. cols == 0 yields empty factors.
struct ThinQr {
  ComplexMatrix q;
  ComplexMatrix r;
};

ThinQr thin_qr(const ComplexMatrix& m);

/// Cheap condition estimate of an upper-triangular matrix: max|R_ii|/min|R_ii|
/// (a lower bound on the true condition number). Infinity when a diagonal
/// entry is exactly zero; 1 for an empty matrix.
double upper_triangular_condition_estimate(const ComplexMatrix& r);

/// Smallest singular value of M (rows >= cols >= 1) with its unit right
/// singular vector and a uniqueness gap. sigma_gap = sigma_{k-1} - sigma_k
/// (infinity when cols == 1); callers must consult it when the smallest pair
/// may be non-unique. Tall inputs are reduced to their R factor first, so only
/// singular values and right vectors are defined.
struct SmallestSingularPair {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double sigma_gap = 0.0;
  ComplexVector right_vector;
};

SmallestSingularPair smallest_singular_pair(const ComplexMatrix& m);

/// Back substitution for upper-triangular R x = rhs. A diagonal entry with
/// |R_ii| <= floor raises SingularMatrixError carrying i and |R_ii|.
/// floor < 0 selects the default k * u * max|R_ii|.
ComplexVector solve_upper_triangular(const ComplexMatrix& r, const ComplexVector& rhs,
                                     double floor = -1.0);

/// Orthogonal-complement projection (I - Q Q^H) M for Q with orthonormal
/// columns, computed as M - Q (Q^H M). Q with zero columns returns M.
ComplexMatrix apply_complement_projector(const ComplexMatrix& q, const ComplexMatrix& m);

/// Smallest eigenpair of the Hermitian pencil (Ah, Bh) with Bh positive
/// semidefinite, restricted to range(Bh). The eigenvector is normalized so
/// v^H Bh v = 1. lambda_gap / lambda_max describe the spectrum of the reduced
/// problem (gap is infinity when it is one-dimensional). Brute-force dense
/// reference used by tests and the oracle dual path; not for production sizes.
struct GevpMinimum {
  double lambda_min = 0.0;
  double lambda_gap = 0.0;
  double lambda_max = 0.0;
  ComplexVector eigenvector;
};

GevpMinimum hermitian_definite_gevp_min(const ComplexMatrix& ah, const ComplexMatrix& bh);

namespace detail {

/// R factor of a thin QR of M, without forming Q.
ComplexMatrix qr_r_factor(const ComplexMatrix& m);

/// Right division Y R^{-1} for upper-triangular R, with the same singularity
/// floor semantics as solve_upper_triangular.
ComplexMatrix right_solve_upper(const ComplexMatrix& r, const ComplexMatrix& y,
                                double floor = -1.0);

/// Compensated (Neumaier) sum; error independent of length.
double compensated_sum(const RealVector& v);

}  // namespace detail

}  // namespace bdlawson
