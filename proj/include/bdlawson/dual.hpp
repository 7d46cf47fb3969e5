#pragma once

#include <optional>

#include "bdlawson/barycentric.hpp"
#include "bdlawson/linalg.hpp"

namespace bdlawson {

/// Cauchy basis matrices over samples x_j and support nodes t_i:
///   Cq[j,i] = 1/(x_j - t_i)
///   Cp[j,i] = y_i/(x_j - t_i) for i < ell, and 1/(x_j - t_i) otherwise.
/// Columns are ordered interpolation nodes first, then free nodes.
struct BasisMatrices {
  ComplexMatrix cp;
  ComplexMatrix cq;
  SupportPoints support;
  ComplexVector interp_values;

  Index ell() const { return support.ell(); }
  Index count() const { return support.count(); }
  Index rows() const { return cq.rows(); }
};

BasisMatrices build_basis(const ComplexVector& sample_nodes, const SupportPoints& support,
                          const ComplexVector& interp_values);

/// Nonnegative weights summing to 1 (validated with compensated summation).
struct WeightVector {
  RealVector w;

  explicit WeightVector(RealVector w_in);
  Index size() const { return w.size(); }
  static WeightVector uniform(Index m);
};

/// Which algebraic route computes the weighted least-squares reduction.
/// automatic dispatches to the streamlined forms at ell = 0 and ell = n+1;
/// general forces the block formulation everywhere (used by consistency
/// tests); special forces the streamlined form (extremes only).
enum class DualPath { automatic, general, special };

struct DualSolverOptions {
  double w_floor = 1e-15;
  double rank_floor = 1e-14;
  DualPath path = DualPath::automatic;
  /// Fall back to the dense-pencil route when R_{p,2} is numerically singular.
  bool allow_oracle_fallback = true;
};

/// Value and minimizer of the weighted dual problem
///   d(w) = min { ||sqrt(W) [Cp, -F Cq] N c||^2 : ||sqrt(W) [0, Cq] N c|| = 1 }
/// where N ties the numerator and denominator coefficients together on the
/// interpolation nodes. c is returned normalized with the largest-modulus
/// entry made real positive.
struct DualEvaluation {
  double d = 0.0;
  ComplexVector c;
  BarycentricRational rational;
  ComplexVector p_at_samples;
  ComplexVector q_at_samples;
  double sigma_gap = 0.0;
  double sigma_max = 0.0;
  /// sigma_min <= rank_floor * sigma_max: the dual optimum collapsed to zero
  /// (exactly representable data, or identically zero data); strong-duality
  /// certification is unavailable in this state.
  bool rank_deficient = false;
  bool used_oracle_fallback = false;
  std::optional<double> psd_margin;     // pencil route: lambda_min(A^H A - d B^H B)
  std::optional<double> psd_reference;  // pencil route: ||A^H A||_2
};

/// Fast path: two thin QRs, one projected small SVD, two triangular solves.
/// Requires at least n+1 weights above w_floor. A numerically singular R_q
/// raises ConditioningError; a singular R_{p,2} falls back to the oracle.
DualEvaluation dual_value_fast(const BasisMatrices& basis, const ComplexVector& f,
                               const WeightVector& w, const DualSolverOptions& opts = {});

/// Brute-force reference: dense Hermitian pencil (A^H A, B^H B) smallest
/// eigenpair, with a positive-semidefiniteness certificate for
/// A^H A - d B^H B. Testing and fallback use only.
DualEvaluation dual_value_oracle(const BasisMatrices& basis, const ComplexVector& f,
                                 const WeightVector& w, const DualSolverOptions& opts = {});

/// Apply the coefficient-coupling constraint to a block matrix
/// raw = [A_1 A_2 A_3 A_4] (columns split at ell and n+1+ell): the result is
/// [A_1 + A_3, A_2, A_4], i.e. raw times the selection matrix, without ever
/// materializing that matrix.
ComplexMatrix constraint_matrix_apply(const ComplexMatrix& raw, Index ell);

}  // namespace bdlawson
