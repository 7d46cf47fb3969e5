#pragma once

#include <optional>
#include <vector>

#include "bdlawson/barycentric.hpp"
#include "bdlawson/dual.hpp"

namespace bdlawson {

/// Pointwise residuals of an approximant against sample data.
struct ErrorReport {
  RealVector residuals;  // |f_j - xi(x_j)|
  double max_error = 0.0;
  std::vector<Index> argmax_indices;  // every j with residuals[j] == max_error
  /// |xi(t_j + 1e-9 (1+|t_j|)) - y_j| per constraint: probing beside the node
  /// instead of on it detects a broken (beta_j ~ 0) constraint that the exact
  /// limit value would mask.
  RealVector interpolation_residuals;
};

ErrorReport error_report(const BarycentricRational& r, const SampleSet& samples,
                         const InterpolationData& interp);

/// Samples whose residual reaches (1 - threshold) * max_error.
struct ExtremePointSet {
  std::vector<Index> indices;
  double threshold = 0.0;
  Index cardinality() const { return static_cast<Index>(indices.size()); }
};

/// threshold must lie in (0, 1). With cluster_collapse, runs of adjacent
/// indices are collapsed to their residual-maximal representative; that is
/// meaningful on ordered real sample grids, where one analog extremum
/// otherwise counts as several neighboring grid hits.
ExtremePointSet extreme_points(const ErrorReport& report, double threshold,
                               bool cluster_collapse = true);

enum class CertificateVerdict { certified, gap_open, degenerate };

struct DualityCertificate {
  double dual_value = 0.0;    // d
  double primal_value = 0.0;  // e(xi)^2
  double gap = 0.0;           // |(sqrt(d) - e) / e|
  double slackness = 0.0;     // max_j w_j |e - residual_j|
  std::optional<double> psd_margin;
  CertificateVerdict verdict = CertificateVerdict::gap_open;
};

/// certified requires gap <= eps_r, slackness <= 1e-6 e, and no
/// rank-deficiency flag on the dual evaluation; a set flag makes the verdict
/// degenerate regardless of the gap.
DualityCertificate duality_certificate(const DualEvaluation& dual_eval,
                                       const ErrorReport& report, const WeightVector& w,
                                       double eps_r = 1e-10);

/// Proved lower bound on the extreme-point count, plus the sharper count
/// observed empirically (reported only, never asserted).
struct ExtremeCountCheck {
  bool satisfied = false;
  Index cardinality = 0;
  Index required_minimum = 0;     // n + 2 - ell
  Index empirical_reference = 0;  // 2n + 2 - ell
};

ExtremeCountCheck theorem_bound_check(const ExtremePointSet& set, Index n, Index ell);

}  // namespace bdlawson
