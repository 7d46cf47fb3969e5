#include "bdlawson/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bdlawson/errors.hpp"

namespace bdlawson {

ErrorReport error_report(const BarycentricRational& r, const SampleSet& samples,
                         const InterpolationData& interp) {
  ErrorReport report;
  const Index m = samples.nodes.size();
  ComplexVector values = evaluate_on_samples(r, samples.nodes);
  report.residuals.resize(m);
  for (Index j = 0; j < m; ++j)
    report.residuals[j] = std::abs(samples.values[j] - values[j]);
  report.max_error = (m > 0) ? report.residuals.maxCoeff() : 0.0;
  for (Index j = 0; j < m; ++j)
    if (report.residuals[j] == report.max_error) report.argmax_indices.push_back(j);

  const Index ell = interp.nodes.size();
  report.interpolation_residuals.resize(ell);
  for (Index j = 0; j < ell; ++j) {
    const Complex probe =
        interp.nodes[j] + Complex(1e-9 * (1.0 + std::abs(interp.nodes[j])), 0.0);
    report.interpolation_residuals[j] = std::abs(r.evaluate(probe) - interp.values[j]);
  }
  return report;
}

ExtremePointSet extreme_points(const ErrorReport& report, double threshold,
                               bool cluster_collapse) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw ArgumentError("extreme-point threshold must lie in (0, 1)");

  ExtremePointSet set;
  set.threshold = threshold;
  const double cut = (1.0 - threshold) * report.max_error;
  std::vector<Index> hits;
  for (Index j = 0; j < report.residuals.size(); ++j)
    if (report.residuals[j] >= cut) hits.push_back(j);

  if (!cluster_collapse) {
    set.indices = std::move(hits);
    return set;
  }
  for (size_t i = 0; i < hits.size();) {
    size_t end = i + 1;
    while (end < hits.size() && hits[end] == hits[end - 1] + 1) ++end;
    Index rep = hits[i];
    for (size_t s = i + 1; s < end; ++s)
      if (report.residuals[hits[s]] > report.residuals[rep]) rep = hits[s];
    set.indices.push_back(rep);
    i = end;
  }
  return set;
}

DualityCertificate duality_certificate(const DualEvaluation& dual_eval,
                                       const ErrorReport& report, const WeightVector& w,
                                       double eps_r) {
  if (w.size() != report.residuals.size())
    throw ArgumentError("weight and residual lengths differ");
  if (!(eps_r > 0.0)) throw ArgumentError("certification tolerance must be positive");

  DualityCertificate cert;
  cert.dual_value = dual_eval.d;
  const double e = report.max_error;
  cert.primal_value = e * e;
  const double root = std::sqrt(std::max(dual_eval.d, 0.0));
  if (e > 0.0) {
    cert.gap = std::abs(root - e) / e;
  } else {
    cert.gap = (root <= 1e-15) ? 0.0 : std::numeric_limits<double>::infinity();
  }
  double slack = 0.0;
  for (Index j = 0; j < w.size(); ++j)
    slack = std::max(slack, w.w[j] * std::abs(e - report.residuals[j]));
  cert.slackness = slack;
  cert.psd_margin = dual_eval.psd_margin;

  if (dual_eval.rank_deficient) {
    cert.verdict = CertificateVerdict::degenerate;
  } else if (cert.gap <= eps_r && cert.slackness <= 1e-6 * e) {
    cert.verdict = CertificateVerdict::certified;
  } else {
    cert.verdict = CertificateVerdict::gap_open;
  }
  return cert;
}

ExtremeCountCheck theorem_bound_check(const ExtremePointSet& set, Index n, Index ell) {
  if (n < 0 || ell < 0 || ell > n + 1)
    throw ArgumentError("degree and constraint count are inconsistent");
  ExtremeCountCheck check;
  check.cardinality = set.cardinality();
  check.required_minimum = n + 2 - ell;
  check.empirical_reference = 2 * n + 2 - ell;
  check.satisfied = check.cardinality >= check.required_minimum;
  return check;
}

}  // namespace bdlawson
