#pragma once

#include <string>

#include "bdlawson/barycentric.hpp"
#include "bdlawson/lawson.hpp"

namespace bdlawson {

/// %.17g rendering; every number in the artifact files goes through this.
std::string format_number(double v);

/// CSV loaders. A first line whose fields are not all numeric is treated as
/// a header and skipped; blank lines and lines starting with '#' are
/// ignored. Malformed rows, wrong column counts, duplicate nodes, and
/// (for constraints) collisions with sample nodes raise ParseError carrying
/// the 1-based file line.
SampleSet load_samples_csv(const std::string& path);
InterpolationData load_interp_csv(const std::string& path, const SampleSet& samples);
ComplexVector load_points_csv(const std::string& path);

struct BundleOptions {
  double extreme_threshold = 1e-2;
  bool write_meta = true;  // run_meta.json sidecar, the only nondeterministic file
};

/// Writes rational.json, trace.csv (k,d,e,gap,active_weights),
/// error_curve.csv (x_re,x_im,residual), extreme_points.csv
/// (index,x_re,x_im,residual), certificate.json, and optionally
/// run_meta.json into dir (created if missing). All files except
/// run_meta.json are deterministic functions of the inputs.
void write_result_bundle(const std::string& dir, const SolveResult& result,
                         const SampleSet& samples, const BundleOptions& opts = {});

/// Exit-code mapping shared by the CLI and the experiment runners:
/// converged 0, max_iterations 2, degenerate_dual / conditioning_failure 3.
int termination_exit_code(TerminationReason reason);

}  // namespace bdlawson
