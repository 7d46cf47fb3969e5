#pragma once

#include <optional>
#include <vector>

#include "bdlawson/barycentric.hpp"
#include "bdlawson/diagnostics.hpp"
#include "bdlawson/dual.hpp"

namespace bdlawson {

enum class SupportStrategy { aaa_greedy, uniform_subset, explicit_nodes };

struct LawsonConfig {
  Index degree_n = 0;
  double rho = 1.0;    // Lawson exponent, in (0, 1]
  double eps_r = 1e-10;  // relative strong-duality stopping tolerance
  Index k_max = 40;
  SupportStrategy support_strategy = SupportStrategy::aaa_greedy;
  double perturbation_scale = 0.0;  // <= 0 selects the default 1/(10 m)
  bool adaptive_rho = false;
  double w_floor = 1e-15;
  double rank_floor = 1e-14;
  double extreme_threshold = 1e-2;
  ComplexVector explicit_support;  // free nodes for SupportStrategy::explicit_nodes
};

enum class TerminationReason { converged, max_iterations, degenerate_dual, conditioning_failure };

struct IterationRecord {
  Index k = 0;
  double d = 0.0;          // dual value
  double e = 0.0;          // max sample residual
  double gap = 0.0;        // |(sqrt(d) - e) / e|
  Index active_weights = 0;  // count above w_floor
  double sigma_gap = 0.0;
};

struct IterationTrace {
  std::vector<IterationRecord> records;  // at most k_max + 1 entries
  TerminationReason termination = TerminationReason::max_iterations;
  Index best_index = -1;  // record with the smallest e; -1 when no records
};

struct SolveResult {
  BarycentricRational rational;  // last iterate
  IterationTrace trace;
  RealVector final_weights;  // weights of the last recorded evaluation
  std::optional<DualEvaluation> final_dual;
  std::optional<ErrorReport> final_report;
  std::optional<DualityCertificate> certificate;
};

/// Support-node selection. aaa_greedy runs the greedy interpolation loop
/// (unit-weight Loewner fits, argmax-residual picks, first max wins) for
/// n+1-ell steps; uniform_subset takes index-equispaced sample nodes;
/// explicit_nodes uses config.explicit_support verbatim. Greedy and uniform
/// picks are shifted right by the perturbation so support nodes never sit on
/// samples; a collision retries with the perturbation doubled, up to three
/// times, before giving up.
SupportPoints select_support_points(const SampleSet& samples,
                                    const InterpolationData& interp,
                                    const LawsonConfig& config);

/// Uniform simplex point; the last entry absorbs the rounding residue so the
/// sum is exactly 1.
WeightVector initialize_weights(Index m);

/// Multiplicative reweighting w_j <- w_j r_j^rho followed by exact
/// renormalization. Returns nothing when every active numerator vanishes,
/// which signals exact-fit termination to the driver.
std::optional<WeightVector> lawson_update(const WeightVector& w, const RealVector& residuals,
                                          double rho);

/// The full iteration: select support, build the Cauchy basis, iterate dual
/// evaluation and reweighting until the duality gap closes, the dual
/// degenerates, the residuals vanish, or k_max is reached. The trace records
/// one row per accepted dual evaluation; with adaptive_rho, an evaluation
/// whose d drops below the previous one by more than 1e-14 is discarded, rho
/// is halved (not past 2^-10 of its initial value), and the weight update is
/// redone from the previous iterate.
SolveResult solve(const SampleSet& samples, const InterpolationData& interp,
                  const LawsonConfig& config);

}  // namespace bdlawson
