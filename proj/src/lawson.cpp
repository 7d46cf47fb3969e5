#include "bdlawson/lawson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "bdlawson/errors.hpp"
#include "bdlawson/linalg.hpp"

namespace bdlawson {

namespace {

void validate_config(const LawsonConfig& config, Index m, Index ell) {
  if (config.degree_n < 0) throw ArgumentError("degree must be nonnegative");
  if (ell > config.degree_n + 1)
    throw ArgumentError("more interpolation constraints than support nodes");
  if (!(config.rho > 0.0 && config.rho <= 1.0))
    throw ArgumentError("Lawson exponent must lie in (0, 1]");
  if (!(config.eps_r > 0.0)) throw ArgumentError("stopping tolerance must be positive");
  if (config.k_max < 1) throw ArgumentError("iteration limit must be at least 1");
  if (m < 2 * (config.degree_n + 1) - ell) {
    std::ostringstream msg;
    msg << "sample count must satisfy m >= 2n+2-l: need at least "
        << 2 * (config.degree_n + 1) - ell << " samples for degree " << config.degree_n
        << " with " << ell << " constraints, got " << m;
    throw ArgumentError(msg.str());
  }
}

// Greedy interpolation-node selection: start from the mean, repeatedly take
// the sample with the largest current residual (first max wins), and refit
// a unit-weight interpolant through the chosen nodes via the smallest right
// singular vector of the Loewner matrix over the remaining rows. The fit
// after the final pick is skipped; only the picks matter here.
std::vector<Index> greedy_pick_indices(const ComplexVector& x, const ComplexVector& f,
                                       const ComplexVector& excluded, Index count) {
  const Index m = x.size();
  std::vector<char> blocked(m, 0);
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < excluded.size(); ++i)
      if (x[j] == excluded[i]) blocked[j] = 1;

  const Complex mean = f.mean();
  RealVector resid(m);
  for (Index j = 0; j < m; ++j) resid[j] = std::abs(f[j] - mean);

  std::vector<Index> picks;
  picks.reserve(count);
  for (Index step = 0; step < count; ++step) {
    Index best = -1;
    double best_value = -1.0;
    for (Index j = 0; j < m; ++j) {
      if (blocked[j]) continue;
      if (resid[j] > best_value) {
        best_value = resid[j];
        best = j;
      }
    }
    if (best < 0) throw ArgumentError("not enough sample nodes to select support from");
    blocked[best] = 1;
    picks.push_back(best);
    if (step + 1 == count) break;

    const Index chosen = static_cast<Index>(picks.size());
    std::vector<Index> rows;
    rows.reserve(m - chosen);
    for (Index j = 0; j < m; ++j) {
      bool is_pick = false;
      for (Index p : picks) is_pick = is_pick || (j == p);
      if (!is_pick) rows.push_back(j);
    }
    ComplexMatrix loewner(static_cast<Index>(rows.size()), chosen);
    for (Index r = 0; r < static_cast<Index>(rows.size()); ++r)
      for (Index i = 0; i < chosen; ++i)
        loewner(r, i) = (f[rows[r]] - f[picks[i]]) / (x[rows[r]] - x[picks[i]]);
    const ComplexVector beta = smallest_singular_pair(loewner).right_vector;

    for (Index r = 0; r < static_cast<Index>(rows.size()); ++r) {
      Complex num(0.0, 0.0), den(0.0, 0.0);
      for (Index i = 0; i < chosen; ++i) {
        const Complex inv = Complex(1.0, 0.0) / (x[rows[r]] - x[picks[i]]);
        num += beta[i] * f[picks[i]] * inv;
        den += beta[i] * inv;
      }
      resid[rows[r]] = (den == Complex(0.0, 0.0))
                           ? std::numeric_limits<double>::infinity()
                           : std::abs(f[rows[r]] - num / den);
    }
    for (Index p : picks) resid[p] = 0.0;
  }
  return picks;
}

std::vector<Index> uniform_pick_indices(Index m, Index count) {
  std::vector<Index> picks(count);
  for (Index j = 0; j < count; ++j) picks[j] = ((2 * j + 1) * m) / (2 * count);
  return picks;
}

}  // namespace

SupportPoints select_support_points(const SampleSet& samples,
                                    const InterpolationData& interp,
                                    const LawsonConfig& config) {
  const Index m = samples.size();
  const Index ell = interp.size();
  const Index nfree = config.degree_n + 1 - ell;
  if (nfree < 0) throw ArgumentError("more interpolation constraints than support nodes");
  if (nfree == 0) {
    SupportPoints support(interp.nodes, ComplexVector(0));
    support.validate_disjoint_from(samples.nodes);
    return support;
  }
  if (m < nfree) throw ArgumentError("not enough sample nodes to select support from");

  if (config.support_strategy == SupportStrategy::explicit_nodes) {
    if (config.explicit_support.size() != nfree) {
      std::ostringstream msg;
      msg << "need " << nfree << " explicit support nodes, got "
          << config.explicit_support.size();
      throw ArgumentError(msg.str());
    }
    SupportPoints support(interp.nodes, config.explicit_support);
    support.validate_disjoint_from(samples.nodes);
    return support;
  }

  std::vector<Index> picks =
      (config.support_strategy == SupportStrategy::aaa_greedy)
          ? greedy_pick_indices(samples.nodes, samples.values, interp.nodes, nfree)
          : uniform_pick_indices(m, nfree);

  const double base = (config.perturbation_scale > 0.0)
                          ? config.perturbation_scale
                          : 1.0 / (10.0 * static_cast<double>(m));
  double shift = base;
  for (int attempt = 0; attempt < 4; ++attempt, shift *= 2.0) {
    ComplexVector free_nodes(nfree);
    for (Index j = 0; j < nfree; ++j)
      free_nodes[j] = samples.nodes[picks[j]] + Complex(shift, 0.0);
    try {
      SupportPoints support(interp.nodes, free_nodes);
      support.validate_disjoint_from(samples.nodes);
      return support;
    } catch (const ArgumentError&) {
      // collision with a sample or another support node; widen and retry
    }
  }
  throw ArgumentError("support-node perturbation kept colliding after 3 retries");
}

WeightVector initialize_weights(Index m) { return WeightVector::uniform(m); }

std::optional<WeightVector> lawson_update(const WeightVector& w,
                                          const RealVector& residuals, double rho) {
  if (residuals.size() != w.size())
    throw ArgumentError("weight and residual lengths differ");
  if (!(rho > 0.0 && rho <= 1.0))
    throw ArgumentError("Lawson exponent must lie in (0, 1]");

  const Index m = w.size();
  RealVector next(m);
  for (Index j = 0; j < m; ++j) {
    const double r = residuals[j];
    if (!(r >= 0.0)) throw ArgumentError("residuals must be nonnegative");
    next[j] = (rho == 1.0) ? w.w[j] * r : w.w[j] * std::pow(r, rho);
  }
  const double total = detail::compensated_sum(next);
  if (total == 0.0) return std::nullopt;

  next /= total;
  Index imax = 0;
  next.maxCoeff(&imax);
  RealVector rest = next;
  rest[imax] = 0.0;
  next[imax] = 1.0 - detail::compensated_sum(rest);
  return WeightVector(std::move(next));
}

SolveResult solve(const SampleSet& samples, const InterpolationData& interp,
                  const LawsonConfig& config) {
  const Index m = samples.size();
  const Index ell = interp.size();
  validate_config(config, m, ell);
  interp.validate_against(samples);

  SupportPoints support = select_support_points(samples, interp, config);
  BasisMatrices basis = build_basis(samples.nodes, support, interp.values);

  DualSolverOptions dual_opts;
  dual_opts.w_floor = config.w_floor;
  dual_opts.rank_floor = config.rank_floor;

  const double fmax = (m > 0) ? samples.values.cwiseAbs().maxCoeff() : 0.0;
  const double exact_fit_tol = 1e-14 * (1.0 + fmax);
  const double rho_floor = config.rho * std::pow(2.0, -10);

  SolveResult result;
  result.trace.termination = TerminationReason::max_iterations;

  WeightVector w = initialize_weights(m);
  double rho = config.rho;

  // State of the previous accepted iteration, for adaptive-rho redo.
  bool have_prev = false;
  RealVector prev_w;
  RealVector prev_residuals;
  double prev_d = 0.0;

  for (Index k = 0; k <= config.k_max;) {
    DualEvaluation ev;
    try {
      ev = dual_value_fast(basis, samples.values, w, dual_opts);
    } catch (const ConditioningError&) {
      result.trace.termination = TerminationReason::conditioning_failure;
      break;
    } catch (const DegeneratePencilError&) {
      result.trace.termination = TerminationReason::degenerate_dual;
      break;
    }

    if (config.adaptive_rho && have_prev && ev.d < prev_d - 1e-14) {
      if (rho <= rho_floor * (1.0 + 1e-12)) {
        // the exponent floor cannot cure the decrease: the dual ascent has
        // stalled, so the recorded sequence stops at the last accepted state
        result.trace.termination = TerminationReason::converged;
        break;
      }
      rho = std::max(0.5 * rho, rho_floor);
      std::optional<WeightVector> redo =
          lawson_update(WeightVector(prev_w), prev_residuals, rho);
      if (!redo) {
        result.trace.termination = TerminationReason::converged;
        break;
      }
      w = std::move(*redo);
      continue;  // nothing recorded; iteration index unchanged
    }

    bool pole_hit = false;
    for (Index j = 0; j < m; ++j)
      pole_hit = pole_hit || (std::abs(ev.q_at_samples[j]) < 1e-300);
    RealVector residuals(m);
    if (!pole_hit) {
      try {
        const ComplexVector values = evaluate_on_samples(ev.rational, samples.nodes);
        for (Index j = 0; j < m; ++j)
          residuals[j] = std::abs(samples.values[j] - values[j]);
      } catch (const PoleError&) {
        pole_hit = true;
      }
    }
    result.rational = ev.rational;
    result.final_weights = w.w;
    result.final_dual = ev;
    if (pole_hit) {
      result.trace.termination = TerminationReason::conditioning_failure;
      break;
    }

    const double e = residuals.maxCoeff();
    const double root = std::sqrt(std::max(ev.d, 0.0));
    double gap;
    if (e > 0.0) {
      gap = std::abs(root - e) / e;
    } else {
      gap = (root <= 1e-15) ? 0.0 : std::numeric_limits<double>::infinity();
    }
    Index active = 0;
    for (Index j = 0; j < m; ++j)
      if (w.w[j] > config.w_floor) ++active;
    result.trace.records.push_back({k, ev.d, e, gap, active, ev.sigma_gap});

    if (ev.rank_deficient) {
      result.trace.termination = TerminationReason::degenerate_dual;
      break;
    }
    if (e <= exact_fit_tol) {
      result.trace.termination = TerminationReason::converged;
      break;
    }
    if (gap < config.eps_r) {
      result.trace.termination = TerminationReason::converged;
      break;
    }
    if (k == config.k_max) {
      result.trace.termination = TerminationReason::max_iterations;
      break;
    }

    prev_w = w.w;
    prev_residuals = residuals;
    prev_d = ev.d;
    have_prev = true;

    std::optional<WeightVector> next = lawson_update(w, residuals, rho);
    if (!next) {
      result.trace.termination = TerminationReason::converged;
      break;
    }
    w = std::move(*next);
    ++k;
  }

  if (result.final_weights.size() == 0) result.final_weights = w.w;
  if (result.final_dual) {
    try {
      ErrorReport report = error_report(result.final_dual->rational, samples, interp);
      result.certificate = duality_certificate(*result.final_dual, report,
                                               WeightVector(result.final_weights),
                                               config.eps_r);
      result.final_report = std::move(report);
    } catch (const PoleError&) {
      // final iterate has a pole on the grid; diagnostics stay empty
    }
  }
  Index best = -1;
  double best_e = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < result.trace.records.size(); ++i) {
    if (result.trace.records[i].e < best_e) {
      best_e = result.trace.records[i].e;
      best = static_cast<Index>(i);
    }
  }
  result.trace.best_index = best;
  return result;
}

}  // namespace bdlawson
