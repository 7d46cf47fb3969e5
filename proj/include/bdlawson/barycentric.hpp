#pragma once

#include <string>

#include "bdlawson/errors.hpp"
#include "bdlawson/types.hpp"

namespace bdlawson {

/// Discrete sample set: pairwise-distinct nodes x_j with data values f_j.
struct SampleSet {
  ComplexVector nodes;
  ComplexVector values;

  SampleSet(ComplexVector nodes_in, ComplexVector values_in);
  Index size() const { return nodes.size(); }
};

/// Interpolation constraints (t_j, y_j). Nodes are pairwise distinct and must
/// stay disjoint from the sample nodes; the joint check runs where both sets
/// are known (validate_against, called by the solver and the CLI loader).
struct InterpolationData {
  ComplexVector nodes;
  ComplexVector values;

  InterpolationData() : nodes(0), values(0) {}
  InterpolationData(ComplexVector nodes_in, ComplexVector values_in);
  Index size() const { return nodes.size(); }
  void validate_against(const SampleSet& samples) const;
};

/// Support points: ell interpolation nodes followed by free nodes, n+1 in
/// total, pairwise distinct.
struct SupportPoints {
  ComplexVector interp_nodes;
  ComplexVector free_nodes;

  SupportPoints() : interp_nodes(0), free_nodes(0) {}
  SupportPoints(ComplexVector interp, ComplexVector free);
  Index ell() const { return interp_nodes.size(); }
  Index count() const { return interp_nodes.size() + free_nodes.size(); }
  int degree() const { return static_cast<int>(count()) - 1; }
  Complex node(Index j) const;
  ComplexVector all_nodes() const;
  void validate_disjoint_from(const ComplexVector& sample_nodes) const;
};

/// Rational function in barycentric form over n+1 support points t_j:
///
///   p(x) = sum_{j<ell} beta_j y_j / (x - t_j) + sum_{j>=ell} alpha_j / (x - t_j)
///   q(x) = sum_j beta_j / (x - t_j)
///
/// With beta_j != 0 the value at an interpolation node is y_j by construction,
/// independent of the remaining coefficients. Coefficients are stored
/// unnormalized; every evaluation is invariant under joint scaling.
class BarycentricRational {
 public:
  BarycentricRational() = default;
  BarycentricRational(SupportPoints support, ComplexVector interp_values, ComplexVector alpha,
                      ComplexVector beta);

  const SupportPoints& support() const { return support_; }
  const ComplexVector& interp_values() const { return interp_values_; }
  const ComplexVector& alpha() const { return alpha_; }
  const ComplexVector& beta() const { return beta_; }
  Index ell() const { return support_.ell(); }
  Index count() const { return support_.count(); }
  int degree() const { return support_.degree(); }

  /// beta_j y_j for interpolation nodes, alpha for free nodes.
  Complex numerator_coefficient(Index j) const;

  /// All interpolation-node denominator coefficients clear the validity
  /// threshold (default 1e-12 * max_k |beta_k|), so the constraints hold.
  bool interpolation_valid(double threshold = -1.0) const;

  /// Evaluate at one point. Within 1e-13*(1+|t_j|) of a support node the
  /// limit value is returned (y_j, or alpha_j/beta_j at a free node); at such
  /// a node with beta_j exactly zero the node is excluded from the sums
  /// instead, which may legitimately produce a huge value near a pole.
  /// An exactly vanishing denominator raises PoleError.
  Complex evaluate(Complex x) const;

  std::string to_json() const;
  static BarycentricRational from_json(const std::string& text);

 private:
  SupportPoints support_;
  ComplexVector interp_values_;
  ComplexVector alpha_;
  ComplexVector beta_;
};

/// result[j] = r.evaluate(x[j]); PoleError is re-thrown with the sample index.
ComplexVector evaluate_on_samples(const BarycentricRational& r, const ComplexVector& x);

/// Build the rational from the stacked solution vector c = (c1, c2, c3):
/// beta_j = c1_j and alpha_j = beta_j (implicitly, via y_j) for j < ell,
/// alpha = c2 and beta = c3 on the free nodes. Zero betas are permitted here;
/// validity is checked by evaluate / diagnostics.
BarycentricRational assemble_from_coefficients(const SupportPoints& support,
                                               const ComplexVector& interp_values,
                                               const ComplexVector& c);

namespace detail {

/// Shortest text that round-trips the double exactly (17 significant digits).
std::string format_double(double v);
std::string format_complex_pair(Complex v);
void check_pairwise_distinct(const ComplexVector& nodes, const char* what);

}  // namespace detail

}  // namespace bdlawson
