#pragma once

#include <array>
#include <string>
#include <utility>

#include "bdlawson/io.hpp"
#include "bdlawson/lawson.hpp"

namespace bdlawson::experiments {

/// A ready-to-solve desk-scale study: data plus the solver configuration.
struct Problem {
  SampleSet samples;
  InterpolationData interp;
  LawsonConfig config;
};

/// |x| on 20000 equispaced nodes of [-1, 1], no constraints, type (n, n).
Problem abs_x_problem(Index n, Index m = 20000);

/// Reference maximum errors for the |x| study, (n, e) for n = 4, 8, ..., 40.
extern const std::array<std::pair<int, double>, 10> abs_x_reference;

/// Two-bump function (inverse sqrt + Runge bump) on [-1, 1], m = 20000 with
/// the nodes -1, 0, 1 moved into interpolation constraints y = f(t), n = 6.
Problem example2_problem();

/// cos(2 pi x) on [0, 1], m = 2000, constraints xi(-1) = xi(-0.7) =
/// xi(-0.4) = 1 outside the sample interval, n = 8.
Problem example3_problem();

/// Discontinuous 1 - sin(pi x)/2 on the open grid x_j = j/(m+1), m = 2000,
/// constraints xi(0) = xi(1) = 0, n = 6.
Problem example4_problem();

/// Sign function on E (arc near -3) versus F (unit circle), n = 15; the
/// constrained variant pins xi = -1 at the two endpoints of E.
Problem example6_problem(bool with_interpolation);

/// Runs one named study and writes its bundle(s) under out_dir. Names:
/// abs_x_table, example2, example3_cos, example4_discontinuous,
/// example6_sign. Returns 0 when every solve ended converged or at the
/// iteration cap, 3 when any solve degenerated, throws ArgumentError for an
/// unknown name.
int run_experiment(const std::string& name, const std::string& out_dir);

}  // namespace bdlawson::experiments
