#include "bdlawson/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <vector>

#include "bdlawson/errors.hpp"

namespace bdlawson::experiments {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Grid nodes, minus any that coincide exactly with a constraint node; the
// basis requires X and T disjoint and the studies place constraints on the
// grid endpoints on purpose.
SampleSet drop_constrained_nodes(const ComplexVector& x, const ComplexVector& f,
                                 const ComplexVector& t) {
  std::vector<Index> keep;
  keep.reserve(x.size());
  for (Index j = 0; j < x.size(); ++j) {
    bool hit = false;
    for (Index i = 0; i < t.size(); ++i) hit = hit || (x[j] == t[i]);
    if (!hit) keep.push_back(j);
  }
  ComplexVector xk(static_cast<Index>(keep.size())), fk(static_cast<Index>(keep.size()));
  for (Index j = 0; j < static_cast<Index>(keep.size()); ++j) {
    xk[j] = x[keep[j]];
    fk[j] = f[keep[j]];
  }
  return SampleSet(std::move(xk), std::move(fk));
}

LawsonConfig forty_iterations(Index n) {
  LawsonConfig config;
  config.degree_n = n;
  config.rho = 1.0;
  config.k_max = 40;
  config.support_strategy = SupportStrategy::aaa_greedy;
  return config;
}

int run_single(const Problem& problem, const std::string& dir) {
  SolveResult result = solve(problem.samples, problem.interp, problem.config);
  BundleOptions opts;
  opts.extreme_threshold = problem.config.extreme_threshold;
  write_result_bundle(dir, result, problem.samples, opts);
  switch (result.trace.termination) {
    case TerminationReason::converged:
    case TerminationReason::max_iterations:
      return 0;
    default:
      return 3;
  }
}

int run_abs_x_table(const std::string& out_dir) {
  struct Row {
    int n;
    double computed;
    double reference;
  };
  std::vector<std::future<double>> futures;
  for (const auto& [n, ref] : abs_x_reference) {
    futures.push_back(std::async(std::launch::async, [n = n]() {
      Problem problem = abs_x_problem(n);
      SolveResult result = solve(problem.samples, problem.interp, problem.config);
      if (result.trace.records.empty()) return std::numeric_limits<double>::quiet_NaN();
      return result.trace.records.back().e;
    }));
  }
  std::vector<Row> rows;
  for (size_t i = 0; i < futures.size(); ++i)
    rows.push_back({abs_x_reference[i].first, futures[i].get(), abs_x_reference[i].second});

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::ofstream csv(fs::path(out_dir) / "table.csv", std::ios::binary);
  csv << "n,computed_e,reference_e,relative_difference\n";
  for (const Row& row : rows)
    csv << row.n << ',' << format_number(row.computed) << ',' << format_number(row.reference)
        << ',' << format_number(std::abs(row.computed - row.reference) / row.reference)
        << '\n';
  return 0;
}

}  // namespace

const std::array<std::pair<int, double>, 10> abs_x_reference = {{
    {4, 8.5506e-03},
    {8, 7.4051e-04},
    {12, 1.3342e-04},
    {16, 1.7130e-05},
    {20, 5.8606e-06},
    {24, 3.9164e-07},
    {28, 5.1226e-08},
    {32, 6.2480e-09},
    {36, 7.3968e-10},
    {40, 1.0765e-10},
}};

Problem abs_x_problem(Index n, Index m) {
  ComplexVector x(m), f(m);
  for (Index j = 0; j < m; ++j) {
    const double v = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(m - 1);
    x[j] = Complex(v, 0.0);
    f[j] = Complex(std::abs(v), 0.0);
  }
  return Problem{SampleSet(std::move(x), std::move(f)), InterpolationData{},
                 forty_iterations(n)};
}

Problem example2_problem() {
  auto f2 = [](double v) {
    return 1.0 / std::sqrt(1.0 + 100.0 * (v - 0.5) * (v - 0.5)) +
           1.0 / (1.0 + 100.0 * (v + 0.5) * (v + 0.5));
  };
  const Index m = 20000;
  ComplexVector x(m), f(m);
  for (Index j = 0; j < m; ++j) {
    const double v = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(m - 1);
    x[j] = Complex(v, 0.0);
    f[j] = Complex(f2(v), 0.0);
  }
  ComplexVector t(3), y(3);
  t << Complex(-1.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0);
  for (Index j = 0; j < 3; ++j) y[j] = Complex(f2(t[j].real()), 0.0);
  return Problem{drop_constrained_nodes(x, f, t), InterpolationData(std::move(t), std::move(y)),
                 forty_iterations(6)};
}

Problem example3_problem() {
  const Index m = 2000;
  ComplexVector x(m), f(m);
  for (Index j = 0; j < m; ++j) {
    const double v = static_cast<double>(j) / static_cast<double>(m - 1);
    x[j] = Complex(v, 0.0);
    f[j] = Complex(std::cos(2.0 * kPi * v), 0.0);
  }
  ComplexVector t(3);
  t << Complex(-1.0, 0.0), Complex(-0.7, 0.0), Complex(-0.4, 0.0);
  ComplexVector y = ComplexVector::Ones(3);
  return Problem{SampleSet(std::move(x), std::move(f)),
                 InterpolationData(std::move(t), std::move(y)), forty_iterations(8)};
}

Problem example4_problem() {
  const Index m = 2000;
  ComplexVector x(m), f(m);
  for (Index j = 0; j < m; ++j) {
    const double v = static_cast<double>(j + 1) / static_cast<double>(m + 1);
    x[j] = Complex(v, 0.0);
    f[j] = Complex(1.0 - 0.5 * std::sin(kPi * v), 0.0);
  }
  ComplexVector t(2), y(2);
  t << Complex(0.0, 0.0), Complex(1.0, 0.0);
  y << Complex(0.0, 0.0), Complex(0.0, 0.0);
  return Problem{SampleSet(std::move(x), std::move(f)),
                 InterpolationData(std::move(t), std::move(y)), forty_iterations(6)};
}

Problem example6_problem(bool with_interpolation) {
  ComplexVector e_arc(201);
  for (Index j = 0; j <= 200; ++j)
    e_arc[j] = Complex(-3.0, std::cos(static_cast<double>(j) * kPi / 200.0));
  ComplexVector circle(2000);
  for (Index k = 0; k < 2000; ++k) {
    const double phi = 2.0 * kPi * static_cast<double>(k) / 2000.0;
    circle[k] = Complex(std::cos(phi), std::sin(phi));
  }

  ComplexVector x(2201), f(2201);
  for (Index j = 0; j < 201; ++j) {
    x[j] = e_arc[j];
    f[j] = Complex(-1.0, 0.0);
  }
  for (Index k = 0; k < 2000; ++k) {
    x[201 + k] = circle[k];
    f[201 + k] = Complex(1.0, 0.0);
  }

  if (!with_interpolation)
    return Problem{SampleSet(std::move(x), std::move(f)), InterpolationData{},
                   forty_iterations(15)};

  ComplexVector t(2), y(2);
  t << e_arc[0], e_arc[200];  // the two endpoints of the arc
  y << Complex(-1.0, 0.0), Complex(-1.0, 0.0);
  return Problem{drop_constrained_nodes(x, f, t), InterpolationData(std::move(t), std::move(y)),
                 forty_iterations(15)};
}

int run_experiment(const std::string& name, const std::string& out_dir) {
  namespace fs = std::filesystem;
  if (name == "abs_x_table") return run_abs_x_table(out_dir);
  if (name == "example2") return run_single(example2_problem(), out_dir);
  if (name == "example3_cos") return run_single(example3_problem(), out_dir);
  if (name == "example4_discontinuous") return run_single(example4_problem(), out_dir);
  if (name == "example6_sign") {
    const int free_code =
        run_single(example6_problem(false), (fs::path(out_dir) / "free").string());
    const int pinned_code =
        run_single(example6_problem(true), (fs::path(out_dir) / "constrained").string());
    return std::max(free_code, pinned_code);
  }
  throw ArgumentError("unknown experiment: " + name);
}

}  // namespace bdlawson::experiments
