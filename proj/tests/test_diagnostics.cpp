#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "bdlawson/diagnostics.hpp"
#include "bdlawson/dual.hpp"
#include "bdlawson/errors.hpp"
#include "test_support.hpp"

using namespace bdlawson;
using namespace bdlawson::testing;

namespace {

// A degree-1 rational with one interpolation node and one free node,
// together with a grid that samples it exactly.
struct Fixture {
  SampleSet samples;
  InterpolationData interp;
  BarycentricRational rational;
};

// Degree-1 rational with one interpolation constraint xi(2) = 0.5 and one
// free node at 3; the grid on [-1, 1] stays away from its pole at 7/3.
Fixture exact_fixture() {
  ComplexVector t(2);
  t << Complex(2.0, 0.0), Complex(3.0, 0.0);
  SupportPoints support(t.head(1), t.tail(1));
  ComplexVector y(1);
  y << Complex(0.5, 0.0);
  ComplexVector coeff(3);  // (beta_0, alpha_1, beta_1)
  coeff << Complex(1.0, 0.0), Complex(0.75, 0.0), Complex(2.0, 0.0);
  BarycentricRational r = assemble_from_coefficients(support, y, coeff);

  ComplexVector x = real_grid(17, -1.0, 1.0);
  ComplexVector f(17);
  for (Index j = 0; j < 17; ++j) f[j] = r.evaluate(x[j]);
  return Fixture{SampleSet(x, f), InterpolationData(t.head(1), y), r};
}

ErrorReport report_with(RealVector residuals) {
  ErrorReport report;
  report.max_error = residuals.size() ? residuals.maxCoeff() : 0.0;
  for (Index j = 0; j < residuals.size(); ++j)
    if (residuals[j] == report.max_error) report.argmax_indices.push_back(j);
  report.residuals = std::move(residuals);
  return report;
}

}  // namespace

TEST_CASE("error report on an exactly sampled rational is tiny everywhere") {
  Fixture fx = exact_fixture();
  ErrorReport report = error_report(fx.rational, fx.samples, fx.interp);
  const double scale = fx.samples.values.cwiseAbs().maxCoeff();
  REQUIRE(report.residuals.size() == 17);
  CHECK(report.max_error <= 1e-13 * (1.0 + scale));
  for (Index j = 0; j < 17; ++j) CHECK(report.residuals[j] <= 1e-13 * (1.0 + scale));
  REQUIRE(report.interpolation_residuals.size() == 1);
  CHECK(report.interpolation_residuals[0] <= 1e-6 * (1.0 + std::abs(Complex(0.5, 0.0))));
}

TEST_CASE("constant offset makes every sample an argmax") {
  Fixture fx = exact_fixture();
  ComplexVector shifted = fx.samples.values;
  for (Index j = 0; j < shifted.size(); ++j) shifted[j] += Complex(1.0, 0.0);
  SampleSet samples(fx.samples.nodes, shifted);
  ErrorReport report = error_report(fx.rational, samples, fx.interp);
  for (Index j = 0; j < report.residuals.size(); ++j)
    CHECK(report.residuals[j] == doctest::Approx(1.0).epsilon(1e-12));
  // every residual within rounding of the max; argmax keeps only exact ties
  CHECK(report.max_error == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.argmax_indices.size() >= 1);
  for (Index idx : report.argmax_indices)
    CHECK(report.residuals[idx] == report.max_error);
}

TEST_CASE("pole on a sample node propagates as PoleError") {
  ComplexVector t(2);
  t << Complex(0.25, 0.0), Complex(0.75, 0.0);
  SupportPoints support(ComplexVector(0), t);
  // equal betas cancel the denominator exactly at the midpoint x = 0.5
  ComplexVector coeff(4);  // (alpha_0, alpha_1, beta_0, beta_1)
  coeff << Complex(1.0, 0.0), Complex(-1.0, 0.0), Complex(1.0, 0.0), Complex(1.0, 0.0);
  BarycentricRational r = assemble_from_coefficients(support, ComplexVector(0), coeff);
  ComplexVector x(3);
  x << Complex(0.0, 0.0), Complex(0.5, 0.0), Complex(1.0, 0.0);
  ComplexVector f = ComplexVector::Ones(3);
  SampleSet samples(x, f);
  CHECK_THROWS_AS(error_report(r, samples, InterpolationData{}), PoleError);
}

TEST_CASE("extreme points: single strict maximum") {
  RealVector resid(9);
  resid << 0.1, 0.2, 0.1, 0.9, 0.1, 0.2, 0.1, 0.05, 0.1;
  ErrorReport report = report_with(resid);
  ExtremePointSet set = extreme_points(report, 1e-2);
  REQUIRE(set.cardinality() == 1);
  CHECK(set.indices[0] == 3);
}

TEST_CASE("extreme points: adjacent run collapses to its peak") {
  RealVector resid = RealVector::Constant(12, 0.1);
  resid[3] = 0.995;
  resid[4] = 1.0;
  resid[5] = 0.993;
  resid[10] = 0.999;
  ErrorReport report = report_with(resid);

  ExtremePointSet collapsed = extreme_points(report, 1e-2, true);
  REQUIRE(collapsed.cardinality() == 2);
  CHECK(collapsed.indices[0] == 4);
  CHECK(collapsed.indices[1] == 10);

  ExtremePointSet raw = extreme_points(report, 1e-2, false);
  REQUIRE(raw.cardinality() == 4);
  CHECK(raw.indices == std::vector<Index>({3, 4, 5, 10}));
}

TEST_CASE("extreme points: larger threshold admits more samples") {
  std::mt19937_64 rng(411);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RealVector resid(40);
  for (Index j = 0; j < 40; ++j) resid[j] = unif(rng);
  ErrorReport report = report_with(resid);
  Index prev = 0;
  for (double threshold : {1e-3, 1e-2, 1e-1, 0.5, 0.9}) {
    ExtremePointSet set = extreme_points(report, threshold, false);
    CHECK(set.cardinality() >= prev);
    prev = set.cardinality();
  }
}

TEST_CASE("extreme points: threshold outside (0,1) is rejected") {
  ErrorReport report = report_with(RealVector::Ones(3));
  CHECK_THROWS_AS(extreme_points(report, 0.0), ArgumentError);
  CHECK_THROWS_AS(extreme_points(report, 1.0), ArgumentError);
  CHECK_THROWS_AS(extreme_points(report, -0.5), ArgumentError);
}

TEST_CASE("certificate verdicts from synthetic evaluations") {
  WeightVector w = WeightVector::uniform(4);
  DualEvaluation ev;
  ev.rank_deficient = false;

  SUBCASE("exact fit certifies") {
    ev.d = 0.0;
    ErrorReport report = report_with(RealVector::Zero(4));
    DualityCertificate cert = duality_certificate(ev, report, w);
    CHECK(cert.verdict == CertificateVerdict::certified);
    CHECK(cert.gap == 0.0);
    CHECK(cert.slackness == 0.0);
  }
  SUBCASE("tight gap and equal residuals certify") {
    RealVector resid = RealVector::Constant(4, 2.0);
    ev.d = 4.0 * (1.0 - 1e-12);
    DualityCertificate cert = duality_certificate(ev, report_with(resid), w);
    CHECK(cert.verdict == CertificateVerdict::certified);
    CHECK(cert.primal_value == doctest::Approx(4.0));
  }
  SUBCASE("rank flag forces degenerate even with a closed gap") {
    ev.d = 4.0;
    ev.rank_deficient = true;
    DualityCertificate cert = duality_certificate(ev, report_with(RealVector::Constant(4, 2.0)), w);
    CHECK(cert.verdict == CertificateVerdict::degenerate);
  }
  SUBCASE("loose dual value leaves the gap open") {
    ev.d = 1.0;
    DualityCertificate cert = duality_certificate(ev, report_with(RealVector::Constant(4, 2.0)), w);
    CHECK(cert.verdict == CertificateVerdict::gap_open);
    CHECK(cert.gap == doctest::Approx(0.5));
  }
  SUBCASE("uneven residuals leave slackness positive") {
    RealVector resid(4);
    resid << 2.0, 1.0, 2.0, 0.5;
    ev.d = 4.0;
    DualityCertificate cert = duality_certificate(ev, report_with(resid), w);
    CHECK(cert.slackness == doctest::Approx(0.375));
  }
}

TEST_CASE("weak duality between a dual evaluation and its error report") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 4);
    const Index ell = static_cast<Index>(rng() % static_cast<unsigned long>(n + 2));
    const Index m = 2 * (n + 1) - ell + 4 + static_cast<Index>(rng() % 8);

    ComplexVector x = real_grid(m, -1.0, 1.0);
    ComplexVector f(m);
    for (Index j = 0; j < m; ++j) f[j] = random_complex(rng);
    SampleSet samples(x, f);

    ComplexVector all_t(n + 1);
    for (Index j = 0; j < n + 1; ++j)
      all_t[j] = Complex(1.2 + 0.3 * static_cast<double>(j), 0.4);
    SupportPoints support(all_t.head(ell), all_t.tail(n + 1 - ell));
    ComplexVector y(ell);
    for (Index j = 0; j < ell; ++j) y[j] = random_complex(rng);

    BasisMatrices basis = build_basis(samples.nodes, support, y);
    WeightVector w = WeightVector::uniform(m);
    DualEvaluation ev = dual_value_fast(basis, f, w);
    ErrorReport report = error_report(ev.rational, samples, InterpolationData{all_t.head(ell), y});
    CHECK(std::sqrt(std::max(ev.d, 0.0)) <= report.max_error * (1.0 + 1e-10));
  }
}

TEST_CASE("extreme-count check against the proved lower bound") {
  ErrorReport report;

  SUBCASE("eleven extremes at n = 6, ell = 3") {
    ExtremePointSet set;
    set.indices.assign(11, 0);
    for (Index j = 0; j < 11; ++j) set.indices[j] = j * 3;
    ExtremeCountCheck check = theorem_bound_check(set, 6, 3);
    CHECK(check.satisfied);
    CHECK(check.cardinality == 11);
    CHECK(check.required_minimum == 5);
    CHECK(check.empirical_reference == 11);
  }
  SUBCASE("fifteen extremes at n = 8, ell = 3") {
    ExtremePointSet set;
    set.indices.assign(15, 0);
    ExtremeCountCheck check = theorem_bound_check(set, 8, 3);
    CHECK(check.satisfied);
    CHECK(check.required_minimum == 7);
    CHECK(check.empirical_reference == 15);
  }
  SUBCASE("a single extreme fails the bound") {
    ExtremePointSet set;
    set.indices.assign(1, 0);
    ExtremeCountCheck check = theorem_bound_check(set, 6, 3);
    CHECK_FALSE(check.satisfied);
  }
  SUBCASE("invalid shape parameters are rejected") {
    ExtremePointSet set;
    CHECK_THROWS_AS(theorem_bound_check(set, -1, 0), ArgumentError);
    CHECK_THROWS_AS(theorem_bound_check(set, 3, 5), ArgumentError);
  }
}

TEST_CASE("broken interpolation shows up in the probe residuals") {
  Fixture fx = exact_fixture();

  // healthy rational: probe residual stays near the interpolated value
  ErrorReport healthy = error_report(fx.rational, fx.samples, fx.interp);
  CHECK(healthy.interpolation_residuals[0] <= 1e-6 * (1.0 + 0.5));

  // zero out the constrained beta entry: the function collapses to the
  // constant 0.75, which no longer matches y_0 = 0.5 near the node
  ComplexVector coeff(3);
  coeff << Complex(0.0, 0.0), Complex(0.75, 0.0), Complex(1.0, 0.0);
  SupportPoints support(fx.interp.nodes, fx.rational.support().free_nodes);
  BarycentricRational broken =
      assemble_from_coefficients(support, fx.interp.values, coeff);
  ErrorReport report = error_report(broken, fx.samples, fx.interp);
  CHECK(report.interpolation_residuals[0] > 1e-3);
}
