#include "bdlawson/barycentric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace bdlawson {

namespace detail {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex_pair(Complex v) {
  return "[" + format_double(v.real()) + ", " + format_double(v.imag()) + "]";
}

void check_pairwise_distinct(const ComplexVector& nodes, const char* what) {
  const Index m = nodes.size();
  if (m < 2) return;
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index(0));
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (nodes[a].real() != nodes[b].real()) return nodes[a].real() < nodes[b].real();
    return nodes[a].imag() < nodes[b].imag();
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (nodes[order[i - 1]] == nodes[order[i]]) {
      throw ArgumentError(std::string(what) + ": nodes " + std::to_string(order[i - 1]) +
                          " and " + std::to_string(order[i]) + " coincide");
    }
  }
}

namespace {

void check_disjoint(const ComplexVector& a, const ComplexVector& b, const char* what) {
  // Exact-equality membership test via sorted b.
  std::vector<Complex> sorted(b.data(), b.data() + b.size());
  auto less = [](Complex l, Complex r) {
    if (l.real() != r.real()) return l.real() < r.real();
    return l.imag() < r.imag();
  };
  std::sort(sorted.begin(), sorted.end(), less);
  for (Index i = 0; i < a.size(); ++i) {
    if (std::binary_search(sorted.begin(), sorted.end(), a[i], less)) {
      throw ArgumentError(std::string(what) + ": node " + std::to_string(i) +
                          " coincides with a sample node");
    }
  }
}

}  // namespace

}  // namespace detail

SampleSet::SampleSet(ComplexVector nodes_in, ComplexVector values_in)
    : nodes(std::move(nodes_in)), values(std::move(values_in)) {
  if (nodes.size() != values.size()) {
    throw ArgumentError("SampleSet: nodes and values differ in length");
  }
  if (nodes.size() == 0) throw ArgumentError("SampleSet: empty");
  detail::check_pairwise_distinct(nodes, "SampleSet");
}

InterpolationData::InterpolationData(ComplexVector nodes_in, ComplexVector values_in)
    : nodes(std::move(nodes_in)), values(std::move(values_in)) {
  if (nodes.size() != values.size()) {
    throw ArgumentError("InterpolationData: nodes and values differ in length");
  }
  detail::check_pairwise_distinct(nodes, "InterpolationData");
}

void InterpolationData::validate_against(const SampleSet& samples) const {
  detail::check_disjoint(nodes, samples.nodes, "InterpolationData");
}

SupportPoints::SupportPoints(ComplexVector interp, ComplexVector free)
    : interp_nodes(std::move(interp)), free_nodes(std::move(free)) {
  if (count() < 1) throw ArgumentError("SupportPoints: need at least one node");
  detail::check_pairwise_distinct(all_nodes(), "SupportPoints");
}

Complex SupportPoints::node(Index j) const {
  const Index l = ell();
  return (j < l) ? interp_nodes[j] : free_nodes[j - l];
}

ComplexVector SupportPoints::all_nodes() const {
  ComplexVector t(count());
  t.head(interp_nodes.size()) = interp_nodes;
  t.tail(free_nodes.size()) = free_nodes;
  return t;
}

void SupportPoints::validate_disjoint_from(const ComplexVector& sample_nodes) const {
  detail::check_disjoint(all_nodes(), sample_nodes, "SupportPoints");
}

BarycentricRational::BarycentricRational(SupportPoints support, ComplexVector interp_values,
                                         ComplexVector alpha, ComplexVector beta)
    : support_(std::move(support)),
      interp_values_(std::move(interp_values)),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)) {
  if (interp_values_.size() != support_.ell()) {
    throw ArgumentError("BarycentricRational: interp_values size mismatch");
  }
  if (alpha_.size() != support_.free_nodes.size()) {
    throw ArgumentError("BarycentricRational: alpha size mismatch");
  }
  if (beta_.size() != support_.count()) {
    throw ArgumentError("BarycentricRational: beta size mismatch");
  }
}

Complex BarycentricRational::numerator_coefficient(Index j) const {
  const Index l = ell();
  return (j < l) ? beta_[j] * interp_values_[j] : alpha_[j - l];
}

bool BarycentricRational::interpolation_valid(double threshold) const {
  if (ell() == 0) return true;
  const double maxbeta = beta_.cwiseAbs().maxCoeff();
  if (threshold < 0.0) threshold = 1e-12 * maxbeta;
  for (Index j = 0; j < ell(); ++j) {
    if (std::abs(beta_[j]) <= threshold) return false;
  }
  return true;
}

Complex BarycentricRational::evaluate(Complex x) const {
  const Index k = count();
  if (k == 0) throw ArgumentError("BarycentricRational: empty");

  // Proximity scan: nearest support node within the limit threshold.
  Index hit = -1;
  double hit_dist = 0.0;
  for (Index j = 0; j < k; ++j) {
    const Complex t = support_.node(j);
    const double dist = std::abs(x - t);
    if (dist < 1e-13 * (1.0 + std::abs(t)) && (hit < 0 || dist < hit_dist)) {
      hit = j;
      hit_dist = dist;
    }
  }

  if (hit >= 0) {
    if (beta_[hit] != Complex(0.0, 0.0)) {
      return (hit < ell()) ? interp_values_[hit] : alpha_[hit - ell()] / beta_[hit];
    }
    // Node excluded: multiply numerator and denominator by (x - t_hit).
    const Complex dx = x - support_.node(hit);
    Complex sp(0.0, 0.0);
    Complex sq(0.0, 0.0);
    for (Index j = 0; j < k; ++j) {
      if (j == hit) continue;
      const Complex s = 1.0 / (x - support_.node(j));
      sp += numerator_coefficient(j) * s;
      sq += beta_[j] * s;
    }
    const Complex num = numerator_coefficient(hit) + dx * sp;
    const Complex den = beta_[hit] + dx * sq;
    if (den == Complex(0.0, 0.0)) {
      throw PoleError("evaluate: denominator vanished at a support node with zero beta", x);
    }
    return num / den;
  }

  Complex p(0.0, 0.0);
  Complex q(0.0, 0.0);
  for (Index j = 0; j < k; ++j) {
    const Complex s = 1.0 / (x - support_.node(j));
    p += numerator_coefficient(j) * s;
    q += beta_[j] * s;
  }
  if (q == Complex(0.0, 0.0)) {
    throw PoleError("evaluate: denominator vanished", x);
  }
  return p / q;
}

ComplexVector evaluate_on_samples(const BarycentricRational& r, const ComplexVector& x) {
  ComplexVector out(x.size());
  for (Index j = 0; j < x.size(); ++j) {
    try {
      out[j] = r.evaluate(x[j]);
    } catch (const PoleError& err) {
      throw PoleError(std::string(err.what()) + " (sample " + std::to_string(j) + ")",
                      err.location(), j);
    }
  }
  return out;
}

BarycentricRational assemble_from_coefficients(const SupportPoints& support,
                                               const ComplexVector& interp_values,
                                               const ComplexVector& c) {
  const Index l = support.ell();
  const Index nfree = support.free_nodes.size();
  if (interp_values.size() != l) {
    throw ArgumentError("assemble_from_coefficients: interp_values size mismatch");
  }
  if (c.size() != l + 2 * nfree) {
    throw ArgumentError("assemble_from_coefficients: coefficient vector has size " +
                        std::to_string(c.size()) + ", expected " + std::to_string(l + 2 * nfree));
  }
  ComplexVector alpha = c.segment(l, nfree);
  ComplexVector beta(l + nfree);
  beta.head(l) = c.head(l);
  beta.tail(nfree) = c.tail(nfree);
  return BarycentricRational(support, interp_values, std::move(alpha), std::move(beta));
}

namespace {

void append_complex_list(std::string& out, const char* key, const ComplexVector& v) {
  out += "  \"";
  out += key;
  out += "\": [";
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += detail::format_complex_pair(v[i]);
  }
  out += "]";
}

ComplexVector parse_complex_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ArgumentError(std::string("rational JSON: missing or invalid field ") + key);
  }
  const auto& arr = j[key];
  ComplexVector v(static_cast<Index>(arr.size()));
  Index i = 0;
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw ArgumentError(std::string("rational JSON: field ") + key +
                          " must hold [re, im] pairs");
    }
    v[i++] = Complex(item[0].get<double>(), item[1].get<double>());
  }
  return v;
}

}  // namespace

std::string BarycentricRational::to_json() const {
  std::string out = "{\n";
  out += "  \"degree_n\": " + std::to_string(degree()) + ",\n";
  out += "  \"ell\": " + std::to_string(ell()) + ",\n";
  append_complex_list(out, "support_interp", support_.interp_nodes);
  out += ",\n";
  append_complex_list(out, "interp_values", interp_values_);
  out += ",\n";
  append_complex_list(out, "support_free", support_.free_nodes);
  out += ",\n";
  append_complex_list(out, "alpha", alpha_);
  out += ",\n";
  append_complex_list(out, "beta", beta_);
  out += "\n}\n";
  return out;
}

BarycentricRational BarycentricRational::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw ArgumentError(std::string("rational JSON: parse failure: ") + err.what());
  }
  if (!j.contains("degree_n") || !j["degree_n"].is_number_integer() || !j.contains("ell") ||
      !j["ell"].is_number_integer()) {
    throw ArgumentError("rational JSON: missing degree_n or ell");
  }
  const Index n = j["degree_n"].get<Index>();
  const Index l = j["ell"].get<Index>();
  ComplexVector interp_nodes = parse_complex_list(j, "support_interp");
  ComplexVector interp_values = parse_complex_list(j, "interp_values");
  ComplexVector free_nodes = parse_complex_list(j, "support_free");
  ComplexVector alpha = parse_complex_list(j, "alpha");
  ComplexVector beta = parse_complex_list(j, "beta");
  if (interp_nodes.size() != l || interp_values.size() != l) {
    throw ArgumentError("rational JSON: interpolation fields disagree with ell");
  }
  if (free_nodes.size() != n + 1 - l || alpha.size() != n + 1 - l || beta.size() != n + 1) {
    throw ArgumentError("rational JSON: coefficient fields disagree with degree_n and ell");
  }
  return BarycentricRational(SupportPoints(std::move(interp_nodes), std::move(free_nodes)),
                             std::move(interp_values), std::move(alpha), std::move(beta));
}

}  // namespace bdlawson
