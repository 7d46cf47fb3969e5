#include "bdlawson/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "bdlawson/diagnostics.hpp"
#include "bdlawson/errors.hpp"

namespace bdlawson {

namespace {

struct CsvTable {
  std::vector<std::vector<double>> rows;
  std::vector<Index> lines;  // 1-based file line per row
};

bool parse_field(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

CsvTable read_numeric_csv(const std::string& path, size_t ncols) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);

  CsvTable table;
  std::string line;
  Index line_number = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string body = trimmed(line);
    if (body.empty() || body[0] == '#') continue;

    std::vector<std::string> fields;
    std::stringstream ss(body);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trimmed(field));
    if (!body.empty() && body.back() == ',') fields.push_back("");

    std::vector<double> row(fields.size());
    bool ok = true;
    size_t bad_col = 0;
    for (size_t c = 0; c < fields.size(); ++c) {
      if (!parse_field(fields[c], row[c])) {
        ok = false;
        bad_col = c;
        break;
      }
    }
    if (!saw_data && !ok) continue;  // header line
    if (!ok) {
      std::ostringstream msg;
      msg << path << " line " << line_number << ": field " << (bad_col + 1)
          << " ('" << fields[bad_col] << "') is not a number";
      throw ParseError(msg.str(), line_number);
    }
    if (fields.size() != ncols) {
      std::ostringstream msg;
      msg << path << " line " << line_number << ": expected " << ncols
          << " comma-separated columns, got " << fields.size();
      throw ParseError(msg.str(), line_number);
    }
    saw_data = true;
    table.rows.push_back(std::move(row));
    table.lines.push_back(line_number);
  }
  return table;
}

// Sort-based duplicate scan; reports the two offending file lines.
void check_distinct_nodes(const ComplexVector& nodes, const std::vector<Index>& lines,
                          const std::string& path, const char* what) {
  const Index m = nodes.size();
  std::vector<Index> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (nodes[a].real() != nodes[b].real()) return nodes[a].real() < nodes[b].real();
    return nodes[a].imag() < nodes[b].imag();
  });
  for (Index i = 1; i < m; ++i) {
    if (nodes[order[i - 1]] == nodes[order[i]]) {
      const Index la = std::min(lines[order[i - 1]], lines[order[i]]);
      const Index lb = std::max(lines[order[i - 1]], lines[order[i]]);
      std::ostringstream msg;
      msg << path << " line " << lb << ": duplicate " << what << " node, first seen at line "
          << la;
      throw ParseError(msg.str(), lb);
    }
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path);
  out << content;
}

// JSON value for a double: non-finite values are quoted so the file stays
// parseable by strict readers.
std::string json_number(double v) {
  if (std::isfinite(v)) return format_number(v);
  return "\"" + format_number(v) + "\"";
}

const char* verdict_name(CertificateVerdict v) {
  switch (v) {
    case CertificateVerdict::certified: return "certified";
    case CertificateVerdict::gap_open: return "gap_open";
    default: return "degenerate";
  }
}

const char* termination_name(TerminationReason r) {
  switch (r) {
    case TerminationReason::converged: return "converged";
    case TerminationReason::max_iterations: return "max_iterations";
    case TerminationReason::degenerate_dual: return "degenerate_dual";
    default: return "conditioning_failure";
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SampleSet load_samples_csv(const std::string& path) {
  CsvTable table = read_numeric_csv(path, 4);
  const Index m = static_cast<Index>(table.rows.size());
  if (m == 0) throw ParseError(path + ": no sample rows", 0);
  ComplexVector x(m), f(m);
  for (Index j = 0; j < m; ++j) {
    x[j] = Complex(table.rows[j][0], table.rows[j][1]);
    f[j] = Complex(table.rows[j][2], table.rows[j][3]);
  }
  check_distinct_nodes(x, table.lines, path, "sample");
  return SampleSet(std::move(x), std::move(f));
}

InterpolationData load_interp_csv(const std::string& path, const SampleSet& samples) {
  CsvTable table = read_numeric_csv(path, 4);
  const Index ell = static_cast<Index>(table.rows.size());
  ComplexVector t(ell), y(ell);
  for (Index j = 0; j < ell; ++j) {
    t[j] = Complex(table.rows[j][0], table.rows[j][1]);
    y[j] = Complex(table.rows[j][2], table.rows[j][3]);
  }
  check_distinct_nodes(t, table.lines, path, "interpolation");
  for (Index j = 0; j < ell; ++j) {
    for (Index i = 0; i < samples.size(); ++i) {
      if (t[j] == samples.nodes[i]) {
        std::ostringstream msg;
        msg << path << " line " << table.lines[j]
            << ": interpolation node coincides with sample node " << i;
        throw ParseError(msg.str(), table.lines[j]);
      }
    }
  }
  return InterpolationData(std::move(t), std::move(y));
}

ComplexVector load_points_csv(const std::string& path) {
  CsvTable table = read_numeric_csv(path, 2);
  const Index m = static_cast<Index>(table.rows.size());
  ComplexVector x(m);
  for (Index j = 0; j < m; ++j) x[j] = Complex(table.rows[j][0], table.rows[j][1]);
  return x;
}

int termination_exit_code(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::converged: return 0;
    case TerminationReason::max_iterations: return 2;
    default: return 3;
  }
}

void write_result_bundle(const std::string& dir, const SolveResult& result,
                         const SampleSet& samples, const BundleOptions& opts) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path base(dir);

  write_text_file((base / "rational.json").string(), result.rational.to_json() + "\n");

  {
    std::ostringstream csv;
    csv << "k,d,e,gap,active_weights\n";
    for (const IterationRecord& rec : result.trace.records)
      csv << rec.k << ',' << format_number(rec.d) << ',' << format_number(rec.e) << ','
          << format_number(rec.gap) << ',' << rec.active_weights << '\n';
    write_text_file((base / "trace.csv").string(), csv.str());
  }

  {
    std::ostringstream csv;
    csv << "x_re,x_im,residual\n";
    if (result.final_report) {
      for (Index j = 0; j < samples.size(); ++j)
        csv << format_number(samples.nodes[j].real()) << ','
            << format_number(samples.nodes[j].imag()) << ','
            << format_number(result.final_report->residuals[j]) << '\n';
    }
    write_text_file((base / "error_curve.csv").string(), csv.str());
  }

  {
    std::ostringstream csv;
    csv << "index,x_re,x_im,residual\n";
    if (result.final_report) {
      const ExtremePointSet set =
          extreme_points(*result.final_report, opts.extreme_threshold, true);
      for (Index idx : set.indices)
        csv << idx << ',' << format_number(samples.nodes[idx].real()) << ','
            << format_number(samples.nodes[idx].imag()) << ','
            << format_number(result.final_report->residuals[idx]) << '\n';
    }
    write_text_file((base / "extreme_points.csv").string(), csv.str());
  }

  {
    std::ostringstream json;
    json << "{\n";
    json << "  \"termination\": \"" << termination_name(result.trace.termination) << "\",\n";
    json << "  \"iterations\": " << result.trace.records.size() << ",\n";
    json << "  \"best_index\": " << result.trace.best_index << ",\n";
    if (result.certificate) {
      const DualityCertificate& cert = *result.certificate;
      json << "  \"dual_value\": " << json_number(cert.dual_value) << ",\n";
      json << "  \"primal_value\": " << json_number(cert.primal_value) << ",\n";
      json << "  \"gap\": " << json_number(cert.gap) << ",\n";
      json << "  \"slackness\": " << json_number(cert.slackness) << ",\n";
      if (cert.psd_margin)
        json << "  \"psd_margin\": " << json_number(*cert.psd_margin) << ",\n";
      else
        json << "  \"psd_margin\": null,\n";
      json << "  \"verdict\": \"" << verdict_name(cert.verdict) << "\"\n";
    } else {
      json << "  \"verdict\": null\n";
    }
    json << "}\n";
    write_text_file((base / "certificate.json").string(), json.str());
  }

  if (opts.write_meta) {
    std::ostringstream json;
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    json << "{\n  \"written_at\": \"" << stamp << "\",\n  \"samples\": " << samples.size()
         << "\n}\n";
    write_text_file((base / "run_meta.json").string(), json.str());
  }
}

}  // namespace bdlawson
