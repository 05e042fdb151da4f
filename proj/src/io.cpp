#include "qcorr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcorr/error.hpp"

namespace qcorr {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

json diagnostics_to_json(const OptimizerDiagnostics& d) {
  return json{{"restarts", d.restarts},
              {"evaluations", d.evaluations},
              {"grid_points_per_angle", d.grid_points_per_angle},
              {"best", number(d.best)},
              {"second_best", number(d.second_best)},
              {"gap", number(d.gap)},
              {"converged", d.converged}};
}

}  // namespace

DensityMatrix parse_state_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    parse_fail("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix")) {
    parse_fail("state document needs \"dims\" and \"matrix\"");
  }
  const json& dims_node = doc["dims"];
  if (!dims_node.is_array() || dims_node.empty()) parse_fail("\"dims\" must be a nonempty array");
  std::vector<int> dims;
  for (const auto& d : dims_node) {
    if (!d.is_number_integer()) parse_fail("\"dims\" entries must be integers");
    dims.push_back(d.get<int>());
  }
  const SubsystemLayout layout(dims);

  const json& rows = doc["matrix"];
  if (!rows.is_array()) parse_fail("\"matrix\" must be an array of rows");
  const auto n = static_cast<std::size_t>(layout.total_dim());
  if (rows.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix has " + std::to_string(rows.size()) + " rows, dims require " + std::to_string(n));
  }
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array()) parse_fail("row " + std::to_string(r) + " is not an array");
    if (rows[r].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(r) + " has " +
                                                    std::to_string(rows[r].size()) + " entries, expected " +
                                                    std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      const json& e = rows[r][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        parse_fail("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") must be [re, im]");
      }
      m(r, c) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return DensityMatrix::validate(m, layout);
}

DensityMatrix load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str());
}

nlohmann::json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string state_to_json(const DensityMatrix& rho) {
  json doc{{"dims", rho.layout().dims()}, {"matrix", matrix_to_json(rho.matrix())}};
  return doc.dump(1) + "\n";
}

void save_state_file(const DensityMatrix& rho, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) parse_fail("cannot write " + path.string());
  out << state_to_json(rho);
}

nlohmann::json basis_to_json(const LocalBasisSet& basis) {
  json out = json::array();
  for (std::size_t i = 0; i < basis.measured().size(); ++i) {
    const LocalBasis& b = basis.bases()[i];
    json vectors = json::array();
    for (int k = 0; k < b.dim(); ++k) {
      json v = json::array();
      for (int j = 0; j < b.dim(); ++j) v.push_back({b.unitary()(j, k).real(), b.unitary()(j, k).imag()});
      vectors.push_back(std::move(v));
    }
    out.push_back({{"subsystem", basis.measured()[i]}, {"angles", b.angles()}, {"vectors", std::move(vectors)}});
  }
  return out;
}

nlohmann::json report_to_json(const CorrelationReport& report) {
  json doc;
  doc["format"] = "qcorr-report-1";
  doc["dims"] = report.layout.dims();
  doc["measured"] = report.measured;
  doc["units"] = "bits";
  doc["angle_units"] = "radians";

  json values = json::object();
  for (const auto& [k, v] : report.values) values[k] = number(v);
  doc["values"] = std::move(values);

  json states = json::object();
  for (const auto& [k, s] : report.closest_states) states[k] = matrix_to_json(s.matrix());
  doc["closest_states"] = std::move(states);

  json bases = json::object();
  for (const auto& [k, b] : report.optimal_bases) bases[k] = basis_to_json(b);
  doc["optimal_bases"] = std::move(bases);

  json diag = json::object();
  for (const auto& [k, d] : report.diagnostics) diag[k] = diagnostics_to_json(d);
  doc["diagnostics"] = std::move(diag);

  if (report.separable_certificate) {
    json terms = json::array();
    for (const auto& t : report.separable_certificate->terms()) {
      json factors = json::array();
      for (const auto& f : t.factors) factors.push_back(matrix_to_json(f));
      terms.push_back({{"weight", t.weight}, {"factors", std::move(factors)}});
    }
    doc["separable_certificate"] = {{"terms", std::move(terms)},
                                    {"error", report.separable_certificate->certificate_error()}};
  }

  if (!report.unified.empty()) {
    json unified = json::array();
    for (const auto& u : report.unified) {
      json distances = json::object();
      for (const auto& [k, v] : u.distances) distances[k] = number(v);
      const char* variant = u.variant == QuantumnessVariant::OriginalDiscord ? "original_discord"
                            : u.variant == QuantumnessVariant::Mid       ? "mid"
                                                                         : "red";
      unified.push_back({{"variant", variant},
                         {"value", number(u.value)},
                         {"basis", basis_to_json(u.basis)},
                         {"distances", std::move(distances)}});
    }
    doc["unified"] = std::move(unified);
  }

  if (report.additivity_residual) doc["additivity_residual"] = *report.additivity_residual;
  if (report.additivity_residual_sigma) doc["additivity_residual_sigma"] = *report.additivity_residual_sigma;
  doc["failures"] = report.failures;
  doc["flags"] = report.flags;
  return doc;
}

std::string csv_header() {
  return "version,family,params,E,D,Q,C,T,L,delta_AB,delta_BA,MID,flags";
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string csv_quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(std::string_view family, std::string_view params, const CorrelationReport* report,
                    std::string_view error) {
  std::string row = csv_quote(kCsvVersion);
  row += ',' + csv_quote(family) + ',' + csv_quote(params);
  std::vector<std::string> flags;
  for (const char* key : {"E", "D", "Q", "C", "T", "L", "delta_AB", "delta_BA", "MID"}) {
    row += ',';
    if (!report) continue;
    if (auto it = report->values.find(key); it != report->values.end()) row += format_number(it->second);
    if (report->failures.count(key)) flags.push_back(std::string("failed:") + key);
  }
  if (report) {
    for (const auto& f : report->flags) flags.push_back(f);
  }
  if (!error.empty()) flags.push_back("error:" + std::string(error));
  std::string joined;
  for (std::size_t i = 0; i < flags.size(); ++i) joined += (i ? ";" : "") + flags[i];
  row += ',' + csv_quote(joined);
  return row;
}

IndexSet parse_index_set(std::string_view text) {
  IndexSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string tok(text.substr(start, end - start));
    start = end + 1;
    if (tok.empty()) continue;
    if (tok.size() == 1 && std::isalpha(static_cast<unsigned char>(tok[0]))) {
      out.push_back(static_cast<std::size_t>(std::toupper(static_cast<unsigned char>(tok[0])) - 'A'));
    } else {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size()) parse_fail("bad subsystem index '" + tok + "'");
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace qcorr
