#include "hurot/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "hurot/error.hpp"

namespace hurot {

namespace {

using nlohmann::json;

double parse_number(std::string_view text, const char* what) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw Error(ErrorCode::kParse, fmt::format("cannot read {} from '{}'", what, s));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

void append_vector(std::string& out, const Eigen::VectorXd& v) {
  out += '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += json_number(v[i]);
  }
  out += ']';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

DiscreteMeasure parse_measure_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("invalid measure JSON: {}", e.what()));
  }
  try {
    const json& pts = doc.at("points");
    const auto n = static_cast<Eigen::Index>(pts.size());
    int dim = doc.contains("dim") ? doc.at("dim").get<int>()
                                  : (n > 0 ? static_cast<int>(pts.at(0).size()) : 1);
    Eigen::MatrixXd points(n, dim);
    for (Eigen::Index i = 0; i < n; ++i) {
      const json& row = pts.at(i);
      if (static_cast<int>(row.size()) != dim) {
        throw Error(ErrorCode::kDimMismatch, "point dimension differs from dim");
      }
      for (int k = 0; k < dim; ++k) points(i, k) = row.at(k).get<double>();
    }
    Eigen::VectorXd weights = Eigen::VectorXd::Ones(n);
    if (doc.contains("weights")) {
      const json& w = doc.at("weights");
      if (static_cast<Eigen::Index>(w.size()) != n) {
        throw Error(ErrorCode::kShapeMismatch, "weights and points differ in length");
      }
      for (Eigen::Index i = 0; i < n; ++i) weights[i] = w.at(i).get<double>();
    }
    return DiscreteMeasure(dim, std::move(points), std::move(weights));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("invalid measure JSON: {}", e.what()));
  }
}

std::string measure_to_json(const DiscreteMeasure& mu) {
  std::string out = fmt::format("{{\"dim\":{},\"points\":[", mu.dim());
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (i) out += ',';
    append_vector(out, mu.point(i));
  }
  out += "],\"weights\":";
  append_vector(out, mu.weights());
  out += "}\n";
  return out;
}

DiscreteMeasure read_measure_file(const std::string& path) {
  return parse_measure_json(read_file(path));
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kParse, fmt::format("cannot write '{}'", path));
  out << contents;
  if (!out) throw Error(ErrorCode::kParse, fmt::format("failed writing '{}'", path));
}

std::string solve_result_to_json(const SolveResult& r) {
  std::string out = "{";
  out += fmt::format("\"dual_value\":{},\"primal_value\":{},\"gap\":{},\"iterations\":{},"
                     "\"converged\":{},\"f\":",
                     json_number(r.dual_value), json_number(r.primal_value),
                     json_number(r.duality_gap), r.iterations, r.converged ? "true" : "false");
  append_vector(out, r.potentials.f);
  out += ",\"g\":";
  append_vector(out, r.potentials.g);
  out += ",\"plan\":[";
  const Eigen::MatrixXd& p = r.plan.weights();
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    if (i) out += ',';
    append_vector(out, p.row(i).transpose());
  }
  out += "]}\n";
  return out;
}

std::string sweep_to_csv(const SweepResult& s) {
  std::string out = "lambda,value,slope_local,iterations,converged\n";
  for (std::size_t i = 0; i < s.lambdas.size(); ++i) {
    out += fmt::format("{},{},{},{},{}\n", format_double(s.lambdas[i]), format_double(s.values[i]),
                       format_double(s.slopes[i]), s.iterations[i], s.converged[i] ? 1 : 0);
  }
  return out;
}

MarginalDivergence parse_divergence(std::string_view text) {
  if (text == "balanced") return MarginalDivergence::balanced();
  if (text == "tv") return MarginalDivergence::tv();
  if (text == "kl") return MarginalDivergence::kl(1.0);
  if (text.substr(0, 7) == "kl:rho=") {
    return MarginalDivergence::kl(parse_number(text.substr(7), "rho"));
  }
  if (text.substr(0, 4) == "otb:") return MarginalDivergence::otb(parse_domain(text.substr(4)));
  throw Error(ErrorCode::kParse, fmt::format("unknown divergence '{}'", text));
}

BoundaryDomain parse_domain(std::string_view text, GroundCost cost) {
  if (text == "halfplane") return BoundaryDomain::half_plane(cost);
  if (text.substr(0, 4) == "box:") {
    const auto parts = split(text.substr(4), ',');
    if (parts.size() % 2 != 0 || parts.empty()) {
      throw Error(ErrorCode::kParse, "box needs lo,hi pairs");
    }
    std::vector<std::pair<double, double>> bounds;
    for (std::size_t k = 0; k < parts.size(); k += 2) {
      bounds.emplace_back(parse_number(parts[k], "box bound"), parse_number(parts[k + 1], "box bound"));
    }
    return BoundaryDomain::box(std::move(bounds), cost);
  }
  throw Error(ErrorCode::kParse, fmt::format("unknown domain '{}'", text));
}

CostSpec parse_cost(std::string_view text) {
  if (text == "sqeuclidean") return CostSpec::sq_euclidean();
  if (text == "euclidean") return CostSpec::euclidean();
  if (text.substr(0, 7) == "matrix:") {
    return CostSpec::explicit_matrix(read_matrix_csv(std::string(text.substr(7))));
  }
  throw Error(ErrorCode::kParse, fmt::format("unknown cost '{}'", text));
}

SweepSpec parse_lambda_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw Error(ErrorCode::kParse, "lambda grid is min:max:num:lin|log");
  SweepSpec spec;
  spec.lambda_min = parse_number(parts[0], "lambda_min");
  spec.lambda_max = parse_number(parts[1], "lambda_max");
  const double num = parse_number(parts[2], "num");
  if (num != std::floor(num) || num < 1 || num > 1e6) {
    throw Error(ErrorCode::kParse, "grid size must be a positive integer");
  }
  spec.num_points = static_cast<int>(num);
  if (parts[3] == "lin") {
    spec.scale = GridScale::kLinear;
  } else if (parts[3] == "log") {
    spec.scale = GridScale::kLog;
  } else {
    throw Error(ErrorCode::kParse, "grid scale must be lin or log");
  }
  spec.validate();
  return spec;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    for (auto cell : split(line, ',')) row.push_back(parse_number(cell, "matrix entry"));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kShapeMismatch, "ragged cost matrix");
    }
    rows.push_back(std::move(row));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index m = n > 0 ? static_cast<Eigen::Index>(rows.front().size()) : 0;
  Eigen::MatrixXd out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

}  // namespace hurot
