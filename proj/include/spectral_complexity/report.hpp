#ifndef SPECTRAL_COMPLEXITY_REPORT_HPP
#define SPECTRAL_COMPLEXITY_REPORT_HPP

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "benchmark.hpp"
#include "pipeline.hpp"
#include "version.hpp"

namespace spectral_complexity {

using Json = nlohmann::ordered_json;

struct DatasetMeta {
  std::string path;
  std::string format;
  std::size_t samples = 0;
  std::size_t raw_dims = 0;
  std::size_t dims = 0;
  std::vector<std::string> class_names;
};

struct MetricSelection {
  bool cmsauls = true;
  bool csg = true;
  bool auls = true;

  /// Parses a comma-separated subset of `cmsauls,csg,auls`.
  static MetricSelection parse(const std::string& text) {
    MetricSelection m{false, false, false};
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto pos = text.find(',', start);
      const auto name = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
      if (name == "cmsauls") m.cmsauls = true;
      else if (name == "csg") m.csg = true;
      else if (name == "auls") m.auls = true;
      else throw InputError("unknown metric '" + name + "'");
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return m;
  }
};

/// Serializable record of one complexity run.
struct ComplexityReport {
  std::string tool_version = spectral_complexity::tool_version;
  std::string generated_at;
  DatasetMeta dataset;
  HyperParams params;
  MetricSelection metrics;
  ReductionMeta reduction;
  Matrix X;
  Matrix W;
  std::optional<Matrix> L;
  Spectrum spectrum;
  ComplexityScores scores;
  std::optional<DescriptorReport> descriptors;
  SimilarityDiagnostics diagnostics;
  std::size_t zero_denominator_pairs = 0;
};

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline ComplexityReport make_report(const LabeledDataset& ds, const RunOptions& opts, const ComplexityResult& result,
                                    MetricSelection metrics = {}, bool include_laplacian = false) {
  ComplexityReport r;
  r.generated_at = utc_timestamp();
  r.dataset = {ds.source_path, ds.source_format, ds.samples(), ds.dims(), result.reduction.dim, ds.class_names};
  r.params = opts.params;
  r.metrics = metrics;
  r.reduction = result.reduction;
  r.X = result.similarity.values;
  r.W = result.affinity.values;
  if (include_laplacian) r.L = result.laplacian.values;
  r.spectrum = result.spectrum;
  r.scores = result.scores;
  r.descriptors = result.descriptors;
  r.diagnostics = result.similarity.diagnostics;
  r.zero_denominator_pairs = result.affinity.zero_denominator_pairs;
  return r;
}

namespace detail {

inline Json number(double v) {
  if (std::isnan(v)) throw NumericError("refusing to serialize NaN");
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double read_number(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw InputError("report: unexpected string '" + s + "' where a number was expected");
  }
  return j.get<double>();
}

inline Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix read_matrix(const Json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j.at(i).size()) != cols) throw InputError("report: ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = read_number(j.at(i).at(k));
  }
  return m;
}

inline Json vector_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(number(x));
  return out;
}

inline std::vector<double> read_vector(const Json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(read_number(x));
  return out;
}

inline std::string metric_list(const MetricSelection& m) {
  std::string s;
  for (auto [on, name] : {std::pair{m.cmsauls, "cmsauls"}, std::pair{m.csg, "csg"}, std::pair{m.auls, "auls"}})
    if (on) s += (s.empty() ? "" : ",") + std::string(name);
  return s;
}

inline Json descriptors_json(const DescriptorReport& d) {
  return Json{{"f1", number(d.f1)}, {"f2", number(d.f2)}, {"f3", number(d.f3)}, {"n1", number(d.n1)},
              {"n2", number(d.n2)}, {"n3", number(d.n3)}, {"t2", number(d.t2)}};
}

inline DescriptorReport read_descriptors(const Json& j) {
  DescriptorReport d;
  d.f1 = read_number(j.at("f1"));
  d.f2 = read_number(j.at("f2"));
  d.f3 = read_number(j.at("f3"));
  d.n1 = read_number(j.at("n1"));
  d.n2 = read_number(j.at("n2"));
  d.n3 = read_number(j.at("n3"));
  d.t2 = read_number(j.at("t2"));
  return d;
}

} // namespace detail

inline Json to_json(const ComplexityReport& r) {
  using detail::number;
  Json j;
  j["schema"] = report_schema;
  j["tool_version"] = r.tool_version;
  j["generated_at"] = r.generated_at;
  j["dataset"] = {{"path", r.dataset.path},     {"format", r.dataset.format}, {"N", r.dataset.samples},
                  {"D", r.dataset.raw_dims},    {"d", r.dataset.dims},        {"n", r.dataset.class_names.size()},
                  {"class_names", r.dataset.class_names}};
  j["params"] = {{"M", r.params.M},
                 {"E", r.params.E},
                 {"k", r.params.k},
                 {"seed", r.params.seed},
                 {"reduce", r.params.reduction.to_string()},
                 {"row_normalize", r.params.row_normalize},
                 {"exclude_self", r.params.exclude_self},
                 {"metrics", detail::metric_list(r.metrics)}};
  j["reduction"] = {{"method", r.reduction.method},
                    {"d", r.reduction.dim},
                    {"explained_variance_ratio", detail::vector_json(r.reduction.explained_variance_ratio)}};
  Json matrices;
  matrices["X"] = detail::matrix_json(r.X);
  matrices["W"] = detail::matrix_json(r.W);
  if (r.L) matrices["L"] = detail::matrix_json(*r.L);
  j["matrices"] = std::move(matrices);
  j["spectrum"] = detail::vector_json(r.spectrum.eigenvalues);
  Json scores = Json::object();
  if (r.metrics.cmsauls) scores["cmsauls"] = number(r.scores.cmsauls);
  if (r.metrics.csg) scores["csg"] = number(r.scores.csg);
  if (r.metrics.auls) scores["auls"] = number(r.scores.auls);
  j["scores"] = std::move(scores);
  if (r.descriptors) j["descriptors"] = detail::descriptors_json(*r.descriptors);

  const auto& d = r.diagnostics;
  Json replaced = Json::array();
  for (std::size_t c = 0; c < d.replacement_sampled.size(); ++c)
    if (d.replacement_sampled[c]) replaced.push_back(r.dataset.class_names.at(c));
  Json diag;
  diag["density_evaluations"] = d.density_evaluations;
  diag["degenerate_density_evaluations"] = d.degenerate_total();
  diag["degenerate_per_class"] = d.degenerate_per_class;
  diag["fully_degenerate_classes"] = d.fully_degenerate_classes;
  diag["replacement_sampled_classes"] = std::move(replaced);
  diag["zero_mass_rows"] = d.zero_mass_rows;
  diag["zero_denominator_pairs"] = r.zero_denominator_pairs;
  if (r.descriptors) diag["n2_skipped_points"] = r.descriptors->n2_skipped_points;
  diag["definitions"] = {{"cmsauls", cmsauls_definition}, {"csg", csg_definition}, {"auls", auls_definition}};
  j["diagnostics"] = std::move(diag);
  return j;
}

inline ComplexityReport report_from_json(const Json& j) {
  try {
    if (j.at("schema").get<int>() != report_schema) throw InputError("unsupported report schema");
    ComplexityReport r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.generated_at = j.at("generated_at").get<std::string>();
    const auto& ds = j.at("dataset");
    r.dataset = {ds.at("path").get<std::string>(), ds.at("format").get<std::string>(), ds.at("N").get<std::size_t>(),
                 ds.at("D").get<std::size_t>(),    ds.at("d").get<std::size_t>(),
                 ds.at("class_names").get<std::vector<std::string>>()};
    const auto& p = j.at("params");
    r.params.M = p.at("M").get<int>();
    r.params.E = p.at("E").get<int>();
    r.params.k = p.at("k").get<int>();
    r.params.seed = p.at("seed").get<std::uint64_t>();
    r.params.reduction = Reduction::parse(p.at("reduce").get<std::string>());
    r.params.row_normalize = p.at("row_normalize").get<bool>();
    r.params.exclude_self = p.at("exclude_self").get<bool>();
    r.metrics = MetricSelection::parse(p.at("metrics").get<std::string>());
    const auto& red = j.at("reduction");
    r.reduction.method = red.at("method").get<std::string>();
    r.reduction.dim = red.at("d").get<std::size_t>();
    r.reduction.explained_variance_ratio = detail::read_vector(red.at("explained_variance_ratio"));
    const auto& m = j.at("matrices");
    r.X = detail::read_matrix(m.at("X"));
    r.W = detail::read_matrix(m.at("W"));
    if (m.contains("L")) r.L = detail::read_matrix(m.at("L"));
    r.spectrum.eigenvalues = detail::read_vector(j.at("spectrum"));
    const auto& s = j.at("scores");
    if (s.contains("cmsauls")) r.scores.cmsauls = detail::read_number(s.at("cmsauls"));
    if (s.contains("csg")) r.scores.csg = detail::read_number(s.at("csg"));
    if (s.contains("auls")) r.scores.auls = detail::read_number(s.at("auls"));
    if (j.contains("descriptors")) r.descriptors = detail::read_descriptors(j.at("descriptors"));
    const auto& d = j.at("diagnostics");
    r.diagnostics.density_evaluations = d.at("density_evaluations").get<std::size_t>();
    r.diagnostics.degenerate_per_class = d.at("degenerate_per_class").get<std::vector<std::size_t>>();
    r.diagnostics.fully_degenerate_classes = d.at("fully_degenerate_classes").get<std::vector<std::size_t>>();
    r.diagnostics.replacement_sampled.assign(r.dataset.class_names.size(), false);
    for (const auto& name : d.at("replacement_sampled_classes")) {
      const auto it = std::find(r.dataset.class_names.begin(), r.dataset.class_names.end(), name.get<std::string>());
      if (it == r.dataset.class_names.end()) throw InputError("report: unknown class in diagnostics");
      r.diagnostics.replacement_sampled[static_cast<std::size_t>(it - r.dataset.class_names.begin())] = true;
    }
    r.diagnostics.zero_mass_rows = d.at("zero_mass_rows").get<std::vector<std::size_t>>();
    r.zero_denominator_pairs = d.at("zero_denominator_pairs").get<std::size_t>();
    if (r.descriptors && d.contains("n2_skipped_points"))
      r.descriptors->n2_skipped_points = d.at("n2_skipped_points").get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

/// Pretty-printed report text, terminated by a newline.
inline std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

inline void emit_report(const ComplexityReport& report, const std::filesystem::path& path) {
  write_text(path, dump_report(to_json(report)));
}

inline ComplexityReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open report: " + path.string());
  try {
    return report_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

inline Json to_json(const CorrelationResult& c) {
  return Json{{"r", detail::number(c.r)}, {"p_value", detail::number(c.p_value)}, {"m", c.sample_count}};
}

inline Json to_json(const BenchmarkResult& b, const SuiteConfig& cfg, const RunOptions& opts) {
  Json j;
  j["schema"] = report_schema;
  j["tool_version"] = tool_version;
  j["generated_at"] = utc_timestamp();
  j["suite"] = {{"classes", cfg.classes},   {"dim", cfg.dim},   {"per_class", cfg.per_class},
                {"separations", detail::vector_json(cfg.separations)}, {"trials", cfg.trials}, {"seed", cfg.seed}};
  j["params"] = {{"M", opts.params.M},
                 {"E", opts.params.E},
                 {"k", opts.params.k},
                 {"seed", opts.params.seed},
                 {"reduce", opts.params.reduction.to_string()},
                 {"row_normalize", opts.params.row_normalize},
                 {"exclude_self", opts.params.exclude_self}};
  Json rows = Json::array();
  for (const auto& row : b.rows) {
    Json r{{"separation", detail::number(row.separation)},
           {"oracle_error", detail::number(row.oracle_error)},
           {"oracle_standard_error", detail::number(row.oracle_standard_error)},
           {"cmsauls", detail::number(row.scores.cmsauls)},
           {"csg", detail::number(row.scores.csg)},
           {"auls", detail::number(row.scores.auls)}};
    if (row.descriptors) r["descriptors"] = detail::descriptors_json(*row.descriptors);
    rows.push_back(std::move(r));
  }
  j["datasets"] = std::move(rows);
  Json corr = Json::object();
  for (const auto& c : b.correlations) corr[c.metric] = {{"pearson", to_json(c.pearson)}, {"spearman", to_json(c.rank)}};
  j["correlations"] = std::move(corr);
  return j;
}

inline Json to_json(const InterClassMap& map, const std::vector<std::string>& names) {
  Json points = Json::array();
  for (Eigen::Index i = 0; i < map.coordinates.rows(); ++i)
    points.push_back({{"class", names.at(static_cast<std::size_t>(i))},
                      {"x", detail::number(map.coordinates(i, 0))},
                      {"y", detail::number(map.coordinates(i, 1))}});
  return Json{{"schema", report_schema}, {"points", std::move(points)}, {"stress", detail::number(map.stress)}};
}

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_REPORT_HPP
