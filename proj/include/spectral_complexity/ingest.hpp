#ifndef SPECTRAL_COMPLEXITY_INGEST_HPP
#define SPECTRAL_COMPLEXITY_INGEST_HPP

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace spectral_complexity {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Labels = std::vector<int>;

/// Raw samples (one row each) with dense class ids in [0, n).
struct LabeledDataset {
  Matrix features;
  Labels labels;
  std::vector<std::string> class_names;
  std::string source_path;
  std::string source_format = "memory";

  std::size_t samples() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t dims() const { return static_cast<std::size_t>(features.cols()); }
  std::size_t classes() const { return class_names.size(); }
};

/// Checks every dataset invariant, throwing InputError on the first violation.
inline void validate(const LabeledDataset& ds) {
  if (ds.features.rows() < 2) throw InputError("dataset needs at least 2 samples");
  if (ds.features.cols() < 1) throw InputError("dataset needs at least 1 feature");
  if (ds.labels.size() != ds.samples())
    throw InputError("label count " + std::to_string(ds.labels.size()) + " does not match " +
                     std::to_string(ds.samples()) + " samples");
  const auto n = ds.classes();
  if (n < 2) throw InputError("dataset needs at least 2 classes, found " + std::to_string(n));
  std::vector<std::size_t> counts(n, 0);
  for (auto label : ds.labels) {
    if (label < 0 || static_cast<std::size_t>(label) >= n)
      throw InputError("class id " + std::to_string(label) + " outside [0, " + std::to_string(n) + ")");
    ++counts[static_cast<std::size_t>(label)];
  }
  for (std::size_t c = 0; c < n; ++c)
    if (counts[c] == 0) throw InputError("class '" + ds.class_names[c] + "' has no samples");
  if (!ds.features.allFinite()) throw InputError("features contain NaN or Inf");
}

enum class ReductionKind { passthrough, pca_dim, pca_rate };

struct Reduction {
  ReductionKind kind = ReductionKind::passthrough;
  int dim = 0;
  double rate = 0.0;

  static Reduction passthrough() { return {}; }
  static Reduction pca_dim(int d) { return {ReductionKind::pca_dim, d, 0.0}; }
  static Reduction pca_rate(double r) { return {ReductionKind::pca_rate, 0, r}; }

  /// Parses `passthrough`, `pca:<d>` or `pca:rate=<r>`.
  static Reduction parse(std::string_view text) {
    if (text == "passthrough") return passthrough();
    if (text.starts_with("pca:rate=")) {
      const std::string value(text.substr(9));
      char* end = nullptr;
      const double r = std::strtod(value.c_str(), &end);
      if (value.empty() || *end != '\0' || !(r > 0.0 && r <= 1.0))
        throw InputError("contribution rate must be in (0, 1]: '" + std::string(text) + "'");
      return pca_rate(r);
    }
    if (text.starts_with("pca:")) {
      const auto value = text.substr(4);
      int d = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), d);
      if (ec != std::errc{} || ptr != value.data() + value.size() || d < 1)
        throw InputError("PCA dimension must be a positive integer: '" + std::string(text) + "'");
      return pca_dim(d);
    }
    throw InputError("unknown reduction '" + std::string(text) + "'");
  }

  std::string to_string() const {
    switch (kind) {
    case ReductionKind::pca_dim: return "pca:" + std::to_string(dim);
    case ReductionKind::pca_rate: {
      char buf[32]; // shortest text that parses back to the same double
      const auto end = std::to_chars(buf, buf + sizeof buf, rate).ptr;
      return "pca:rate=" + std::string(buf, end);
    }
    default: return "passthrough";
    }
  }
};

/// Matrix-construction hyperparameters. Defaults M = E = 100, k = 3.
struct HyperParams {
  int M = 100;
  int E = 100;
  int k = 3;
  std::uint64_t seed = 42;
  Reduction reduction;
  bool row_normalize = true;
  bool exclude_self = false;

  void validate() const {
    if (M < 1) throw InputError("M must be positive");
    if (E < 1) throw InputError("E must be positive");
    if (k < 1) throw InputError("k must be positive");
    if (k > E)
      throw InputError("k (" + std::to_string(k) + ") must not exceed E (" + std::to_string(E) + ")");
  }
};

/// Index sets of the samples in each class, in dataset order.
inline std::vector<std::vector<std::size_t>> class_partition(const Labels& labels, std::size_t classes) {
  std::vector<std::vector<std::size_t>> parts(classes);
  for (std::size_t i = 0; i < labels.size(); ++i) parts[static_cast<std::size_t>(labels[i])].push_back(i);
  return parts;
}

inline std::vector<std::vector<std::size_t>> class_partition(const LabeledDataset& ds) {
  return class_partition(ds.labels, ds.classes());
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

/// Maps label strings to dense ids in order of first appearance.
class LabelIndexer {
public:
  int operator()(const std::string& name) {
    auto [it, inserted] = ids_.try_emplace(name, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }
  std::vector<std::string> names() && { return std::move(names_); }

private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> names_;
};

inline std::ifstream open_or_throw(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw InputError("cannot open file: " + path.string());
  return in;
}

} // namespace detail

/// Reads a headed CSV file; `label_column` names the class column and every
/// other column is parsed as a double-precision feature.
inline LabeledDataset load_csv(const std::filesystem::path& path, std::string_view label_column) {
  auto in = detail::open_or_throw(path);
  const std::string where = path.string();
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw InputError(where + ": empty file");
  ++line_no;
  const auto header = detail::split_commas(line);
  std::optional<std::size_t> label_at;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == label_column) label_at = c;
  if (!label_at) throw InputError(where + ": missing label column '" + std::string(label_column) + "'");
  const auto columns = header.size();

  std::vector<double> values;
  detail::LabelIndexer indexer;
  Labels labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_commas(line);
    if (cells.size() != columns)
      throw InputError(where + ": line " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                       " fields, found " + std::to_string(cells.size()));
    for (std::size_t c = 0; c < columns; ++c) {
      if (c == *label_at) {
        labels.push_back(indexer(std::string(cells[c])));
        continue;
      }
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
      if (cells[c].empty() || ec != std::errc{} || ptr != cells[c].data() + cells[c].size())
        throw InputError(where + ": line " + std::to_string(line_no) + ": non-numeric feature '" +
                         std::string(cells[c]) + "'");
      if (!std::isfinite(v))
        throw InputError(where + ": line " + std::to_string(line_no) + ": NaN/Inf feature");
      values.push_back(v);
    }
  }

  LabeledDataset ds;
  const auto rows = static_cast<Eigen::Index>(labels.size());
  const auto cols = static_cast<Eigen::Index>(columns - 1);
  ds.features = cols > 0 ? Matrix(Eigen::Map<const Matrix>(values.data(), rows, cols)) : Matrix(rows, 0);
  ds.labels = std::move(labels);
  ds.class_names = std::move(indexer).names();
  ds.source_path = where;
  ds.source_format = "csv";
  validate(ds);
  return ds;
}

/// Reads the binary layout: a JSON descriptor `{"rows", "cols", "data", "labels"}`
/// pointing at a little-endian float32 row-major matrix and a one-label-per-line
/// text file. `data` and `labels` default to the descriptor's stem with `.f32`
/// and `.labels` extensions and resolve relative to the descriptor.
inline LabeledDataset load_binary(const std::filesystem::path& descriptor) {
  auto meta_in = detail::open_or_throw(descriptor);
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(meta_in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(descriptor.string() + ": invalid descriptor: " + e.what());
  }
  if (!meta.contains("rows") || !meta.contains("cols") || !meta["rows"].is_number_unsigned() ||
      !meta["cols"].is_number_unsigned())
    throw InputError(descriptor.string() + ": descriptor needs unsigned 'rows' and 'cols'");
  const auto rows = meta["rows"].get<std::size_t>();
  const auto cols = meta["cols"].get<std::size_t>();
  const auto dir = descriptor.parent_path();
  auto sibling = [&](const char* key, const char* ext) {
    if (meta.contains(key)) return dir / meta[key].get<std::string>();
    auto p = descriptor;
    return p.replace_extension(ext);
  };
  const auto data_path = sibling("data", ".f32");
  const auto labels_path = sibling("labels", ".labels");

  auto data_in = detail::open_or_throw(data_path, std::ios::binary);
  std::vector<unsigned char> raw(rows * cols * 4);
  data_in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(data_in.gcount()) != raw.size() || data_in.peek() != EOF)
    throw InputError(data_path.string() + ": expected exactly " + std::to_string(raw.size()) + " bytes");

  LabeledDataset ds;
  ds.features.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows * cols; ++i) {
    const auto* b = &raw[i * 4];
    const std::uint32_t bits = std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16) |
                               (std::uint32_t{b[3]} << 24);
    const double v = std::bit_cast<float>(bits);
    if (!std::isfinite(v))
      throw InputError(data_path.string() + ": NaN/Inf feature at row " + std::to_string(i / cols + 1));
    ds.features.data()[i] = v;
  }

  auto labels_in = detail::open_or_throw(labels_path);
  detail::LabelIndexer indexer;
  std::string line;
  while (std::getline(labels_in, line)) {
    const auto label = detail::trim(line);
    if (label.empty()) continue;
    ds.labels.push_back(indexer(std::string(label)));
  }
  ds.class_names = std::move(indexer).names();
  ds.source_path = descriptor.string();
  ds.source_format = "binary";
  validate(ds);
  return ds;
}

/// Dispatches on extension: `.json` descriptors use the binary layout, anything
/// else is read as CSV.
inline LabeledDataset load_dataset(const std::filesystem::path& path, std::string_view label_column) {
  if (!std::filesystem::exists(path)) throw InputError("file not found: " + path.string());
  if (path.extension() == ".json") return load_binary(path);
  return load_csv(path, label_column);
}

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_INGEST_HPP
