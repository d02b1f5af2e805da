#ifndef SPECTRAL_COMPLEXITY_TEST_HELPERS_HPP
#define SPECTRAL_COMPLEXITY_TEST_HELPERS_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "spectral_complexity.hpp"

namespace test_support {

namespace sc = spectral_complexity;

inline std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "spectral_complexity_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path write_file(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

/// Dataset from explicit rows and per-row class ids; class names default to c<i>.
inline sc::LabeledDataset dataset(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels) {
  sc::LabeledDataset ds;
  ds.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.at(0).size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  ds.labels = labels;
  int n = 0;
  for (int l : labels) n = std::max(n, l + 1);
  for (int c = 0; c < n; ++c) ds.class_names.push_back("c" + std::to_string(c));
  return ds;
}

inline sc::EmbeddedDataset embedded(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels) {
  return sc::embed_as_is(dataset(rows, labels));
}

/// Gaussian blobs: class c centred at centres[c] with isotropic spread.
inline sc::LabeledDataset blobs(const std::vector<std::vector<double>>& centres, std::size_t per_class, double spread,
                                std::uint64_t seed) {
  sc::Engine rng(seed);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (std::size_t c = 0; c < centres.size(); ++c)
    for (std::size_t i = 0; i < per_class; ++i) {
      std::vector<double> row;
      for (double m : centres[c]) row.push_back(m + spread * sc::standard_normal(rng));
      rows.push_back(row);
      labels.push_back(static_cast<int>(c));
    }
  return dataset(rows, labels);
}

/// Random symmetric affinity with unit diagonal and entries in [0, 1].
inline sc::Matrix random_affinity(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  sc::Matrix W = sc::Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) W(i, j) = W(j, i) = u(rng);
  return W;
}

inline sc::Matrix permute(const sc::Matrix& W, const std::vector<Eigen::Index>& perm) {
  sc::Matrix out(W.rows(), W.cols());
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j) out(i, j) = W(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return out;
}

} // namespace test_support

#endif // SPECTRAL_COMPLEXITY_TEST_HELPERS_HPP
