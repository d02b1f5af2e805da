#ifndef SPECTRAL_COMPLEXITY_SIMILARITY_HPP
#define SPECTRAL_COMPLEXITY_SIMILARITY_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <cmath>
#include <span>
#include <thread>
#include <vector>

#include "random.hpp"
#include "reduce.hpp"

namespace spectral_complexity {

struct DensityEstimate {
  double density = 0.0;
  bool degenerate = false; // k-th neighbour radius hit the floor
};

/// Largest per-dimension range of the data, scaled into the radius floor used
/// when the k-th neighbour coincides with the query.
inline double radius_floor(const Matrix& data) {
  double range = 0.0;
  if (data.rows() > 0) range = (data.colwise().maxCoeff() - data.colwise().minCoeff()).maxCoeff();
  return 1e-12 * std::max(1.0, range);
}

/// k-nearest-neighbour density k / (E * V), where V = (2 r_k)^d is the hypercube
/// spanned by the Chebyshev distance to the k-th nearest usable target and E is
/// the number of usable targets. Targets with `excluded[i]` set are skipped.
inline DensityEstimate knn_density(const Eigen::Ref<const Eigen::RowVectorXd>& query, const Matrix& targets,
                                   int k, double floor, std::span<const char> excluded = {}) {
  if (targets.rows() == 0) throw InputError("knn_density: empty target set");
  if (query.size() != targets.cols() || query.size() < 1)
    throw InputError("knn_density: query and targets disagree on dimension");
  if (!excluded.empty() && excluded.size() != static_cast<std::size_t>(targets.rows()))
    throw InputError("knn_density: exclusion mask has the wrong length");

  std::vector<double> distances;
  distances.reserve(static_cast<std::size_t>(targets.rows()));
  for (Eigen::Index t = 0; t < targets.rows(); ++t) {
    if (!excluded.empty() && excluded[static_cast<std::size_t>(t)]) continue;
    distances.push_back((targets.row(t) - query).cwiseAbs().maxCoeff());
  }
  if (k < 1 || static_cast<std::size_t>(k) > distances.size())
    throw InputError("knn_density: k = " + std::to_string(k) + " exceeds the " +
                     std::to_string(distances.size()) + " usable targets");

  auto kth = distances.begin() + (k - 1);
  std::nth_element(distances.begin(), kth, distances.end());
  DensityEstimate out;
  double radius = *kth;
  if (radius < floor) {
    radius = floor;
    out.degenerate = true;
  }
  const double volume = std::pow(2.0 * radius, static_cast<double>(query.size()));
  out.density = static_cast<double>(k) / (static_cast<double>(distances.size()) * volume);
  return out;
}

struct PairEstimate {
  double value = 0.0;
  std::size_t degenerate = 0;   // density evaluations that hit the radius floor
  bool source_replaced = false; // source class smaller than M
  bool target_replaced = false; // target class smaller than E
};

/// Stream seed for the (source, target) pair. Keyed by class names so a
/// relabelling of the classes permutes the similarity matrix exactly.
inline std::uint64_t pair_seed(std::uint64_t seed, const std::string& source, const std::string& target) {
  return derive_seed(seed, {fnv1a(source), fnv1a(target)});
}

/// Monte-Carlo estimate of the expected target-class density under the source
/// class: M source draws, each scored against the same E target draws (the
/// distinct ones, when a small class had to be drawn with replacement).
inline PairEstimate class_pair_expectation(std::size_t source, std::size_t target, const EmbeddedDataset& emb,
                                           const std::vector<std::vector<std::size_t>>& partition,
                                           const HyperParams& params, double floor) {
  const auto& src = partition.at(source);
  const auto& tgt = partition.at(target);
  if (src.empty() || tgt.empty()) throw InputError("class_pair_expectation: empty class");

  Engine rng(pair_seed(params.seed, emb.class_names.at(source), emb.class_names.at(target)));
  PairEstimate out;
  const auto queries = draw_sample(rng, src, static_cast<std::size_t>(params.M), &out.source_replaced);
  auto target_rows = draw_sample(rng, tgt, static_cast<std::size_t>(params.E), &out.target_replaced);
  if (out.target_replaced) {
    // Repeated draws of one row would stack at distance 0 from a coincident
    // query and collapse r_k to the floor; count each drawn row once.
    std::vector<std::size_t> distinct;
    std::vector<char> seen(emb.samples(), 0);
    for (auto r : target_rows)
      if (!seen[r]) {
        seen[r] = 1;
        distinct.push_back(r);
      }
    target_rows = std::move(distinct);
  }

  Matrix targets(static_cast<Eigen::Index>(target_rows.size()), emb.features.cols());
  for (std::size_t t = 0; t < target_rows.size(); ++t)
    targets.row(static_cast<Eigen::Index>(t)) = emb.features.row(static_cast<Eigen::Index>(target_rows[t]));

  const bool exclude = params.exclude_self && source == target;
  std::vector<char> mask;
  double sum = 0.0;
  for (auto q : queries) {
    if (exclude) {
      mask.assign(target_rows.size(), 0);
      for (std::size_t t = 0; t < target_rows.size(); ++t) mask[t] = target_rows[t] == q;
    }
    const auto est = knn_density(emb.features.row(static_cast<Eigen::Index>(q)), targets, params.k, floor, mask);
    sum += est.density;
    out.degenerate += est.degenerate;
  }
  out.value = sum / static_cast<double>(queries.size());
  return out;
}

struct SimilarityDiagnostics {
  std::vector<std::size_t> degenerate_per_class; // by source class
  std::vector<std::size_t> fully_degenerate_classes;
  std::vector<bool> replacement_sampled;         // class smaller than M or E
  std::vector<std::size_t> zero_mass_rows;
  std::size_t density_evaluations = 0;

  std::size_t degenerate_total() const {
    std::size_t s = 0;
    for (auto d : degenerate_per_class) s += d;
    return s;
  }
};

/// Asymmetric class similarity matrix; entry (i, j) is the expected density of
/// class j under samples of class i.
struct ClassSimilarityMatrix {
  Matrix values;
  HyperParams params;
  bool row_normalized = false;
  SimilarityDiagnostics diagnostics;
};

/// Fills every (source, target) entry, optionally across `threads` workers, then
/// row-normalizes when requested. The result does not depend on the schedule.
inline ClassSimilarityMatrix build_similarity_matrix(const EmbeddedDataset& emb, const HyperParams& params,
                                                     unsigned threads = 1) {
  params.validate();
  const auto n = emb.classes();
  if (n < 2) throw InputError("similarity matrix needs at least 2 classes");
  if (emb.labels.size() != emb.samples()) throw InputError("label count does not match samples");
  if (!emb.features.allFinite()) throw InputError("embedding contains NaN or Inf");

  const auto partition = class_partition(emb.labels, n);
  const double floor = radius_floor(emb.features);
  std::vector<PairEstimate> cells(n * n);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t cell; (cell = next.fetch_add(1)) < n * n && !failed;) {
      try {
        cells[cell] = class_pair_expectation(cell / n, cell % n, emb, partition, params, floor);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(n * n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  ClassSimilarityMatrix X;
  X.params = params;
  X.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  auto& diag = X.diagnostics;
  diag.degenerate_per_class.assign(n, 0);
  diag.replacement_sampled.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& cell = cells[i * n + j];
      X.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cell.value;
      diag.degenerate_per_class[i] += cell.degenerate;
      if (cell.source_replaced) diag.replacement_sampled[i] = true;
      if (cell.target_replaced) diag.replacement_sampled[j] = true;
    }
    const auto per_class = static_cast<std::size_t>(params.M) * n;
    if (diag.degenerate_per_class[i] == per_class) diag.fully_degenerate_classes.push_back(i);
  }
  diag.density_evaluations = static_cast<std::size_t>(params.M) * n * n;
  if (!X.values.allFinite()) throw NumericError("similarity matrix contains non-finite entries");

  if (params.row_normalize) {
    for (Eigen::Index i = 0; i < X.values.rows(); ++i) {
      const double mass = X.values.row(i).sum();
      if (mass > 0.0) {
        X.values.row(i) /= mass;
      } else {
        diag.zero_mass_rows.push_back(static_cast<std::size_t>(i));
      }
    }
    X.row_normalized = true;
  }
  return X;
}

/// Symmetric class affinity in [0, 1] with unit diagonal.
struct SymmetricAffinity {
  Matrix values;
  std::size_t zero_denominator_pairs = 0; // column pairs that were both all-zero
};

/// Bray-Curtis similarity between the columns of X:
/// W_ij = 1 - sum_q |X_qi - X_qj| / sum_q (X_qi + X_qj).
inline SymmetricAffinity bray_curtis_symmetrize(const Matrix& X) {
  if (X.rows() != X.cols()) throw InputError("similarity matrix must be square");
  if (!X.allFinite() || (X.array() < 0.0).any())
    throw InputError("similarity matrix must be finite and nonnegative");
  const auto n = X.cols();
  SymmetricAffinity W;
  W.values = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double num = (X.col(i) - X.col(j)).cwiseAbs().sum();
      const double den = (X.col(i) + X.col(j)).sum();
      double w = 1.0;
      if (den > 0.0) {
        w = std::clamp(1.0 - num / den, 0.0, 1.0);
      } else {
        ++W.zero_denominator_pairs;
      }
      W.values(i, j) = w;
      W.values(j, i) = w;
    }
  }
  return W;
}

inline SymmetricAffinity bray_curtis_symmetrize(const ClassSimilarityMatrix& X) {
  return bray_curtis_symmetrize(X.values);
}

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_SIMILARITY_HPP
