#ifndef SPECTRAL_COMPLEXITY_DESCRIPTORS_HPP
#define SPECTRAL_COMPLEXITY_DESCRIPTORS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "reduce.hpp"

// Classical complexity descriptors. F2 and F3 are averaged over one-vs-one
// class pairs; F1, N1-N3 and T2 are computed over the whole dataset.

namespace spectral_complexity {

struct DescriptorReport {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
  double n3 = 0.0;
  double t2 = 0.0;
  std::size_t n2_skipped_points = 0; // points alone in their class
};

/// Maximum over features of the Fisher ratio
/// sum_c n_c (mu_cf - mu_f)^2 / sum_c sum_{x in c} (x_f - mu_cf)^2.
inline double f1(const EmbeddedDataset& emb) {
  const auto parts = class_partition(emb.labels, emb.classes());
  const auto& x = emb.features;
  double best = 0.0;
  for (Eigen::Index f = 0; f < x.cols(); ++f) {
    const double mean = x.col(f).mean();
    double between = 0.0;
    double within = 0.0;
    for (const auto& members : parts) {
      if (members.empty()) continue;
      double class_mean = 0.0;
      for (auto i : members) class_mean += x(static_cast<Eigen::Index>(i), f);
      class_mean /= static_cast<double>(members.size());
      between += static_cast<double>(members.size()) * (class_mean - mean) * (class_mean - mean);
      for (auto i : members) {
        const double d = x(static_cast<Eigen::Index>(i), f) - class_mean;
        within += d * d;
      }
    }
    double ratio = 0.0;
    if (within > 0.0) {
      ratio = between / within;
    } else if (between > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    best = std::max(best, ratio);
  }
  return best;
}

namespace detail {

struct Interval {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
};

inline std::vector<Interval> feature_ranges(const Matrix& x, const std::vector<std::size_t>& members) {
  std::vector<Interval> out(static_cast<std::size_t>(x.cols()));
  for (auto i : members)
    for (Eigen::Index f = 0; f < x.cols(); ++f) {
      auto& r = out[static_cast<std::size_t>(f)];
      r.lo = std::min(r.lo, x(static_cast<Eigen::Index>(i), f));
      r.hi = std::max(r.hi, x(static_cast<Eigen::Index>(i), f));
    }
  return out;
}

inline double overlap_ratio(const Interval& a, const Interval& b) {
  const double span = std::max(a.hi, b.hi) - std::min(a.lo, b.lo);
  if (span <= 0.0) return a.lo == b.lo ? 1.0 : 0.0;
  return std::max(0.0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo)) / span;
}

template <typename PairFn>
double average_over_pairs(const EmbeddedDataset& emb, PairFn&& fn) {
  const auto parts = class_partition(emb.labels, emb.classes());
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      if (parts[a].empty() || parts[b].empty()) continue;
      total += fn(parts[a], parts[b]);
      ++pairs;
    }
  return pairs ? total / static_cast<double>(pairs) : 0.0;
}

} // namespace detail

/// Volume of the overlapping region: product of per-feature overlap ratios.
inline double f2(const EmbeddedDataset& emb) {
  return detail::average_over_pairs(emb, [&](const auto& a, const auto& b) {
    const auto ra = detail::feature_ranges(emb.features, a);
    const auto rb = detail::feature_ranges(emb.features, b);
    double volume = 1.0;
    for (std::size_t f = 0; f < ra.size(); ++f) volume *= detail::overlap_ratio(ra[f], rb[f]);
    return volume;
  });
}

/// Maximum individual feature efficiency: best fraction of the pair's points
/// lying outside one feature's overlap interval.
inline double f3(const EmbeddedDataset& emb) {
  const auto& x = emb.features;
  return detail::average_over_pairs(emb, [&](const auto& a, const auto& b) {
    const auto ra = detail::feature_ranges(x, a);
    const auto rb = detail::feature_ranges(x, b);
    const auto total = static_cast<double>(a.size() + b.size());
    double best = 0.0;
    for (std::size_t f = 0; f < ra.size(); ++f) {
      const double lo = std::max(ra[f].lo, rb[f].lo);
      const double hi = std::min(ra[f].hi, rb[f].hi);
      std::size_t outside = 0;
      for (const auto* members : {&a, &b})
        for (auto i : *members) {
          const double v = x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f));
          outside += v < lo || v > hi;
        }
      best = std::max(best, static_cast<double>(outside) / total);
    }
    return best;
  });
}

namespace detail {

inline Matrix pairwise_euclidean(const Matrix& x) {
  const auto n = x.rows();
  Matrix d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (x.row(i) - x.row(j)).norm();
  }
  return d;
}

} // namespace detail

/// Fraction of points touching a cross-class edge of the Euclidean minimum
/// spanning tree (Prim; ties go to the smaller index pair).
inline double n1(const EmbeddedDataset& emb) {
  const auto n = static_cast<Eigen::Index>(emb.samples());
  if (n < 2) throw InputError("N1 needs at least 2 samples");
  const Matrix d = detail::pairwise_euclidean(emb.features);
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<double> best(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n), -1);
  std::vector<char> borderline(static_cast<std::size_t>(n), 0);
  best[0] = 0.0;
  for (Eigen::Index step = 0; step < n; ++step) {
    Eigen::Index u = -1;
    for (Eigen::Index v = 0; v < n; ++v) {
      if (in_tree[static_cast<std::size_t>(v)]) continue;
      if (u < 0 || best[static_cast<std::size_t>(v)] < best[static_cast<std::size_t>(u)]) u = v;
    }
    in_tree[static_cast<std::size_t>(u)] = 1;
    const auto p = parent[static_cast<std::size_t>(u)];
    if (p >= 0 && emb.labels[static_cast<std::size_t>(p)] != emb.labels[static_cast<std::size_t>(u)])
      borderline[static_cast<std::size_t>(p)] = borderline[static_cast<std::size_t>(u)] = 1;
    for (Eigen::Index v = 0; v < n; ++v) {
      if (in_tree[static_cast<std::size_t>(v)]) continue;
      auto& bv = best[static_cast<std::size_t>(v)];
      auto& pv = parent[static_cast<std::size_t>(v)];
      if (d(u, v) < bv || (d(u, v) == bv && u < pv)) {
        bv = d(u, v);
        pv = u;
      }
    }
  }
  std::size_t count = 0;
  for (auto b : borderline) count += b;
  return static_cast<double>(count) / static_cast<double>(n);
}

namespace detail {

struct NeighbourTable {
  std::vector<double> same;  // NaN when the point is alone in its class
  std::vector<double> other;
  std::vector<Eigen::Index> nearest; // overall nearest neighbour, smallest index on ties
};

inline NeighbourTable neighbour_table(const EmbeddedDataset& emb) {
  const Matrix d = pairwise_euclidean(emb.features);
  const auto n = d.rows();
  NeighbourTable t;
  const double inf = std::numeric_limits<double>::infinity();
  t.same.assign(static_cast<std::size_t>(n), inf);
  t.other.assign(static_cast<std::size_t>(n), inf);
  t.nearest.assign(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto si = static_cast<std::size_t>(i);
    double nearest = inf;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = d(i, j);
      auto& slot = emb.labels[si] == emb.labels[static_cast<std::size_t>(j)] ? t.same[si] : t.other[si];
      slot = std::min(slot, v);
      if (v < nearest) {
        nearest = v;
        t.nearest[si] = j;
      }
    }
    if (t.same[si] == inf) t.same[si] = std::numeric_limits<double>::quiet_NaN();
  }
  return t;
}

} // namespace detail

/// Mean same-class nearest-neighbour distance over mean other-class one.
/// Points alone in their class are skipped; `skipped` receives their count.
inline double n2(const EmbeddedDataset& emb, std::size_t* skipped = nullptr) {
  const auto t = detail::neighbour_table(emb);
  double intra = 0.0;
  double extra = 0.0;
  std::size_t used = 0;
  std::size_t skip = 0;
  for (std::size_t i = 0; i < t.same.size(); ++i) {
    extra += t.other[i];
    if (std::isnan(t.same[i])) {
      ++skip;
      continue;
    }
    intra += t.same[i];
    ++used;
  }
  if (skipped) *skipped = skip;
  if (used == 0) return 0.0;
  intra /= static_cast<double>(used);
  extra /= static_cast<double>(t.other.size());
  if (extra == 0.0) return intra == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return intra / extra;
}

/// Leave-one-out 1-NN error rate.
inline double n3(const EmbeddedDataset& emb) {
  const auto t = detail::neighbour_table(emb);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < t.nearest.size(); ++i)
    wrong += emb.labels[i] != emb.labels[static_cast<std::size_t>(t.nearest[i])];
  return static_cast<double>(wrong) / static_cast<double>(t.nearest.size());
}

/// Samples per dimension.
inline double t2(std::size_t samples, std::size_t dims) {
  if (dims < 1) throw InputError("T2 needs at least one dimension");
  return static_cast<double>(samples) / static_cast<double>(dims);
}

inline double t2(const EmbeddedDataset& emb) { return t2(emb.samples(), emb.dims()); }

inline DescriptorReport compute_descriptors(const EmbeddedDataset& emb) {
  if (emb.samples() < 2) throw InputError("descriptors need at least 2 samples");
  DescriptorReport r;
  r.f1 = f1(emb);
  r.f2 = f2(emb);
  r.f3 = f3(emb);
  r.n1 = n1(emb);
  r.n2 = n2(emb, &r.n2_skipped_points);
  r.n3 = n3(emb);
  r.t2 = t2(emb);
  return r;
}

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_DESCRIPTORS_HPP
