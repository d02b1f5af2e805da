#ifndef SPECTRAL_COMPLEXITY_ANALYSIS_HPP
#define SPECTRAL_COMPLEXITY_ANALYSIS_HPP

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "errors.hpp"
#include "ingest.hpp"

namespace spectral_complexity {

struct CorrelationResult {
  double r = 0.0;
  double p_value = 1.0;
  std::size_t sample_count = 0;
};

/// Sample Pearson correlation with a two-tailed p-value from Student's t on
/// m - 2 degrees of freedom.
inline CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("pearson: length mismatch");
  const auto m = x.size();
  if (m < 3) throw InputError("pearson: need at least 3 observations");
  for (std::size_t i = 0; i < m; ++i)
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw NumericError("pearson: non-finite observation");

  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(m);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(m);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw NumericError("pearson: zero variance");

  CorrelationResult out;
  out.sample_count = m;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(m - 2);
  const double one_minus_r2 = (1.0 - out.r) * (1.0 + out.r);
  if (one_minus_r2 <= 0.0) {
    out.p_value = 0.0;
  } else {
    // P(|T| > t) = I_{df / (df + t^2)}(df / 2, 1 / 2) and df / (df + t^2) = 1 - r^2.
    out.p_value = std::clamp(boost::math::ibeta(0.5 * df, 0.5, one_minus_r2), 0.0, 1.0);
  }
  return out;
}

/// Ranks starting at 1, ties receiving their average rank.
inline std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

/// Spearman rank correlation (Pearson on average ranks).
inline CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

/// Two-dimensional classical MDS embedding of an n x n dissimilarity matrix.
struct InterClassMap {
  Matrix coordinates; // n x 2
  double stress = 0.0;
};

/// Torgerson scaling: double-centre the squared dissimilarities and keep the
/// top two eigenpairs. Each axis is flipped so its largest-magnitude coordinate
/// is positive; ties go to the highest index.
inline InterClassMap classical_mds(const Matrix& U) {
  const auto n = U.rows();
  if (n != U.cols() || n < 2) throw InputError("MDS needs a square dissimilarity matrix with n >= 2");
  const double scale = std::max(1.0, U.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(U(i, i)) > 1e-12 * scale) throw InputError("MDS: dissimilarity diagonal must be zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(U(i, j)) || U(i, j) < 0.0) throw InputError("MDS: dissimilarities must be nonnegative");
      if (std::abs(U(i, j) - U(j, i)) > 1e-12 * scale) throw InputError("MDS: dissimilarity matrix is asymmetric");
    }
  }

  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd B = -0.5 * centering * U.cwiseProduct(U) * centering;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (B + B.transpose()));
  if (solver.info() != Eigen::Success) throw NumericError("MDS eigensolver did not converge");

  InterClassMap map;
  map.coordinates = Matrix::Zero(n, 2);
  for (Eigen::Index axis = 0; axis < 2 && axis < n; ++axis) {
    const auto idx = n - 1 - axis; // eigenvalues ascend
    const double lambda = std::max(0.0, solver.eigenvalues()(idx));
    Eigen::VectorXd coord = solver.eigenvectors().col(idx) * std::sqrt(lambda);
    const double top = coord.cwiseAbs().maxCoeff();
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      if (std::abs(coord(i)) >= top * (1.0 - 1e-9)) {
        if (coord(i) < 0.0) coord = -coord;
        break;
      }
    }
    map.coordinates.col(axis) = coord;
  }
  // Remove the round-off drift of the eigenvectors away from the centroid.
  map.coordinates.rowwise() -= map.coordinates.colwise().mean();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = U(i, j) - (map.coordinates.row(i) - map.coordinates.row(j)).norm();
      map.stress += r * r;
    }
  return map;
}

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_ANALYSIS_HPP
