#ifndef SPECTRAL_COMPLEXITY_SPECTRAL_HPP
#define SPECTRAL_COMPLEXITY_SPECTRAL_HPP

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "similarity.hpp"

namespace spectral_complexity {

/// Unnormalized graph Laplacian L = D - W of a class affinity.
struct Laplacian {
  Matrix values;
};

/// Builds L = D - W. The diagonal is the off-diagonal row sum, so the unit
/// self-affinities cancel exactly.
inline Laplacian build_laplacian(const Matrix& W) {
  if (W.rows() != W.cols()) throw InputError("affinity must be square");
  const auto n = W.rows();
  Laplacian L;
  L.values = -W;
  for (Eigen::Index i = 0; i < n; ++i) {
    double degree = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) degree += W(i, j);
    L.values(i, i) = degree;
  }
  return L;
}

inline Laplacian build_laplacian(const SymmetricAffinity& W) { return build_laplacian(W.values); }

/// Ascending, nonnegative Laplacian eigenvalues.
struct Spectrum {
  std::vector<double> eigenvalues;

  std::size_t size() const { return eigenvalues.size(); }
};

/// Eigenvalues of L sorted ascending. Values within 1e-8 * max(1, largest)
/// below zero are clamped to zero; anything further below is an error.
inline Spectrum spectrum(const Laplacian& L) {
  const auto n = L.values.rows();
  if (n != L.values.cols()) throw InputError("Laplacian must be square");
  if (n == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L.values, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
  Spectrum s;
  s.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  const double tau = 1e-8 * std::max(1.0, s.eigenvalues.back());
  for (auto& v : s.eigenvalues) {
    if (!std::isfinite(v)) throw NumericError("non-finite eigenvalue");
    if (v < -tau) throw NumericError("significantly negative Laplacian eigenvalue " + std::to_string(v));
    if (v < 0.0) v = 0.0;
  }
  return s;
}

namespace detail {

inline void require_pairs(const Spectrum& s) {
  if (s.size() < 2) throw InputError("spectral scores need at least 2 eigenvalues");
}

inline double cummax_sum(std::span<const double> increments) {
  double running = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (double v : increments) {
    running = std::max(running, v);
    total += running;
  }
  return total;
}

} // namespace detail

/// Scaled area increments (l_{i+1}^2 - l_i^2) / (2 (n - i)), i = 0 .. n-2.
inline std::vector<double> scaled_area_increments(const Spectrum& s) {
  detail::require_pairs(s);
  const auto n = s.size();
  const auto& l = s.eigenvalues;
  std::vector<double> out(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    out[i] = (l[i + 1] * l[i + 1] - l[i] * l[i]) / (2.0 * static_cast<double>(n - i));
  return out;
}

/// Position-scaled eigengaps (l_{i+1} - l_i) / (n - i).
inline std::vector<double> scaled_gradients(const Spectrum& s) {
  detail::require_pairs(s);
  const auto n = s.size();
  const auto& l = s.eigenvalues;
  std::vector<double> out(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = (l[i + 1] - l[i]) / static_cast<double>(n - i);
  return out;
}

/// Sum of the cumulative maximum of the scaled area increments.
inline double cmsauls(const Spectrum& s) { return detail::cummax_sum(scaled_area_increments(s)); }

/// Cumulative spectral gradient: sum of the cumulative maximum of scaled eigengaps.
inline double csg(const Spectrum& s) { return detail::cummax_sum(scaled_gradients(s)); }

/// Trapezoidal area under the index-vs-eigenvalue curve.
inline double auls(const Spectrum& s) {
  detail::require_pairs(s);
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) area += 0.5 * (s.eigenvalues[i] + s.eigenvalues[i + 1]);
  return area;
}

struct ComplexityScores {
  double cmsauls = 0.0;
  double csg = 0.0;
  double auls = 0.0;
};

inline ComplexityScores score_spectrum(const Spectrum& s) { return {cmsauls(s), csg(s), auls(s)}; }

inline constexpr const char* cmsauls_definition = "sum cummax((l[i+1]^2 - l[i]^2) / (2 (n - i)))";
inline constexpr const char* csg_definition = "sum cummax((l[i+1] - l[i]) / (n - i))";
inline constexpr const char* auls_definition = "trapezoid";

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_SPECTRAL_HPP
