#ifndef SPECTRAL_COMPLEXITY_SYNTHETIC_HPP
#define SPECTRAL_COMPLEXITY_SYNTHETIC_HPP

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ingest.hpp"
#include "random.hpp"

namespace spectral_complexity {

/// Gaussian mixture with explicit class priors.
struct GaussianMixture {
  std::vector<Vector> means;
  std::vector<Eigen::MatrixXd> covariances;
  std::vector<double> priors;
};

struct BayesErrorEstimate {
  double error = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};

/// Monte-Carlo Bayes error: draw (class, x) from the mixture and count how often
/// the maximum-posterior class under the true densities differs from the truth.
inline BayesErrorEstimate bayes_error_oracle(const GaussianMixture& mix, std::size_t trials, std::uint64_t seed) {
  const auto n = mix.means.size();
  if (n < 1 || mix.covariances.size() != n || mix.priors.size() != n)
    throw InputError("bayes_error_oracle: mixture components disagree in count");
  if (trials < 10000) throw InputError("bayes_error_oracle: need at least 1e4 trials");
  const auto dim = mix.means[0].size();
  double prior_total = 0.0;
  for (auto p : mix.priors) {
    if (!(p >= 0.0)) throw InputError("bayes_error_oracle: negative prior");
    prior_total += p;
  }
  if (!(prior_total > 0.0)) throw InputError("bayes_error_oracle: priors sum to zero");

  std::vector<Eigen::MatrixXd> factors;
  std::vector<double> log_weights;
  for (std::size_t c = 0; c < n; ++c) {
    if (mix.means[c].size() != dim || mix.covariances[c].rows() != dim || mix.covariances[c].cols() != dim)
      throw InputError("bayes_error_oracle: dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(mix.covariances[c]);
    const Eigen::MatrixXd factor = llt.matrixL();
    if (llt.info() != Eigen::Success || factor.diagonal().minCoeff() <= 0.0)
      throw NumericError("bayes_error_oracle: singular covariance for component " + std::to_string(c));
    factors.push_back(factor);
    const double log_det = 2.0 * factor.diagonal().array().log().sum();
    log_weights.push_back(mix.priors[c] > 0.0 ? std::log(mix.priors[c] / prior_total) - 0.5 * log_det
                                              : -std::numeric_limits<double>::infinity());
  }

  Engine rng(seed);
  std::size_t errors = 0;
  Vector z(dim);
  for (std::size_t t = 0; t < trials; ++t) {
    double u = uniform_unit(rng) * prior_total;
    std::size_t truth = 0;
    while (truth + 1 < n && (u >= mix.priors[truth] || mix.priors[truth] == 0.0)) u -= mix.priors[truth++];
    for (Eigen::Index i = 0; i < dim; ++i) z(i) = standard_normal(rng);
    const Vector x = mix.means[truth] + factors[truth] * z;

    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      if (mix.priors[c] == 0.0) continue;
      const Vector w = factors[c].triangularView<Eigen::Lower>().solve(x - mix.means[c]);
      const double score = log_weights[c] - 0.5 * w.squaredNorm();
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    errors += best != truth;
  }
  BayesErrorEstimate out;
  out.trials = trials;
  out.error = static_cast<double>(errors) / static_cast<double>(trials);
  out.standard_error = std::sqrt(out.error * (1.0 - out.error) / static_cast<double>(trials));
  return out;
}

/// Unit-separation class means: a regular simplex with edge 1 centred at the
/// origin when it fits in `dim`, otherwise signed axis directions in growing
/// shells (+e_a, -e_a, +2e_a, -2e_a, ...) whose closest pair is 1 apart.
inline std::vector<Vector> unit_class_means(std::size_t classes, std::size_t dim) {
  std::vector<Vector> means(classes, Vector::Zero(static_cast<Eigen::Index>(dim)));
  if (classes <= dim + 1) {
    // Standard basis of R^classes, centred, rotated into the first classes-1 axes.
    Eigen::MatrixXd vertices = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(classes),
                                                         static_cast<Eigen::Index>(classes));
    vertices.rowwise() -= vertices.colwise().mean();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(vertices.transpose());
    const Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd coords = vertices * q; // last coordinate is zero
    for (std::size_t c = 0; c < classes; ++c)
      for (std::size_t a = 0; a + 1 < classes; ++a)
        means[c](static_cast<Eigen::Index>(a)) = coords(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(a)) /
                                                 std::numbers::sqrt2;
    return means;
  }
  for (std::size_t c = 0; c < classes; ++c) {
    const auto axis = c % dim;
    const auto turn = c / dim;
    const double sign = turn % 2 == 0 ? 1.0 : -1.0;
    const double radius = static_cast<double>(turn / 2 + 1);
    means[c](static_cast<Eigen::Index>(axis)) = sign * radius;
  }
  // Closest pairs: same-sign neighbours on one axis (distance 1) or, with a single
  // shell, adjacent axes at distance sqrt(2) / opposite ends at 2.
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < classes; ++a)
    for (std::size_t b = a + 1; b < classes; ++b) closest = std::min(closest, (means[a] - means[b]).norm());
  for (auto& m : means) m /= closest;
  return means;
}

struct SyntheticSuite {
  std::vector<LabeledDataset> datasets;
  std::vector<double> separations;
  std::vector<double> oracle_errors;
  std::vector<double> oracle_standard_errors;
};

struct SuiteConfig {
  std::size_t classes = 10;
  std::size_t dim = 3;
  std::size_t per_class = 200;
  std::vector<double> separations{8, 5, 3, 2, 1, 0.5};
  std::size_t trials = 100000;
  std::uint64_t seed = 42;
};

/// One identity-covariance Gaussian dataset per separation, plus its Bayes error.
inline SyntheticSuite gen_gaussian_suite(const SuiteConfig& cfg) {
  if (cfg.classes < 2) throw InputError("suite needs at least 2 classes");
  if (cfg.dim < 1) throw InputError("suite needs at least 1 dimension");
  if (cfg.per_class < 10) throw InputError("suite needs at least 10 samples per class");
  if (cfg.separations.empty()) throw InputError("suite needs at least one separation");
  for (auto s : cfg.separations)
    if (!(s >= 0.0) || !std::isfinite(s)) throw InputError("separations must be finite and nonnegative");

  const auto unit = unit_class_means(cfg.classes, cfg.dim);
  const auto d = static_cast<Eigen::Index>(cfg.dim);
  SyntheticSuite suite;
  suite.separations = cfg.separations;
  for (std::size_t index = 0; index < cfg.separations.size(); ++index) {
    const double s = cfg.separations[index];
    GaussianMixture mix;
    for (std::size_t c = 0; c < cfg.classes; ++c) {
      mix.means.push_back(unit[c] * s);
      mix.covariances.push_back(Eigen::MatrixXd::Identity(d, d));
      mix.priors.push_back(1.0 / static_cast<double>(cfg.classes));
    }

    LabeledDataset ds;
    ds.features.resize(static_cast<Eigen::Index>(cfg.classes * cfg.per_class), d);
    Engine rng(derive_seed(cfg.seed, {index, 0}));
    Eigen::Index row = 0;
    for (std::size_t c = 0; c < cfg.classes; ++c) {
      ds.class_names.push_back("c" + std::to_string(c));
      for (std::size_t i = 0; i < cfg.per_class; ++i, ++row) {
        for (Eigen::Index a = 0; a < d; ++a) ds.features(row, a) = mix.means[c](a) + standard_normal(rng);
        ds.labels.push_back(static_cast<int>(c));
      }
    }
    ds.source_path = "synthetic:s=" + std::to_string(s);
    ds.source_format = "synthetic";
    validate(ds);
    suite.datasets.push_back(std::move(ds));

    const auto oracle = bayes_error_oracle(mix, cfg.trials, derive_seed(cfg.seed, {index, 1}));
    suite.oracle_errors.push_back(oracle.error);
    suite.oracle_standard_errors.push_back(oracle.standard_error);
  }
  return suite;
}

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_SYNTHETIC_HPP
