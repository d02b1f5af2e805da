#ifndef SPECTRAL_COMPLEXITY_REDUCE_HPP
#define SPECTRAL_COMPLEXITY_REDUCE_HPP

#include <Eigen/SVD>

#include <algorithm>
#include <string>
#include <vector>

#include "ingest.hpp"

namespace spectral_complexity {

struct ReductionMeta {
  std::string method = "passthrough"; // passthrough | external | pca
  std::size_t dim = 0;
  std::vector<double> explained_variance_ratio;
};

/// Low-dimensional embedding of a LabeledDataset; labels are carried over unchanged.
struct EmbeddedDataset {
  Matrix features;
  Labels labels;
  std::vector<std::string> class_names;
  ReductionMeta reduction;

  std::size_t samples() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t dims() const { return static_cast<std::size_t>(features.cols()); }
  std::size_t classes() const { return class_names.size(); }
};

/// Wraps already-reduced features (tests, synthetic suites) without copying labels twice.
inline EmbeddedDataset embed_as_is(const LabeledDataset& ds) {
  EmbeddedDataset out{ds.features, ds.labels, ds.class_names, {}};
  out.reduction.method = ds.source_format == "binary" ? "external" : "passthrough";
  out.reduction.dim = ds.dims();
  return out;
}

struct PcaModel {
  Vector mean;
  Matrix components; // one orthonormal component per row, decreasing variance
  std::vector<double> explained_variance_ratio;

  std::size_t dim() const { return static_cast<std::size_t>(components.rows()); }

  Matrix transform(const Matrix& x) const {
    return (x.rowwise() - mean.transpose()) * components.transpose();
  }
};

/// Fits PCA from the SVD of the centered data. `reduction` must be one of the
/// PCA kinds. Each component's first non-negligible coordinate is made positive.
inline PcaModel fit_pca(const Matrix& x, const Reduction& reduction) {
  const auto rows = x.rows();
  const auto cols = x.cols();
  if (rows < 2) throw InputError("PCA needs at least 2 samples");
  const auto max_dim = std::min<Eigen::Index>(rows - 1, cols);
  if (reduction.kind == ReductionKind::pca_dim && (reduction.dim < 1 || reduction.dim > max_dim))
    throw InputError("PCA dimension " + std::to_string(reduction.dim) + " outside [1, " +
                     std::to_string(max_dim) + "]");
  if (reduction.kind == ReductionKind::pca_rate && !(reduction.rate > 0.0 && reduction.rate <= 1.0))
    throw InputError("PCA contribution rate must be in (0, 1]");
  if (reduction.kind == ReductionKind::passthrough) throw InputError("fit_pca called without a PCA mode");

  PcaModel model;
  model.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - model.mean.transpose();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double total = sv.squaredNorm();
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if (!(total > 1e-24 * scale * scale * static_cast<double>(rows)))
    throw NumericError("zero total variance: all samples are identical");

  std::vector<double> ratios;
  for (Eigen::Index i = 0; i < max_dim; ++i) ratios.push_back(sv(i) * sv(i) / total);

  Eigen::Index keep = 0;
  if (reduction.kind == ReductionKind::pca_dim) {
    keep = reduction.dim;
  } else {
    double cumulative = 0.0;
    while (keep < max_dim) {
      cumulative += ratios[static_cast<std::size_t>(keep++)];
      if (cumulative >= reduction.rate - 1e-12) break;
    }
  }

  model.components = svd.matrixV().leftCols(keep).transpose();
  for (Eigen::Index r = 0; r < keep; ++r) {
    auto row = model.components.row(r);
    const double tiny = 1e-12 * row.cwiseAbs().maxCoeff();
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (std::abs(row(c)) > tiny) {
        if (row(c) < 0) row *= -1.0;
        break;
      }
    }
  }
  model.explained_variance_ratio.assign(ratios.begin(), ratios.begin() + keep);
  return model;
}

/// Applies the reduction named in `params` to the dataset.
inline EmbeddedDataset apply_reduction(const LabeledDataset& ds, const HyperParams& params) {
  if (params.reduction.kind == ReductionKind::passthrough) return embed_as_is(ds);
  const auto model = fit_pca(ds.features, params.reduction);
  EmbeddedDataset out{model.transform(ds.features), ds.labels, ds.class_names, {}};
  out.reduction.method = "pca";
  out.reduction.dim = model.dim();
  out.reduction.explained_variance_ratio = model.explained_variance_ratio;
  return out;
}

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_REDUCE_HPP
