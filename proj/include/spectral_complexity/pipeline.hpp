#ifndef SPECTRAL_COMPLEXITY_PIPELINE_HPP
#define SPECTRAL_COMPLEXITY_PIPELINE_HPP

#include <optional>

#include "descriptors.hpp"
#include "reduce.hpp"
#include "similarity.hpp"
#include "spectral.hpp"

namespace spectral_complexity {

struct RunOptions {
  HyperParams params;
  bool descriptors = false;
  unsigned threads = 1;
};

/// Everything one complexity run produces.
struct ComplexityResult {
  ReductionMeta reduction;
  ClassSimilarityMatrix similarity;
  SymmetricAffinity affinity;
  Laplacian laplacian;
  Spectrum spectrum;
  ComplexityScores scores;
  std::optional<DescriptorReport> descriptors;
};

/// Similarity, affinity, Laplacian, spectrum and scores of an embedding.
inline ComplexityResult run_embedded(const EmbeddedDataset& emb, const RunOptions& opts) {
  ComplexityResult out;
  out.reduction = emb.reduction;
  out.similarity = build_similarity_matrix(emb, opts.params, opts.threads);
  out.affinity = bray_curtis_symmetrize(out.similarity);
  out.laplacian = build_laplacian(out.affinity);
  out.spectrum = spectrum(out.laplacian);
  out.scores = score_spectrum(out.spectrum);
  if (opts.descriptors) out.descriptors = compute_descriptors(emb);
  return out;
}

/// Reduce, then run_embedded.
inline ComplexityResult run_complexity(const LabeledDataset& ds, const RunOptions& opts) {
  opts.params.validate();
  validate(ds);
  return run_embedded(apply_reduction(ds, opts.params), opts);
}

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_PIPELINE_HPP
