#ifndef SPECTRAL_COMPLEXITY_BENCHMARK_HPP
#define SPECTRAL_COMPLEXITY_BENCHMARK_HPP

#include <map>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "pipeline.hpp"
#include "synthetic.hpp"

namespace spectral_complexity {

struct BenchmarkRow {
  double separation = 0.0;
  double oracle_error = 0.0;
  double oracle_standard_error = 0.0;
  ComplexityScores scores;
  std::optional<DescriptorReport> descriptors;
};

struct MetricCorrelation {
  std::string metric;
  CorrelationResult pearson;
  CorrelationResult rank;
};

struct BenchmarkResult {
  std::vector<BenchmarkRow> rows;
  std::vector<MetricCorrelation> correlations;
};

/// Scores every suite dataset and correlates each metric with the oracle error.
inline BenchmarkResult run_benchmark(const SyntheticSuite& suite, const RunOptions& opts) {
  if (suite.datasets.size() != suite.separations.size() || suite.datasets.size() != suite.oracle_errors.size())
    throw InputError("benchmark suite lists disagree in length");
  BenchmarkResult out;
  for (std::size_t i = 0; i < suite.datasets.size(); ++i) {
    const auto result = run_complexity(suite.datasets[i], opts);
    BenchmarkRow row;
    row.separation = suite.separations[i];
    row.oracle_error = suite.oracle_errors[i];
    if (i < suite.oracle_standard_errors.size()) row.oracle_standard_error = suite.oracle_standard_errors[i];
    row.scores = result.scores;
    row.descriptors = result.descriptors;
    out.rows.push_back(row);
  }

  std::vector<std::pair<std::string, std::vector<double>>> metrics{{"cmsauls", {}}, {"csg", {}}, {"auls", {}}};
  if (opts.descriptors)
    for (const char* name : {"f1", "f2", "f3", "n1", "n2", "n3"}) metrics.push_back({name, {}});
  for (const auto& row : out.rows) {
    metrics[0].second.push_back(row.scores.cmsauls);
    metrics[1].second.push_back(row.scores.csg);
    metrics[2].second.push_back(row.scores.auls);
    if (row.descriptors) {
      const auto& d = *row.descriptors;
      const double values[] = {d.f1, d.f2, d.f3, d.n1, d.n2, d.n3};
      for (std::size_t m = 0; m < 6; ++m) metrics[3 + m].second.push_back(values[m]);
    }
  }
  const auto& oracle = suite.oracle_errors;
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    const auto& [name, values] = metrics[m];
    if (m < 3) {
      out.correlations.push_back({name, pearson(values, oracle), spearman(values, oracle)});
      continue;
    }
    // Descriptors are extras: an infinite F1 or a constant column has no correlation.
    try {
      out.correlations.push_back({name, pearson(values, oracle), spearman(values, oracle)});
    } catch (const NumericError&) {
    }
  }
  return out;
}

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_BENCHMARK_HPP
