#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <iterator>
#include <cmath>
#include <cstring>
#include <numbers>

#include "test_helpers.hpp"

namespace sc = spectral_complexity;
using test_support::blobs;
using test_support::dataset;

namespace {

sc::Matrix column(std::initializer_list<double> values) {
  sc::Matrix m(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) m(i++, 0) = v;
  return m;
}

sc::HyperParams params(int M, int E, int k, std::uint64_t seed = 42) {
  sc::HyperParams p;
  p.M = M;
  p.E = E;
  p.k = k;
  p.seed = seed;
  return p;
}

bool bit_equal(const sc::Matrix& a, const sc::Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

} // namespace

TEST(KnnDensity, HandSortedNeighbours) {
  const auto targets = column({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  Eigen::RowVectorXd q(1);
  q << 4.5;
  const auto est = sc::knn_density(q, targets, 3, 1e-12);
  EXPECT_NEAR(est.density, 0.1, 1e-15);
  EXPECT_FALSE(est.degenerate);
}

TEST(KnnDensity, ChebyshevRadiusInTwoDimensions) {
  sc::Matrix targets(3, 2);
  targets << 1, 0.5, -0.25, 2, 3, 3;
  Eigen::RowVectorXd q(2);
  q << 0, 0;
  // Max-norm distances 1, 2, 3: k = 2 gives side 4, volume 16.
  EXPECT_NEAR(sc::knn_density(q, targets, 2, 1e-12).density, 2.0 / (3.0 * 16.0), 1e-15);
}

TEST(KnnDensity, DuplicateTargetsHitTheFloor) {
  const auto targets = column({2, 2, 2, 7});
  Eigen::RowVectorXd q(1);
  q << 2;
  const auto est = sc::knn_density(q, targets, 3, 1e-12);
  EXPECT_TRUE(est.degenerate);
  EXPECT_TRUE(std::isfinite(est.density));
  EXPECT_NEAR(est.density, 3.0 / (4.0 * 2e-12), 1.0);
}

TEST(KnnDensity, Preconditions) {
  const auto targets = column({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  Eigen::RowVectorXd q(1);
  q << 0;
  EXPECT_THROW(sc::knn_density(q, targets, 11, 1e-12), sc::InputError);
  EXPECT_THROW(sc::knn_density(q, sc::Matrix(0, 1), 1, 1e-12), sc::InputError);
  const std::vector<char> mask{1, 1, 1, 1, 1, 1, 1, 1, 0, 0};
  EXPECT_THROW(sc::knn_density(q, targets, 3, 1e-12, mask), sc::InputError);
  EXPECT_NO_THROW(sc::knn_density(q, targets, 2, 1e-12, mask));
}

TEST(KnnDensity, ExclusionShrinksUsableCount) {
  const auto targets = column({0, 1, 2, 3});
  Eigen::RowVectorXd q(1);
  q << 0;
  const std::vector<char> mask{1, 0, 0, 0};
  // Usable {1, 2, 3}; k = 1 -> r = 1, V = 2, E = 3.
  EXPECT_NEAR(sc::knn_density(q, targets, 1, 1e-12, mask).density, 1.0 / 6.0, 1e-15);
}

TEST(ClassPairExpectation, SinglePointSource) {
  const auto emb = test_support::embedded({{0}, {1}, {2}, {3}}, {0, 1, 1, 1});
  const auto parts = sc::class_partition(emb.labels, emb.classes());
  const auto est = sc::class_pair_expectation(0, 1, emb, parts, params(7, 3, 3), 1e-12);
  EXPECT_NEAR(est.value, 1.0 / 6.0, 1e-15);
  EXPECT_TRUE(est.source_replaced);
  EXPECT_FALSE(est.target_replaced);
}

TEST(ClassPairExpectation, IdenticalClassesMatchTheSelfEntry) {
  // Two labels over identical sample sets, larger than M and E so subsampling differs.
  auto base = blobs({{0, 0}}, 300, 1.0, 3);
  sc::Matrix twice(600, 2);
  twice << base.features, base.features;
  sc::LabeledDataset ds;
  ds.features = twice;
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < 300; ++i) ds.labels.push_back(c);
  ds.class_names = {"a", "b"};
  const auto emb = sc::embed_as_is(ds);
  const auto parts = sc::class_partition(emb.labels, 2);
  const auto p = params(200, 200, 3);
  const double self = sc::class_pair_expectation(0, 0, emb, parts, p, 1e-12).value;
  const double cross = sc::class_pair_expectation(0, 1, emb, parts, p, 1e-12).value;
  EXPECT_NEAR(cross, self, 0.2 * self);
}

TEST(ClassPairExpectation, DistantTargetVanishes) {
  const auto ds = blobs({{0, 0}, {1000, 1000}}, 50, 0.1, 4);
  const auto emb = sc::embed_as_is(ds);
  const auto parts = sc::class_partition(emb.labels, 2);
  EXPECT_LT(sc::class_pair_expectation(0, 1, emb, parts, params(50, 50, 3), 1e-12).value, 1e-6);
}

TEST(BuildSimilarity, SeparatedBlobs) {
  const auto ds = blobs({{0}, {100}}, 100, 0.01, 5);
  auto p = params(100, 100, 3);
  p.row_normalize = false;
  const auto raw = sc::build_similarity_matrix(sc::embed_as_is(ds), p);
  // k-th neighbour sits ~100 away: k / (E * 2r) = 3 / (100 * 200).
  EXPECT_NEAR(raw.values(0, 1), 1.5e-4, 1e-5);
  EXPECT_NEAR(raw.values(1, 0), 1.5e-4, 1e-5);
  EXPECT_GT(raw.values(0, 0), 1e3 * raw.values(0, 1));
  EXPECT_FALSE(raw.row_normalized);

  p.row_normalize = true;
  const auto X = sc::build_similarity_matrix(sc::embed_as_is(ds), p);
  EXPECT_TRUE(X.row_normalized);
  // k-NN radii are finite, so the cross-class share is small but never zero.
  EXPECT_NEAR(X.values(0, 0), 1.0, 1e-5);
  EXPECT_NEAR(X.values(1, 1), 1.0, 1e-5);
  EXPECT_LT(X.values(0, 1), 1e-5);
  EXPECT_NEAR(X.values(0, 0) + X.values(0, 1), 1.0, 1e-12);
}

TEST(BuildSimilarity, DuplicatedClassRowsAreEven) {
  const auto base = blobs({{0, 0, 0}}, 200, 1.0, 6);
  sc::LabeledDataset ds;
  ds.features.resize(400, 3);
  ds.features << base.features, base.features;
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < 200; ++i) ds.labels.push_back(c);
  ds.class_names = {"x", "x-copy"};
  const auto X = sc::build_similarity_matrix(sc::embed_as_is(ds), params(200, 200, 3));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(X.values(i, j), 0.5, 0.1);
  EXPECT_GE(sc::bray_curtis_symmetrize(X).values(0, 1), 0.9);
}

TEST(BuildSimilarity, RowsSumToOneAndEntriesNonnegative) {
  const auto ds = blobs({{0, 0}, {1, 0}, {0, 1.5}, {4, 4}}, 60, 1.0, 7);
  const auto X = sc::build_similarity_matrix(sc::embed_as_is(ds), params(40, 40, 3));
  EXPECT_TRUE(X.values.allFinite());
  EXPECT_GE(X.values.minCoeff(), 0.0);
  for (Eigen::Index i = 0; i < X.values.rows(); ++i) EXPECT_NEAR(X.values.row(i).sum(), 1.0, 1e-9);
  EXPECT_EQ(X.diagnostics.density_evaluations, 40u * 16u);
}

TEST(BuildSimilarity, SmallClassesSampleWithReplacement) {
  const auto ds = blobs({{0, 0}, {2, 2}}, 20, 1.0, 8);
  const auto X = sc::build_similarity_matrix(sc::embed_as_is(ds), params(100, 100, 3));
  EXPECT_TRUE(X.diagnostics.replacement_sampled[0]);
  EXPECT_TRUE(X.diagnostics.replacement_sampled[1]);
  // repeated draws count once, so a query never sees k copies of itself
  EXPECT_EQ(X.diagnostics.degenerate_total(), 0u);
  EXPECT_TRUE(X.values.allFinite());
  // both classes overlap heavily; the diagonal must not swamp the row
  EXPECT_GT(X.values(0, 1), 0.05);
  EXPECT_GT(X.values(1, 0), 0.05);
}

TEST(ClassPairExpectation, SmallTargetClassUsesDistinctRows) {
  // 4 points, E = 50: the distinct target set is the whole class
  const auto emb = test_support::embedded({{0.0}, {1.0}, {3.0}, {6.0}, {10.0}, {11.0}, {12.0}, {13.0}}, {0, 0, 0, 0, 1, 1, 1, 1});
  auto p = params(50, 50, 2);
  const auto partition = sc::class_partition(emb.labels, emb.classes());
  const auto est = sc::class_pair_expectation(0, 0, emb, partition, p, sc::radius_floor(emb.features));
  EXPECT_TRUE(est.target_replaced);
  EXPECT_EQ(est.degenerate, 0u);
  // second-nearest Chebyshev radii over {0,1,3,6} from each point: 1, 1, 2, 3
  const double by_point[] = {2.0 / (4 * 2.0), 2.0 / (4 * 2.0), 2.0 / (4 * 4.0), 2.0 / (4 * 6.0)};
  const double lo = *std::min_element(std::begin(by_point), std::end(by_point));
  const double hi = *std::max_element(std::begin(by_point), std::end(by_point));
  EXPECT_GE(est.value, lo);
  EXPECT_LE(est.value, hi);
}

TEST(BuildSimilarity, DeterministicAcrossRunsAndThreads) {
  const auto ds = blobs({{0, 0}, {1, 1}, {2, 0}, {0, 3}, {5, 5}}, 80, 1.0, 9);
  const auto emb = sc::embed_as_is(ds);
  const auto a = sc::build_similarity_matrix(emb, params(50, 50, 3, 11));
  const auto b = sc::build_similarity_matrix(emb, params(50, 50, 3, 11));
  const auto c = sc::build_similarity_matrix(emb, params(50, 50, 3, 11), 4);
  const auto d = sc::build_similarity_matrix(emb, params(50, 50, 3, 12));
  EXPECT_TRUE(bit_equal(a.values, b.values));
  EXPECT_TRUE(bit_equal(a.values, c.values));
  EXPECT_FALSE(bit_equal(a.values, d.values));
}

TEST(BuildSimilarity, PropagatesPreconditionErrors) {
  const auto ds = blobs({{0}, {1}}, 20, 1.0, 10);
  EXPECT_THROW(sc::build_similarity_matrix(sc::embed_as_is(ds), params(10, 10, 11)), sc::InputError);
  auto one_class = ds;
  one_class.class_names.pop_back();
  for (auto& l : one_class.labels) l = 0;
  EXPECT_THROW(sc::build_similarity_matrix(sc::embed_as_is(one_class), params(10, 10, 3), 4), sc::InputError);
}

TEST(BuildSimilarity, RelabelingPermutesTheMatrix) {
  const auto ds = blobs({{0, 0}, {1, 0.5}, {0.5, 2}, {3, 3}}, 50, 1.0, 12);
  const std::vector<int> perm{2, 0, 3, 1}; // old class c becomes perm[c]
  sc::LabeledDataset relabeled = ds;
  relabeled.class_names.assign(4, "");
  for (std::size_t c = 0; c < 4; ++c) relabeled.class_names[static_cast<std::size_t>(perm[c])] = ds.class_names[c];
  for (auto& l : relabeled.labels) l = perm[static_cast<std::size_t>(l)];

  sc::RunOptions opts;
  opts.params = params(40, 40, 3);
  const auto a = sc::run_complexity(ds, opts);
  const auto b = sc::run_complexity(relabeled, opts);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      EXPECT_EQ(a.similarity.values(i, j), b.similarity.values(perm[static_cast<std::size_t>(i)],
                                                               perm[static_cast<std::size_t>(j)]));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a.spectrum.eigenvalues[i], b.spectrum.eigenvalues[i], 1e-9);
}

TEST(BuildSimilarity, MonteCarloSpreadShrinksWithM) {
  const auto ds = blobs({{0, 0}, {1.5, 0}}, 500, 1.0, 13);
  const auto emb = sc::embed_as_is(ds);
  auto spread = [&](int M) {
    std::vector<double> v;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto p = params(M, 100, 3, seed);
      p.row_normalize = false;
      v.push_back(sc::build_similarity_matrix(emb, p).values(0, 1));
    }
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return std::sqrt(var / static_cast<double>(v.size() - 1));
  };
  EXPECT_LT(spread(400), spread(50));
}

TEST(KnnDensity, ConsistentForStandardGaussian) {
  sc::Engine rng(2024);
  sc::Matrix targets(2000, 1);
  for (Eigen::Index i = 0; i < targets.rows(); ++i) targets(i, 0) = sc::standard_normal(rng);
  double sum = 0.0;
  Eigen::RowVectorXd q(1);
  for (int i = 0; i < 100; ++i) {
    q(0) = sc::standard_normal(rng);
    sum += sc::knn_density(q, targets, 50, sc::radius_floor(targets)).density;
  }
  const double expected = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
  EXPECT_NEAR(sum / 100.0, expected, 0.25 * expected);
}

TEST(BuildSimilarity, WorkGrowsQuadraticallyInClasses) {
  auto run = [](std::size_t classes) {
    std::vector<std::vector<double>> centres;
    for (std::size_t c = 0; c < classes; ++c) centres.push_back({static_cast<double>(c), 0.0});
    const auto emb = sc::embed_as_is(blobs(centres, 60, 1.0, 14));
    const auto start = std::chrono::steady_clock::now();
    const auto X = sc::build_similarity_matrix(emb, params(60, 60, 3));
    const auto elapsed = std::chrono::steady_clock::now() - start;
    return std::pair{X.diagnostics.density_evaluations, elapsed};
  };
  const auto [work4, time4] = run(4);
  const auto [work8, time8] = run(8);
  const auto [work16, time16] = run(16);
  EXPECT_EQ(work8, 4 * work4);
  EXPECT_EQ(work16, 4 * work8);
  EXPECT_LT(time4, time16);
}

TEST(BrayCurtis, HandExamples) {
  sc::Matrix disjoint(2, 2);
  disjoint << 1, 0, 0, 1;
  EXPECT_EQ(sc::bray_curtis_symmetrize(disjoint).values(0, 1), 0.0);

  sc::Matrix same(2, 2);
  same << 0.3, 0.3, 0.7, 0.7;
  EXPECT_EQ(sc::bray_curtis_symmetrize(same).values(0, 1), 1.0);

  sc::Matrix hand(2, 2);
  hand << 2, 1, 1, 1; // columns [2,1] and [1,1]
  EXPECT_NEAR(sc::bray_curtis_symmetrize(hand).values(0, 1), 0.8, 1e-15);
}

TEST(BrayCurtis, ZeroColumnsDefineUnitAffinity) {
  sc::Matrix X = sc::Matrix::Zero(3, 3);
  X(0, 0) = 1.0;
  const auto W = sc::bray_curtis_symmetrize(X);
  EXPECT_EQ(W.values(1, 2), 1.0);
  EXPECT_EQ(W.zero_denominator_pairs, 1u);
  EXPECT_THROW(sc::bray_curtis_symmetrize(sc::Matrix::Constant(2, 2, -1.0)), sc::InputError);
}

TEST(BrayCurtis, SymmetricBoundedUnitDiagonal) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 12);
    sc::Matrix X(n, n);
    for (Eigen::Index i = 0; i < n * n; ++i) X.data()[i] = u(rng);
    const auto W = sc::bray_curtis_symmetrize(X).values;
    EXPECT_TRUE(W == W.transpose());
    EXPECT_GE(W.minCoeff(), 0.0);
    EXPECT_LE(W.maxCoeff(), 1.0);
    for (Eigen::Index i = 0; i < n; ++i) EXPECT_EQ(W(i, i), 1.0);
  }
}
