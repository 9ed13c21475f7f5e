#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "clusterkit/dataset.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/extraction.hpp"
#include "clusterkit/hac.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace clusterkit;

namespace {

MergeHistory line_single() {
  const Dataset d = make_dataset({{0}, {1}, {3}, {7}});
  return run_slink(condensed_matrix(d, Metric::kEuclidean));
}

}  // namespace

TEST_CASE("cut_by_height on the 1-D line") {
  const MergeHistory h = line_single();
  CHECK(cut_by_height(h, 1.5).assignment == std::vector<int>{0, 0, 1, 2});
  CHECK(cut_by_height(h, 0.5).assignment == std::vector<int>{0, 1, 2, 3});
  CHECK(cut_by_height(h, 2.0).assignment == std::vector<int>{0, 0, 0, 1});
  CHECK(cut_by_height(h, 100.0).assignment == std::vector<int>{0, 0, 0, 0});
  CHECK(cut_by_height(h, 1.5).num_clusters == 3u);
}

TEST_CASE("cut_by_k on the 1-D line") {
  const MergeHistory h = line_single();
  CHECK(cut_by_k(h, 1).assignment == std::vector<int>{0, 0, 0, 0});
  CHECK(cut_by_k(h, 2).assignment == std::vector<int>{0, 0, 0, 1});
  CHECK(cut_by_k(h, 3).assignment == std::vector<int>{0, 0, 1, 2});
  CHECK(cut_by_k(h, 4).assignment == std::vector<int>{0, 1, 2, 3});
  CHECK(cut_by_k(h, 2).num_clusters == 2u);
  CHECK_THROWS_AS(cut_by_k(h, 0), std::invalid_argument);
  CHECK_THROWS_AS(cut_by_k(h, 5), std::invalid_argument);
}

TEST_CASE("cut_by_height equals threshold components for single linkage") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Dataset d = testdata::random_points(seed, 40, 2);
    const auto m = condensed_matrix(d, Metric::kEuclidean);
    const MergeHistory h = run_slink(m);
    for (double t : {0.3, 0.8, 1.5, 3.0, 8.0}) {
      CAPTURE(seed, t);
      CHECK(cut_by_height(h, t).assignment == oracle::threshold_components(m, t));
    }
  }
}

TEST_CASE("noise extraction on the line relaxes k when needed") {
  const MergeHistory h = line_single();
  // No cut offers two clusters of size >= 2; relaxed to one cluster plus
  // noise.
  const Clustering c = extract_with_noise(h, 2, 2);
  CHECK(c.assignment == std::vector<int>{0, 0, 0, -1});
  CHECK(c.num_clusters == 1u);
  CHECK(c.noise_count() == 1u);
}

TEST_CASE("noise extraction finds clean pair clusters") {
  const Dataset d2 = make_dataset({{0, 0}, {0, 1}, {4, 0}, {4, 1}});
  const MergeHistory h = run_slink(condensed_matrix(d2, Metric::kEuclidean));
  const Clustering c = extract_with_noise(h, 2, 2);
  CHECK(c.assignment == std::vector<int>{0, 0, 1, 1});
  CHECK(c.num_clusters == 2u);
  CHECK(c.noise_count() == 0u);
}

TEST_CASE("noise extraction with minsize=1 equals cut_by_k") {
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    const Dataset d = testdata::random_points(seed, 18, 2);
    const MergeHistory h = run_slink(condensed_matrix(d, Metric::kEuclidean));
    for (std::size_t k = 1; k <= 18; ++k) {
      CAPTURE(seed, k);
      const Clustering a = extract_with_noise(h, k, 1);
      const Clustering b = cut_by_k(h, k);
      CHECK(a.assignment == b.assignment);
      CHECK(a.num_clusters == b.num_clusters);
    }
  }
}

TEST_CASE("noise extraction falls back to all-noise") {
  const MergeHistory h = line_single();
  const Clustering c = extract_with_noise(h, 2, 5);  // min size exceeds n/1
  CHECK(c.assignment == std::vector<int>{-1, -1, -1, -1});
  CHECK(c.num_clusters == 0u);
}

TEST_CASE("extraction argument validation") {
  const MergeHistory h = line_single();
  CHECK_THROWS_AS(extract_with_noise(h, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(extract_with_noise(h, 1, 0), std::invalid_argument);
}

TEST_CASE("validate_clustering accepts extraction output") {
  const MergeHistory h = line_single();
  CHECK_NOTHROW(validate_clustering(extract_with_noise(h, 2, 2)));
  Clustering bad;
  bad.assignment = {0, 2};
  bad.num_clusters = 2;  // label 2 out of range
  CHECK_THROWS_AS(validate_clustering(bad), std::invalid_argument);
}
