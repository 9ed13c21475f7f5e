#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "clusterkit/dataset.hpp"
#include "clusterkit/distance_matrix.hpp"
#include "clusterkit/linkage.hpp"
#include "clusterkit/merge_history.hpp"
#include "clusterkit/metric.hpp"
#include "clusterkit/random.hpp"

using namespace clusterkit;

TEST_CASE("dataset validates its shape") {
  CHECK_NOTHROW(Dataset(2, 3, {1, 2, 3, 4, 5, 6}));
  CHECK_THROWS_AS(Dataset(0, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset(2, 2, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset(1, 1, {std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Dataset(1, 1, {std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);

  const Dataset d(2, 2, {1, 2, 3, 4}, {"a", "b"});
  CHECK(d.size() == 2u);
  CHECK(d.dimensionality() == 2u);
  CHECK(d.at(1, 0) == 3.0);
  CHECK(d.row(1)[1] == 4.0);
  CHECK(d.labels()[1] == "b");
}

TEST_CASE("make_dataset rejects ragged rows") {
  CHECK_THROWS_AS(make_dataset({{1, 2}, {3}}), std::invalid_argument);
  const Dataset d = make_dataset({{1, 2}, {3, 4}, {5, 6}});
  CHECK(d.size() == 3u);
}

TEST_CASE("metric values") {
  const std::vector<double> a{0, 0};
  const std::vector<double> b{3, 4};
  CHECK(distance(a.data(), b.data(), 2, Metric::kEuclidean) == 5.0);
  CHECK(distance(a.data(), b.data(), 2, Metric::kSquaredEuclidean) == 25.0);
  CHECK(distance(a.data(), b.data(), 2, Metric::kManhattan) == 7.0);
  CHECK(metric_from_name("euclidean") == Metric::kEuclidean);
  CHECK_THROWS_AS(metric_from_name("cosine"), std::invalid_argument);
}

TEST_CASE("condensed matrix layout and validation") {
  // D2 under squared euclidean: entries (1,16,17,17,16,1).
  const Dataset d2 = make_dataset({{0, 0}, {0, 1}, {4, 0}, {4, 1}});
  const CondensedDistanceMatrix m = condensed_matrix(d2, Metric::kSquaredEuclidean);
  CHECK(m.size() == 4u);
  const std::vector<double> want{1, 16, 17, 17, 16, 1};
  CHECK(m.entries() == want);
  CHECK(m.at(0, 1) == 1.0);
  CHECK(m.at(1, 0) == 1.0);
  CHECK(m.at(2, 3) == 1.0);
  CHECK(m.at(1, 3) == 16.0);
  CHECK_THROWS_AS(m.at(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(m.at(0, 4), std::invalid_argument);

  CHECK_THROWS_AS(CondensedDistanceMatrix(3, {1.0}), std::invalid_argument);

  // Entry limit refusal.
  CHECK_THROWS_AS(condensed_matrix(d2, Metric::kEuclidean, 5), std::invalid_argument);
}

TEST_CASE("linkage coefficient table") {
  const auto c1 = coefficients({LinkageKind::kSingle}, 3, 4, 5);
  CHECK(c1.alpha1 == 0.5);
  CHECK(c1.gamma == -0.5);

  const auto c2 = coefficients({LinkageKind::kComplete}, 1, 1, 1);
  CHECK(c2.gamma == 0.5);

  const auto c3 = coefficients({LinkageKind::kGroupAverage}, 2, 6, 3);
  CHECK(c3.alpha1 == Catch::Approx(0.25));
  CHECK(c3.alpha2 == Catch::Approx(0.75));
  CHECK(c3.beta == 0.0);

  const auto c4 = coefficients({LinkageKind::kWard}, 1, 1, 1);
  CHECK(c4.alpha1 == Catch::Approx(2.0 / 3));
  CHECK(c4.beta == Catch::Approx(-1.0 / 3));

  const auto c5 = coefficients({LinkageKind::kMinVariance}, 1, 1, 1);
  CHECK(c5.alpha1 == Catch::Approx(4.0 / 9));
  CHECK(c5.alpha2 == Catch::Approx(4.0 / 9));
  CHECK(c5.beta == Catch::Approx(-2.0 / 9));

  const auto c6 = coefficients({LinkageKind::kCentroid}, 2, 3, 7);
  CHECK(c6.alpha1 == Catch::Approx(0.4));
  CHECK(c6.beta == Catch::Approx(-6.0 / 25));

  LinkageScheme flex{LinkageKind::kFlexibleBeta, -0.5};
  const auto c7 = coefficients(flex, 9, 9, 9);
  CHECK(c7.alpha1 == Catch::Approx(0.75));
  CHECK(c7.beta == Catch::Approx(-0.5));

  CHECK_THROWS_AS(coefficients({LinkageKind::kWard}, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("coefficient sums follow each scheme's closed form") {
  // Only ward's row sums to 1. Centroid's sums to 1 - ab/(a+b)^2, always
  // below 1. The variance criterion's sums to 1 + (c^2 - c(a+b) - 2ab)/T^2,
  // below 1 whenever C is no larger than A and B together (the unit-size
  // row 4/9, 4/9, -2/9 sums to 2/3), which is what lets both schemes merge
  // below the distances they started from.
  RngState g(21);
  for (int i = 0; i < 200; ++i) {
    const std::size_t a = 1 + rng_index(g, 1000);
    const std::size_t b = 1 + rng_index(g, 1000);
    const std::size_t c = 1 + rng_index(g, 1000);
    const double da = static_cast<double>(a);
    const double db = static_cast<double>(b);
    const double dc = static_cast<double>(c);
    const double t = da + db + dc;

    const auto ward = coefficients({LinkageKind::kWard}, a, b, c);
    CHECK(ward.alpha1 + ward.alpha2 + ward.beta == Catch::Approx(1.0).margin(1e-12));

    const auto cen = coefficients({LinkageKind::kCentroid}, a, b, c);
    const double cen_sum = 1.0 - da * db / ((da + db) * (da + db));
    CHECK(cen.alpha1 + cen.alpha2 + cen.beta ==
          Catch::Approx(cen_sum).margin(1e-12));
    CHECK(cen.alpha1 + cen.alpha2 + cen.beta < 1.0);

    const auto var = coefficients({LinkageKind::kMinVariance}, a, b, c);
    const double var_sum =
        ((da + dc) * (da + dc) + (db + dc) * (db + dc) - dc * (da + db)) / (t * t);
    CHECK(var.alpha1 + var.alpha2 + var.beta ==
          Catch::Approx(var_sum).margin(1e-12));
    if (c <= a + b) {
      CHECK(var.alpha1 + var.alpha2 + var.beta < 1.0);
    }
  }
}

TEST_CASE("squared input expectation and reducibility flags") {
  CHECK_FALSE(LinkageScheme{LinkageKind::kSingle}.squared_input_expected());
  CHECK(LinkageScheme{LinkageKind::kCentroid}.squared_input_expected());
  CHECK(LinkageScheme{LinkageKind::kMedian}.squared_input_expected());
  CHECK(LinkageScheme{LinkageKind::kWard}.squared_input_expected());
  CHECK(LinkageScheme{LinkageKind::kMinVariance}.squared_input_expected());
  CHECK_FALSE(LinkageScheme{LinkageKind::kGroupAverage}.squared_input_expected());

  CHECK(LinkageScheme{LinkageKind::kSingle}.reducible());
  CHECK(LinkageScheme{LinkageKind::kWard}.reducible());
  CHECK_FALSE(LinkageScheme{LinkageKind::kCentroid}.reducible());
  CHECK_FALSE(LinkageScheme{LinkageKind::kMedian}.reducible());
  CHECK(LinkageScheme{LinkageKind::kFlexibleBeta, -0.25}.reducible());
  CHECK_FALSE(LinkageScheme{LinkageKind::kFlexibleBeta, 0.25}.reducible());
}

TEST_CASE("combine applies the recursion") {
  // Ward example: clusters A,B,C of size 1 with d(A,C)=d(B,C)=16, d(A,B)=4
  // gives (2/3)*16 + (2/3)*16 - (1/3)*4 = 20.
  const double v = combine({LinkageKind::kWard}, 16.0, 16.0, 4.0, 1, 1, 1);
  CHECK(v == Catch::Approx(20.0));

  // 1-D points {0,1,3} with squared input: merging {0} and {1} sits at
  // 2*(2*1/3)*(3-0.5)^2 = 25/3 from {3}.
  CHECK(combine({LinkageKind::kWard}, 9.0, 4.0, 1.0, 1, 1, 1) ==
        Catch::Approx(25.0 / 3));

  // Single linkage keeps the minimum, complete the maximum.
  CHECK(combine({LinkageKind::kSingle}, 5.0, 9.0, 1.0, 2, 3, 4) == Catch::Approx(5.0));
  CHECK(combine({LinkageKind::kComplete}, 5.0, 9.0, 1.0, 2, 3, 4) == Catch::Approx(9.0));
}

TEST_CASE("merge history validation and pointer round trip") {
  MergeHistory h;
  h.n = 4;
  h.merges = {{0, 1, 1.0, 2}, {2, 3, 2.0, 2}, {4, 5, 3.0, 4}};
  CHECK_NOTHROW(validate_merge_history(h));

  const PointerHierarchy p = to_pointer_hierarchy(h);
  const MergeHistory back = from_pointer_hierarchy(p);
  REQUIRE(back.merges.size() == h.merges.size());
  for (std::size_t i = 0; i < h.merges.size(); ++i) {
    CHECK(back.merges[i].left == h.merges[i].left);
    CHECK(back.merges[i].right == h.merges[i].right);
    CHECK(back.merges[i].height == h.merges[i].height);
  }

  MergeHistory bad = h;
  bad.merges[2].left = 0;  // id 0 consumed twice
  CHECK_THROWS_AS(validate_merge_history(bad), std::invalid_argument);

  MergeHistory wrong_size = h;
  wrong_size.merges[2].size = 3;
  CHECK_THROWS_AS(validate_merge_history(wrong_size), std::invalid_argument);
}
