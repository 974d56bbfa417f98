#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gibbs/local_limit.hpp>
#include <gibbs/measures.hpp>
#include <gibbs/rng.hpp>
#include <gibbs/segment_graph.hpp>

using gibbs::Edge;
using gibbs::NeighborhoodQuery;
using gibbs::RootedPattern;
using gibbs::SegmentGraph;

TEST_CASE("pattern construction normalizes and validates") {
  const RootedPattern p(1, {2, 1, 0}, {{1, 0}, {2, 1}});
  CHECK(p.vertices() == std::vector<int>{0, 1, 2});
  CHECK(p.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(p.root() == 1);

  CHECK_THROWS_AS(RootedPattern(5, {0, 1}, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(RootedPattern(0, {0, 0, 1}, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(RootedPattern(0, {0, 1}, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(RootedPattern(0, {0, 1}, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(RootedPattern(0, {0, 1}, {{0, 1}, {0, 1}}), std::invalid_argument);
  // Vertex 5 unreachable from the root.
  CHECK_THROWS_AS(RootedPattern(0, {0, 1, 5}, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("translation and isomorphism") {
  const RootedPattern ball = gibbs::path_ball_pattern(1);
  CHECK(ball.root() == 0);
  CHECK(ball.vertices() == std::vector<int>{-1, 0, 1});
  CHECK(ball.edges() == std::vector<Edge>{{-1, 0}, {0, 1}});

  const RootedPattern shifted = gibbs::translate(ball, 10);
  CHECK(shifted.root() == 10);
  CHECK(shifted.vertices() == std::vector<int>{9, 10, 11});
  CHECK(shifted.edges() == std::vector<Edge>{{9, 10}, {10, 11}});

  CHECK(gibbs::is_isomorphic(ball, shifted));
  CHECK(gibbs::is_isomorphic(shifted, ball));
  CHECK(shifted.canonical() == ball);
  CHECK(gibbs::translate(shifted, 0) == ball);

  const RootedPattern off_root(9, {9, 10, 11}, {{9, 10}, {10, 11}});
  CHECK_FALSE(gibbs::is_isomorphic(ball, off_root));  // root sits off-center

  const RootedPattern bigger(0, {-1, 0, 1, 2}, {{-1, 0}, {0, 1}, {1, 2}});
  CHECK_FALSE(gibbs::is_isomorphic(ball, bigger));

  CHECK(gibbs::path_ball_pattern(0).vertices() == std::vector<int>{0});
  CHECK(gibbs::path_ball_pattern(0).edges().empty());
}

TEST_CASE("balls on hand-checked graphs") {
  const SegmentGraph path(5);
  const RootedPattern b1 = gibbs::ball(path, 3, {1, std::nullopt});
  CHECK(gibbs::is_isomorphic(b1, gibbs::path_ball_pattern(1)));

  // Boundary ball: radius reaches only to one side.
  const RootedPattern left = gibbs::ball(path, 1, {2, std::nullopt});
  CHECK(left.vertices() == std::vector<int>{1, 2, 3});
  CHECK(left.root() == 1);

  // A long edge pulls a distant vertex into the radius-1 ball.
  const SegmentGraph chord(6, {{2, 5}});
  const RootedPattern b2 = gibbs::ball(chord, 2, {1, std::nullopt});
  CHECK(b2.vertices() == std::vector<int>{1, 2, 3, 5});
  CHECK(b2.edges() == std::vector<Edge>{{1, 2}, {2, 3}, {2, 5}});

  // Truncation at l = 2 removes the length-3 chord before the ball is taken.
  const RootedPattern b3 = gibbs::ball(chord, 2, {1, 2});
  CHECK(b3.vertices() == std::vector<int>{1, 2, 3});
  CHECK(b3.edges() == std::vector<Edge>{{1, 2}, {2, 3}});

  // Radius 0 is just the root.
  CHECK(gibbs::ball(path, 4, {0, std::nullopt}).vertices() == std::vector<int>{4});

  CHECK_THROWS_AS(gibbs::ball(path, 0, {1, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(gibbs::ball(path, 6, {1, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(gibbs::ball(path, 3, {-1, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(gibbs::ball(path, 3, {1, 0}), std::invalid_argument);
}

TEST_CASE("empirical fraction on hand-checked graphs") {
  const RootedPattern bare = gibbs::path_ball_pattern(1);
  // Bare path: every interior center matches, the two boundary centers do not.
  for (int n : {3, 10, 50}) {
    CHECK(gibbs::empirical_fraction(SegmentGraph(n), {1, std::nullopt}, bare) ==
          doctest::Approx((n - 2.0) / n).epsilon(1e-14));
  }
  // Complete graph on 4 vertices: every radius-1 ball has 4 vertices.
  const SegmentGraph complete(4, {{1, 3}, {1, 4}, {2, 4}});
  CHECK(gibbs::empirical_fraction(complete, {1, std::nullopt}, bare) == 0.0);

  // Radius 0 matches everywhere.
  CHECK(gibbs::empirical_fraction(complete, {0, std::nullopt},
                                  gibbs::path_ball_pattern(0)) == 1.0);
}

TEST_CASE("truncated ball law at closed-form values") {
  const RootedPattern bare = gibbs::path_ball_pattern(1);
  const NeighborhoodQuery q{1, 2};

  // gamma = 3: the radius-1 ball at 0 is bare iff the three length-2 pairs
  // {-2,0}, {-1,1}, {0,2} are absent, each independently with 1 - e^-8.
  const double p_edge = std::exp(-8.0);
  CHECK(gibbs::mu_truncated(3.0, q, bare) ==
        doctest::Approx(std::pow(1.0 - p_edge, 3.0)).epsilon(1e-13));

  // Ball shape seen when exactly {0, 2} is present.
  const RootedPattern with_chord(0, {-1, 0, 1, 2},
                                 {{-1, 0}, {0, 1}, {0, 2}, {1, 2}});
  CHECK(gibbs::mu_truncated(3.0, q, with_chord) ==
        doctest::Approx(p_edge * (1.0 - p_edge) * (1.0 - p_edge)).epsilon(1e-13));
  CHECK(gibbs::mu_truncated(3.0, q, with_chord) < 1e-3);

  // A pattern no truncated ball can realize has probability zero.
  CHECK(gibbs::mu_truncated(3.0, q, gibbs::path_ball_pattern(2)) == 0.0);

  // Exhaustive cross-check: the 8 configurations of the three window pairs
  // produce 8 distinct ball shapes whose probabilities are independent
  // products and sum to one.
  const std::vector<Edge> window_pairs = {{1, 3}, {2, 4}, {3, 5}};  // -2..2 as 1..5
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    std::vector<Edge> edges;
    double product = 1.0;
    for (std::size_t i = 0; i < window_pairs.size(); ++i) {
      if (mask >> i & 1u) {
        edges.push_back(window_pairs[i]);
        product *= p_edge;
      } else {
        product *= 1.0 - p_edge;
      }
    }
    const RootedPattern shape = gibbs::ball(SegmentGraph(5, std::move(edges)), 3, q);
    CHECK(gibbs::mu_truncated(3.0, q, shape) == doctest::Approx(product).epsilon(1e-12));
    total += product;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(gibbs::mu_truncated(3.0, {1, std::nullopt}, bare),
                  std::invalid_argument);
  CHECK_THROWS_AS(gibbs::mu_truncated(0.0, q, bare), std::invalid_argument);
  CHECK_THROWS_AS(gibbs::mu_truncated(3.0, {1, 6}, bare), std::invalid_argument);
}

TEST_CASE("monte carlo estimate agrees with exact enumeration") {
  const RootedPattern bare = gibbs::path_ball_pattern(1);
  const NeighborhoodQuery q{1, 2};
  for (double gamma : {1.0, 2.0}) {
    const double exact = gibbs::mu_truncated(gamma, q, bare);
    const long long samples = 100000;
    const double mc = gibbs::mu_truncated_monte_carlo(gamma, q, bare, samples, 0xfadeu);
    const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(samples));
    CHECK(std::abs(mc - exact) < 4.0 * se + 1e-12);
  }
  CHECK_THROWS_AS(gibbs::mu_truncated_monte_carlo(1.0, q, bare, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("truncation can only add matching configurations for the bare ball") {
  // P(bare radius-1 ball) shrinks as the truncation length grows: more pair
  // lengths become able to break the pattern.  l = 5 would need 30 window
  // pairs, past the enumeration cap.
  const RootedPattern bare = gibbs::path_ball_pattern(1);
  double prev = 1.0;
  for (int l : {2, 3, 4}) {
    const double mu = gibbs::mu_truncated(2.0, {1, l}, bare);
    CHECK(mu < prev);
    prev = mu;
  }
}

TEST_CASE("nothing outside the k*l window affects the truncated ball") {
  for (const NeighborhoodQuery q : {NeighborhoodQuery{1, 2}, NeighborhoodQuery{2, 2}}) {
    const int inner_half = q.k * *q.l;           // window radius the code uses
    const int outer_half = inner_half + 2;       // strictly larger test window
    const int outer_n = 2 * outer_half + 1;
    const int outer_center = outer_half + 1;     // position 0 in the big window

    // All pairs of length 2 in the big window (the only candidate length).
    std::vector<Edge> candidates;
    for (int x = 1; x + 2 <= outer_n; ++x) candidates.push_back({x, x + 2});
    REQUIRE(candidates.size() <= 16);

    const int inner_n = 2 * inner_half + 1;
    const int inner_center = inner_half + 1;
    const int shift = outer_center - inner_center;

    for (std::uint32_t mask = 0; mask < (1u << candidates.size()); ++mask) {
      std::vector<Edge> big_edges, small_edges;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!(mask >> i & 1u)) continue;
        big_edges.push_back(candidates[i]);
        const Edge inner{candidates[i].x - shift, candidates[i].y - shift};
        if (inner.x >= 1 && inner.y <= inner_n) small_edges.push_back(inner);
      }
      const RootedPattern big =
          gibbs::ball(SegmentGraph(outer_n, std::move(big_edges)), outer_center, q);
      const RootedPattern small =
          gibbs::ball(SegmentGraph(inner_n, std::move(small_edges)), inner_center, q);
      REQUIRE(gibbs::is_isomorphic(big, small));
    }
  }
}

TEST_CASE("long edge counting") {
  const SegmentGraph g(10, {{1, 5}, {2, 10}, {3, 5}});
  CHECK(gibbs::long_edge_count(g, 3) == 2);
  CHECK(gibbs::long_edge_count(g, 2) == 2);
  CHECK(gibbs::long_edge_count(g, 1) == 3);
  CHECK(gibbs::long_edge_count(g, 8) == 0);
  CHECK(gibbs::long_edge_count(SegmentGraph(10), 1) == 0);
  CHECK_THROWS_AS(gibbs::long_edge_count(g, 0), std::invalid_argument);
}

TEST_CASE("reference graphs rarely carry long edges at gamma = 1") {
  gibbs::Rng rng(0x10e6u);
  for (int s = 0; s < 200; ++s) {
    const SegmentGraph g = gibbs::sample_reference(500, 1.0, rng);
    REQUIRE(gibbs::long_edge_count(g, 40) == 0);
  }
}

TEST_CASE("census of identical bare paths") {
  const std::vector<SegmentGraph> samples(100, SegmentGraph(50));
  const auto census = gibbs::pattern_census(samples, {1, std::nullopt});
  REQUIRE(census.size() == 3);

  CHECK(gibbs::is_isomorphic(census[0].pattern, gibbs::path_ball_pattern(1)));
  CHECK(census[0].mean == doctest::Approx(0.96).epsilon(1e-14));
  CHECK(census[0].std_error <= 1e-12);  // identical samples: no spread

  // The two boundary shapes tie at 1/50 and are ordered by pattern identity.
  CHECK(census[1].mean == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(census[2].mean == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(census[1].pattern.vertices() == std::vector<int>{-1, 0});  // right edge
  CHECK(census[2].pattern.vertices() == std::vector<int>{0, 1});   // left edge

  double total = 0.0;
  for (const auto& entry : census) total += entry.mean;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(gibbs::pattern_census({}, {1, std::nullopt}),
                  std::invalid_argument);
}

TEST_CASE("census is independent of the thread count and sums to one") {
  gibbs::Rng rng(0xce9505u);
  std::vector<SegmentGraph> samples;
  for (int s = 0; s < 40; ++s) samples.push_back(gibbs::sample_reference(100, 1.0, rng));

  const NeighborhoodQuery q{1, 3};
  const auto serial = gibbs::pattern_census(samples, q, 1);
  const auto parallel = gibbs::pattern_census(samples, q, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    REQUIRE(serial[i].pattern == parallel[i].pattern);
    REQUIRE(serial[i].mean == parallel[i].mean);
    REQUIRE(serial[i].std_error == parallel[i].std_error);
  }

  double total = 0.0;
  for (const auto& entry : serial) total += entry.mean;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  // Means are sorted, and the bare ball dominates at gamma = 1.
  for (std::size_t i = 0; i + 1 < serial.size(); ++i)
    CHECK(serial[i].mean >= serial[i + 1].mean);
  CHECK(gibbs::is_isomorphic(serial[0].pattern, gibbs::path_ball_pattern(1)));
}

TEST_CASE("per-sample ball frequencies concentrate around the ball law") {
  // Large n: each reference sample's empirical fraction of the bare ball must
  // sit close to the infinite-path value, for every single sample.
  const RootedPattern bare = gibbs::path_ball_pattern(1);
  const NeighborhoodQuery q{1, 2};
  const double mu = gibbs::mu_truncated(1.0, q, bare);
  gibbs::Rng rng(0xc0ffee11u);
  for (int s = 0; s < 100; ++s) {
    const SegmentGraph g = gibbs::sample_reference(5000, 1.0, rng);
    const double freq = gibbs::empirical_fraction(g, q, bare);
    REQUIRE(std::abs(freq - mu) < 0.06);
  }
}

TEST_CASE("pattern json round trip") {
  const RootedPattern ball = gibbs::path_ball_pattern(2);
  const std::string text = gibbs::to_json_string(ball);
  CHECK(gibbs::pattern_from_json(text) == ball);

  const RootedPattern parsed = gibbs::pattern_from_json(
      R"({"root": 0, "vertices": [-1, 0, 1, 2], "edges": [[-1, 0], [0, 1], [0, 2], [1, 2]]})");
  CHECK(parsed.vertices().size() == 4);
  CHECK(parsed.edges().size() == 4);

  // Non-canonical roots are stored canonically by the writer.
  const RootedPattern shifted = gibbs::translate(ball, 7);
  CHECK(gibbs::pattern_from_json(gibbs::to_json_string(shifted)) == shifted.canonical());

  CHECK_THROWS_AS(gibbs::pattern_from_json("nope"), std::invalid_argument);
  CHECK_THROWS_AS(gibbs::pattern_from_json(R"({"root": 0})"), std::invalid_argument);
  CHECK_THROWS_AS(
      gibbs::pattern_from_json(R"({"root": 0, "vertices": [0, 9], "edges": []})"),
      std::invalid_argument);
}

TEST_CASE("census csv export") {
  const std::vector<SegmentGraph> samples(5, SegmentGraph(20));
  const auto census = gibbs::pattern_census(samples, {1, std::nullopt});
  const std::string csv = gibbs::census_to_csv(census);
  CHECK(csv.rfind("pattern_hash,pattern_json,mean,std_error\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("\"{\"\"edges\"\"") != std::string::npos);  // quoted JSON field
}
