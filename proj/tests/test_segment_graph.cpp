#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <gibbs/rng.hpp>
#include <gibbs/segment_graph.hpp>

using gibbs::Edge;
using gibbs::PNorm;
using gibbs::SegmentGraph;

namespace {

// Dense Floyd-Warshall over the same graph, used as an independent oracle for
// the BFS distance code.
std::vector<std::vector<int>> fw_distances(const SegmentGraph& g) {
  const int n = g.size();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (int i = 0; i + 1 < n; ++i) d[i][i + 1] = d[i + 1][i] = 1;
  for (const Edge& e : g.long_edges()) d[e.x - 1][e.y - 1] = d[e.y - 1][e.x - 1] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// h_p straight from a distance matrix, no histogram tricks.
double naive_hp(const std::vector<std::vector<int>>& d, PNorm p) {
  const int n = static_cast<int>(d.size());
  if (n < 2) return 0.0;
  if (p.is_infinite()) {
    int best = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) best = std::max(best, d[i][j]);
    return best;
  }
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) acc += std::pow(d[i][j], p.value());
  const double pairs = 0.5 * n * (n - 1);
  return std::pow(acc / pairs, 1.0 / p.value());
}

SegmentGraph random_graph(int n, double edge_prob, gibbs::Rng& rng) {
  std::vector<Edge> edges;
  for (const Edge& e : gibbs::eligible_pairs(n))
    if (gibbs::bernoulli(rng, edge_prob)) edges.push_back(e);
  return SegmentGraph(n, std::move(edges));
}

}  // namespace

TEST_CASE("pnorm construction and parsing") {
  CHECK(PNorm::finite(2.0).value() == 2.0);
  CHECK_FALSE(PNorm::finite(1.0).is_infinite());
  CHECK(PNorm::infinity().is_infinite());
  CHECK(PNorm::finite(2.0) == PNorm::finite(2.0));
  CHECK(PNorm::finite(2.0) != PNorm::infinity());

  CHECK_THROWS_AS(PNorm::finite(0.5), std::invalid_argument);
  CHECK_THROWS_AS(PNorm::finite(0.999999), std::invalid_argument);
  CHECK_THROWS_AS(PNorm::finite(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(PNorm::finite(std::nan("")), std::invalid_argument);

  CHECK(gibbs::pnorm_from_string("inf") == PNorm::infinity());
  CHECK(gibbs::pnorm_from_string("2") == PNorm::finite(2.0));
  CHECK(gibbs::pnorm_from_string("1.5") == PNorm::finite(1.5));
  CHECK_THROWS_AS(gibbs::pnorm_from_string("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(gibbs::pnorm_from_string("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(gibbs::pnorm_from_string(""), std::invalid_argument);

  CHECK(gibbs::to_string(PNorm::infinity()) == "inf");
  CHECK(gibbs::pnorm_from_string(gibbs::to_string(PNorm::finite(2.5))) ==
        PNorm::finite(2.5));
}

TEST_CASE("graph construction validates invariants") {
  CHECK(SegmentGraph(1).size() == 1);
  CHECK(SegmentGraph(2).long_edges().empty());
  CHECK_THROWS_AS(SegmentGraph(0), std::invalid_argument);
  CHECK_THROWS_AS(SegmentGraph(-3), std::invalid_argument);

  CHECK_THROWS_AS(SegmentGraph(5, {{1, 2}}), std::invalid_argument);   // length 1
  CHECK_THROWS_AS(SegmentGraph(5, {{3, 3}}), std::invalid_argument);   // loop
  CHECK_THROWS_AS(SegmentGraph(5, {{4, 2}}), std::invalid_argument);   // x > y
  CHECK_THROWS_AS(SegmentGraph(5, {{0, 2}}), std::invalid_argument);   // out of range
  CHECK_THROWS_AS(SegmentGraph(5, {{3, 6}}), std::invalid_argument);   // out of range
  CHECK_THROWS_AS(SegmentGraph(5, {{1, 3}, {1, 3}}), std::invalid_argument);

  const SegmentGraph g(6, {{2, 5}, {1, 3}});
  CHECK(g.long_edges() == std::vector<Edge>{{1, 3}, {2, 5}});  // sorted
  CHECK(g.has_long_edge(1, 3));
  CHECK(g.has_long_edge(2, 5));
  CHECK_FALSE(g.has_long_edge(1, 4));
  CHECK(g == SegmentGraph(6, {{1, 3}, {2, 5}}));
  CHECK(g != SegmentGraph(6, {{1, 3}}));
}

TEST_CASE("with_flipped toggles exactly one pair") {
  const SegmentGraph g(5, {{1, 3}});
  const SegmentGraph added = g.with_flipped(2, 5);
  CHECK(added.long_edges() == std::vector<Edge>{{1, 3}, {2, 5}});
  const SegmentGraph removed = added.with_flipped(1, 3);
  CHECK(removed.long_edges() == std::vector<Edge>{{2, 5}});
  CHECK(g.with_flipped(1, 3).long_edges().empty());
  CHECK_THROWS_AS(g.with_flipped(2, 3), std::invalid_argument);  // length 1
  CHECK_THROWS_AS(g.with_flipped(0, 4), std::invalid_argument);
}

TEST_CASE("eligible pairs enumeration") {
  CHECK(gibbs::eligible_pair_count(1) == 0);
  CHECK(gibbs::eligible_pair_count(2) == 0);
  CHECK(gibbs::eligible_pair_count(3) == 1);
  CHECK(gibbs::eligible_pair_count(5) == 6);
  CHECK(gibbs::eligible_pairs(4) == std::vector<Edge>{{1, 3}, {1, 4}, {2, 4}});
  CHECK(gibbs::eligible_pairs(2).empty());
  for (int n = 1; n <= 40; ++n) {
    const auto pairs = gibbs::eligible_pairs(n);
    CHECK(static_cast<long long>(pairs.size()) == gibbs::eligible_pair_count(n));
    CHECK(std::is_sorted(pairs.begin(), pairs.end()));
  }
}

TEST_CASE("distances on hand-checked graphs") {
  const SegmentGraph path(4);
  CHECK(gibbs::distance(path, 1, 4) == 3);
  CHECK(gibbs::distance(path, 2, 3) == 1);
  CHECK(gibbs::distance(path, 3, 3) == 0);

  const SegmentGraph ring(5, {{1, 5}});
  CHECK(gibbs::distance(ring, 1, 5) == 1);
  CHECK(gibbs::distance(ring, 1, 4) == 2);  // through the long edge
  CHECK(gibbs::distance(ring, 2, 5) == 2);

  const auto d = gibbs::all_pairs_distances(ring);
  CHECK(d[0][4] == 1);
  CHECK(d[4][0] == 1);
  CHECK(d[0][3] == 2);
  CHECK(d[2][2] == 0);

  CHECK_THROWS_AS(gibbs::distance(ring, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(gibbs::distance(ring, 1, 6), std::invalid_argument);
}

TEST_CASE("distance matrix matches Floyd-Warshall on random graphs") {
  gibbs::Rng rng(0x1d5ca7e5u);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(gibbs::uniform_below(rng, 11));
    const SegmentGraph g = random_graph(n, 0.3, rng);
    const auto expect = fw_distances(g);
    const auto got = gibbs::all_pairs_distances(g);
    REQUIRE(got == expect);
  }
}

TEST_CASE("h_p frozen examples") {
  // Bare path, n = 3: distances {1, 1, 2}.
  const SegmentGraph p3(3);
  CHECK(gibbs::h_p(p3, PNorm::finite(1.0)) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(gibbs::h_p(p3, PNorm::finite(2.0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(gibbs::h_p(p3, PNorm::infinity()) == 2.0);

  // Bare path, n = 4: sum of squared distances is 20 over 6 pairs.
  const SegmentGraph p4(4);
  CHECK(gibbs::h_p(p4, PNorm::finite(2.0)) ==
        doctest::Approx(1.8257418583505538).epsilon(1e-14));  // sqrt(10/3)
  CHECK(gibbs::h_p(p4, PNorm::infinity()) == 3.0);

  // Path with a chord from end to end, n = 5: distances sum to 15.
  const SegmentGraph ring(5, {{1, 5}});
  CHECK(gibbs::h_p(ring, PNorm::finite(1.0)) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(gibbs::h_p(ring, PNorm::infinity()) == 2.0);

  // Complete graph: every distance is 1, so h_p = 1 for every p.
  const SegmentGraph complete(4, {{1, 3}, {1, 4}, {2, 4}});
  for (const PNorm p : {PNorm::finite(1.0), PNorm::finite(3.0), PNorm::infinity()})
    CHECK(gibbs::h_p(complete, p) == doctest::Approx(1.0).epsilon(1e-14));

  // Single vertex: no pairs.
  CHECK(gibbs::h_p(SegmentGraph(1), PNorm::finite(2.0)) == 0.0);
  CHECK(gibbs::h_p(SegmentGraph(1), PNorm::infinity()) == 0.0);

  // Two vertices: the only pair is a path edge.
  CHECK(gibbs::h_p(SegmentGraph(2), PNorm::finite(7.0)) == doctest::Approx(1.0));

  // Bare path diameter is n - 1.
  for (int n : {2, 5, 17, 100})
    CHECK(gibbs::h_p(SegmentGraph(n), PNorm::infinity()) == static_cast<double>(n - 1));
}

TEST_CASE("h_p agrees with the naive definition on random graphs") {
  gibbs::Rng rng(0xfeedbeefu);
  const std::vector<PNorm> ps = {PNorm::finite(1.0), PNorm::finite(2.0),
                                 PNorm::finite(3.5), PNorm::infinity()};
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(gibbs::uniform_below(rng, 11));
    const SegmentGraph g = random_graph(n, 0.25, rng);
    const auto d = fw_distances(g);
    for (const PNorm p : ps) {
      const double expect = naive_hp(d, p);
      const double got = gibbs::h_p(g, p);
      REQUIRE(got == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("h_p bounds and monotonicity") {
  gibbs::Rng rng(0xabcdef12u);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + static_cast<int>(gibbs::uniform_below(rng, 19));
    const SegmentGraph g = random_graph(n, 0.2, rng);

    // 1 <= h_p <= h_q <= h_inf <= n - 1 for p <= q (power-mean inequality).
    const double h1 = gibbs::h_p(g, PNorm::finite(1.0));
    const double h2 = gibbs::h_p(g, PNorm::finite(2.0));
    const double h6 = gibbs::h_p(g, PNorm::finite(6.0));
    const double hinf = gibbs::h_p(g, PNorm::infinity());
    REQUIRE(h1 >= 1.0);
    REQUIRE(h1 <= h2 + 1e-12);
    REQUIRE(h2 <= h6 + 1e-12);
    REQUIRE(h6 <= hinf + 1e-12);
    REQUIRE(hinf <= n - 1.0);

    // Adding any absent eligible pair cannot increase h_p.
    for (const Edge& e : gibbs::eligible_pairs(n)) {
      if (g.has_long_edge(e.x, e.y)) continue;
      const SegmentGraph bigger = g.with_flipped(e.x, e.y);
      REQUIRE(gibbs::h_p(bigger, PNorm::finite(2.0)) <= h2 + 1e-12);
      break;  // one pair per trial keeps the loop cheap
    }
  }
}

TEST_CASE("h_p is stable for very large finite p") {
  const SegmentGraph g(60, {{1, 30}, {30, 60}});
  const double hinf = gibbs::h_p(g, PNorm::infinity());
  for (double p : {50.0, 200.0, 800.0}) {
    const double h = gibbs::h_p(g, PNorm::finite(p));
    REQUIRE(std::isfinite(h));
    REQUIRE(h <= hinf + 1e-9);
    REQUIRE(h >= 1.0);
  }
  // By p = 800 the soft max should be within 5% of the diameter.
  CHECK(gibbs::h_p(g, PNorm::finite(800.0)) > 0.95 * hinf);
}

TEST_CASE("evaluator matches the one-shot function and reuses cleanly") {
  gibbs::Rng rng(0x77aa55u);
  gibbs::HpEvaluator eval(24);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(gibbs::uniform_below(rng, 23));
    const SegmentGraph g = random_graph(n, 0.3, rng);
    for (const PNorm p : {PNorm::finite(1.0), PNorm::finite(4.0), PNorm::infinity()}) {
      REQUIRE(eval(g, p) == gibbs::h_p(g, p));
      REQUIRE(eval(g.size(), g.long_edges(), p) == gibbs::h_p(g, p));
    }
  }
}

TEST_CASE("has_all_edges_up_to_length") {
  const SegmentGraph path(6);
  CHECK(gibbs::has_all_edges_up_to_length(path, 1));
  CHECK_FALSE(gibbs::has_all_edges_up_to_length(path, 2));

  const SegmentGraph complete(4, {{1, 3}, {1, 4}, {2, 4}});
  CHECK(gibbs::has_all_edges_up_to_length(complete, 3));
  CHECK(gibbs::has_all_edges_up_to_length(complete, 2));

  const SegmentGraph partial(5, {{1, 3}, {2, 4}});
  CHECK_FALSE(gibbs::has_all_edges_up_to_length(partial, 2));  // {3, 5} missing
  CHECK(gibbs::has_all_edges_up_to_length(partial.with_flipped(3, 5), 2));
}

TEST_CASE("json round trip") {
  const SegmentGraph g(7, {{2, 6}, {1, 4}});
  const std::string text = gibbs::to_json_string(g);
  CHECK(gibbs::segment_graph_from_json(text) == g);

  const SegmentGraph parsed =
      gibbs::segment_graph_from_json(R"({"n": 5, "edges": [[1, 3], [2, 5]]})");
  CHECK(parsed.size() == 5);
  CHECK(parsed.long_edges() == std::vector<Edge>{{1, 3}, {2, 5}});

  CHECK(gibbs::segment_graph_from_json(R"({"n": 3, "edges": []})") == SegmentGraph(3));

  CHECK_THROWS_AS(gibbs::segment_graph_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(gibbs::segment_graph_from_json(R"({"edges": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(gibbs::segment_graph_from_json(R"({"n": 0, "edges": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(gibbs::segment_graph_from_json(R"({"n": 5, "edges": [[1, 2]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(gibbs::segment_graph_from_json(R"({"n": 5, "edges": [[1]]})"),
                  std::invalid_argument);
}
