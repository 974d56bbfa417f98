#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gibbs/segment_graph.hpp"

namespace gibbs {

// Hard cap on the number of window pairs mu_truncated will enumerate.
inline constexpr int kWindowEnumerationCap = 24;

// Ball request: radius k >= 0, and an optional truncation length l >= 1.
// Truncation drops every edge of length > l from the graph before the ball
// is taken (path edges have length 1 and always survive).
struct NeighborhoodQuery {
  int k = 0;
  std::optional<int> l;
};

// Finite rooted graph with integer vertex labels (possibly negative: balls
// live on Z once recentred).  All edges are explicit, including path edges
// captured from a SegmentGraph.  Vertices and edges are kept sorted; every
// vertex must be reachable from the root, as in any ball.
class RootedPattern {
 public:
  RootedPattern(int root, std::vector<int> vertices, std::vector<Edge> edges);

  int root() const { return root_; }
  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  RootedPattern canonical() const;  // translated so the root is 0

  friend bool operator==(const RootedPattern&, const RootedPattern&) = default;
  friend auto operator<=>(const RootedPattern&, const RootedPattern&) = default;

 private:
  int root_;
  std::vector<int> vertices_;
  std::vector<Edge> edges_;
};

// Shift every label by new_root - root (the root-moving translation of Z).
RootedPattern translate(const RootedPattern& pattern, int new_root);

// Labeled isomorphism: true iff translating a onto b's root makes the vertex
// and edge sets equal exactly.
bool is_isomorphic(const RootedPattern& a, const RootedPattern& b);

// Ball of the bare path at 0: vertices -k..k with consecutive edges.
RootedPattern path_ball_pattern(int k);

// Ball B(center, k) of g (truncated first when q.l is set): vertices at hop
// distance <= k plus every surviving edge with both endpoints inside.
RootedPattern ball(const SegmentGraph& g, int center, const NeighborhoodQuery& q);

// Fraction of centers i in [1, n] whose ball is isomorphic to `pattern`.
double empirical_fraction(const SegmentGraph& g, const NeighborhoodQuery& q,
                          const RootedPattern& pattern);

// Probability under the infinite-path reference measure that the truncated
// ball at 0 matches `pattern`.  The ball depends only on edges of length
// in [2, l] inside the window [-k l, k l]; `mu_truncated` enumerates all
// subsets of those pairs (refusing beyond 2^24), the Monte Carlo variant
// samples them.
double mu_truncated(double gamma, const NeighborhoodQuery& q, const RootedPattern& pattern);
double mu_truncated_monte_carlo(double gamma, const NeighborhoodQuery& q,
                                const RootedPattern& pattern, long long samples,
                                std::uint64_t seed);

// Number of stored edges of length > l.
long long long_edge_count(const SegmentGraph& g, int l);

// Pattern census over a set of sample graphs: for each canonical ball shape,
// the across-sample mean of its per-sample empirical fraction and the
// standard error of that mean.  Sorted by decreasing mean (ties: pattern
// order).  Deterministic for any thread count.
struct CensusEntry {
  RootedPattern pattern;
  double mean;
  double std_error;
};

std::vector<CensusEntry> pattern_census(std::span<const SegmentGraph> samples,
                                        const NeighborhoodQuery& q, int threads = 1);

// JSON round trip for canonical patterns:
// {"root": 0, "vertices": [...], "edges": [[x, y], ...]}.
std::string to_json_string(const RootedPattern& pattern);
RootedPattern pattern_from_json(const std::string& text);

// CSV with header pattern_hash,pattern_json,mean,std_error (the JSON field
// is quoted; the hash is FNV-1a of the canonical JSON).
std::string census_to_csv(std::span<const CensusEntry> entries);

}  // namespace gibbs
