#pragma once

#include <cmath>
#include <compare>
#include <span>
#include <string>
#include <vector>

namespace gibbs {

// Vertex pair {x, y} with x < y, ordered lexicographically.  Also used for
// pattern edges on Z, where labels may be negative.
struct Edge {
  int x = 0;
  int y = 0;
  int length() const { return y - x; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Exponent of the distance functional h_p: a finite p >= 1, or infinity
// (h_inf = diameter).
class PNorm {
 public:
  static PNorm finite(double p);
  static PNorm infinity();
  bool is_infinite() const { return std::isinf(p_); }
  double value() const { return p_; }  // +inf when infinite
  friend bool operator==(const PNorm&, const PNorm&) = default;

 private:
  explicit PNorm(double p) : p_(p) {}
  double p_;
};

PNorm pnorm_from_string(const std::string& text);
std::string to_string(PNorm p);

// Graph on vertices 1..n in which the nearest-neighbour path edges {i, i+1}
// are always present implicitly; only "long" edges (length >= 2) are stored.
// Immutable value type: every operation is pure.
class SegmentGraph {
 public:
  explicit SegmentGraph(int n);                        // bare path
  SegmentGraph(int n, std::vector<Edge> long_edges);   // sorts + validates

  int size() const { return n_; }
  const std::vector<Edge>& long_edges() const { return edges_; }
  bool has_long_edge(int x, int y) const;
  SegmentGraph with_flipped(int x, int y) const;       // toggles one long edge

  friend bool operator==(const SegmentGraph&, const SegmentGraph&) = default;

 private:
  int n_;
  std::vector<Edge> edges_;  // sorted lexicographically, no duplicates
};

// Pairs {x, y} in [1, n] with y - x >= 2, i.e. the flippable pairs.
long long eligible_pair_count(int n);            // (n-1)(n-2)/2
std::vector<Edge> eligible_pairs(int n);         // lexicographic order

// Hop distance between vertices x and y (path edges count as well).
int distance(const SegmentGraph& g, int x, int y);

// n x n matrix with entry [i][j] = distance(i + 1, j + 1).
std::vector<std::vector<int>> all_pairs_distances(const SegmentGraph& g);

// True iff every pair with |x - y| <= l is an edge of g (path edges make
// l = 1 always true).
bool has_all_edges_up_to_length(const SegmentGraph& g, int l);

// Distance functional: for finite p, ((1/C(n,2)) sum_{x<y} d(x,y)^p)^(1/p);
// for p = infinity, the maximum pair distance.  h_p = 0 when n = 1.
double h_p(const SegmentGraph& g, PNorm p);

// Reusable workspace for repeated h_p evaluations (MCMC and enumeration hot
// paths).  Breadth-first searches share buffers; distances are folded into a
// histogram so only O(n) pow() calls are needed per evaluation, and the sum
// is rescaled by the maximum distance to keep large p from overflowing.
class HpEvaluator {
 public:
  explicit HpEvaluator(int max_n);
  double operator()(const SegmentGraph& g, PNorm p);
  // Fast path for enumeration: edges must be sorted valid long edges of a
  // graph on [1, n] with n <= max_n.
  double operator()(int n, std::span<const Edge> long_edges, PNorm p);

 private:
  std::vector<int> adj_;
  std::vector<int> offset_;
  std::vector<int> dist_;
  std::vector<int> queue_;
  std::vector<long long> hist_;
};

// JSON round trip: {"n": <int>, "edges": [[x, y], ...]}, edges sorted
// lexicographically.  The loader re-validates every invariant.
std::string to_json_string(const SegmentGraph& g);
SegmentGraph segment_graph_from_json(const std::string& text);

}  // namespace gibbs
