#include "gibbs/local_limit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gibbs/measures.hpp"
#include "gibbs/parallel.hpp"
#include "gibbs/rng.hpp"

namespace gibbs {

namespace {

void check_query(const NeighborhoodQuery& q) {
  if (q.k < 0) throw std::invalid_argument("ball radius must be >= 0");
  if (q.l && *q.l < 1) throw std::invalid_argument("truncation length must be >= 1");
}

}  // namespace

RootedPattern::RootedPattern(int root, std::vector<int> vertices, std::vector<Edge> edges)
    : root_(root), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw std::invalid_argument("pattern has a duplicate vertex");
  }
  auto has_vertex = [&](int v) {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  };
  if (!has_vertex(root_)) throw std::invalid_argument("pattern root is not a vertex");
  for (Edge& e : edges_) {
    if (e.x > e.y) std::swap(e.x, e.y);
    if (e.x == e.y) throw std::invalid_argument("pattern has a self-loop");
    if (!has_vertex(e.x) || !has_vertex(e.y)) {
      throw std::invalid_argument("pattern edge endpoint is not a vertex");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("pattern has a duplicate edge");
  }

  // Balls are connected from the root; require the same of every pattern.
  std::vector<int> reached{root_};
  std::vector<bool> seen(vertices_.size(), false);
  auto index_of = [&](int v) {
    return static_cast<std::size_t>(
        std::lower_bound(vertices_.begin(), vertices_.end(), v) - vertices_.begin());
  };
  seen[index_of(root_)] = true;
  for (std::size_t head = 0; head < reached.size(); ++head) {
    const int v = reached[head];
    for (const Edge& e : edges_) {
      const int other = e.x == v ? e.y : (e.y == v ? e.x : v);
      if (other == v) continue;
      const std::size_t idx = index_of(other);
      if (!seen[idx]) {
        seen[idx] = true;
        reached.push_back(other);
      }
    }
  }
  if (reached.size() != vertices_.size()) {
    throw std::invalid_argument("pattern is not connected from its root");
  }
}

RootedPattern RootedPattern::canonical() const { return translate(*this, 0); }

RootedPattern translate(const RootedPattern& pattern, int new_root) {
  const int shift = new_root - pattern.root();
  std::vector<int> vertices = pattern.vertices();
  for (int& v : vertices) v += shift;
  std::vector<Edge> edges = pattern.edges();
  for (Edge& e : edges) {
    e.x += shift;
    e.y += shift;
  }
  return RootedPattern(new_root, std::move(vertices), std::move(edges));
}

bool is_isomorphic(const RootedPattern& a, const RootedPattern& b) {
  if (a.vertices().size() != b.vertices().size() || a.edges().size() != b.edges().size()) {
    return false;
  }
  const int shift = b.root() - a.root();
  for (std::size_t i = 0; i < a.vertices().size(); ++i) {
    if (a.vertices()[i] + shift != b.vertices()[i]) return false;
  }
  for (std::size_t i = 0; i < a.edges().size(); ++i) {
    if (a.edges()[i].x + shift != b.edges()[i].x || a.edges()[i].y + shift != b.edges()[i].y) {
      return false;
    }
  }
  return true;
}

RootedPattern path_ball_pattern(int k) {
  if (k < 0) throw std::invalid_argument("ball radius must be >= 0");
  std::vector<int> vertices;
  std::vector<Edge> edges;
  for (int v = -k; v <= k; ++v) vertices.push_back(v);
  for (int v = -k; v < k; ++v) edges.push_back(Edge{v, v + 1});
  return RootedPattern(0, std::move(vertices), std::move(edges));
}

namespace {

// Shared per-graph machinery for ball extraction: long-edge adjacency built
// once, then one small search per center.  Ball bookkeeping uses flat
// vectors; balls are tiny in every regime this artifact samples.
class BallScanner {
 public:
  explicit BallScanner(const SegmentGraph& g) : g_(g), long_adj_(g.size() + 1) {
    for (const Edge& e : g.long_edges()) {
      long_adj_[static_cast<std::size_t>(e.x)].push_back(e.y);
      long_adj_[static_cast<std::size_t>(e.y)].push_back(e.x);
    }
  }

  RootedPattern ball(int center, const NeighborhoodQuery& q) const {
    check_query(q);
    if (center < 1 || center > g_.size()) {
      throw std::invalid_argument("ball center outside [1, n]");
    }
    const int limit = q.l ? *q.l : g_.size();  // path edges always qualify
    std::vector<int> members{center};
    std::vector<int> dist{0};
    auto find = [&](int v) -> int {
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] == v) return static_cast<int>(i);
      }
      return -1;
    };
    for (std::size_t head = 0; head < members.size(); ++head) {
      const int v = members[head];
      const int dv = dist[head];
      if (dv == q.k) continue;
      auto visit = [&](int u) {
        if (find(u) < 0) {
          members.push_back(u);
          dist.push_back(dv + 1);
        }
      };
      if (v > 1) visit(v - 1);
      if (v < g_.size()) visit(v + 1);
      for (const int u : long_adj_[static_cast<std::size_t>(v)]) {
        if (std::abs(u - v) <= limit) visit(u);
      }
    }
    std::vector<int> vertices = members;
    std::sort(vertices.begin(), vertices.end());
    auto inside = [&](int v) {
      return std::binary_search(vertices.begin(), vertices.end(), v);
    };
    std::vector<Edge> edges;
    for (const int v : vertices) {
      if (v < g_.size() && inside(v + 1)) edges.push_back(Edge{v, v + 1});
      for (const int u : long_adj_[static_cast<std::size_t>(v)]) {
        if (u > v && u - v <= limit && inside(u)) edges.push_back(Edge{v, u});
      }
    }
    std::sort(edges.begin(), edges.end());
    return RootedPattern(center, std::move(vertices), std::move(edges));
  }

 private:
  const SegmentGraph& g_;
  std::vector<std::vector<int>> long_adj_;
};

}  // namespace

RootedPattern ball(const SegmentGraph& g, int center, const NeighborhoodQuery& q) {
  return BallScanner(g).ball(center, q);
}

double empirical_fraction(const SegmentGraph& g, const NeighborhoodQuery& q,
                          const RootedPattern& pattern) {
  check_query(q);
  const BallScanner scanner(g);
  long long matches = 0;
  for (int center = 1; center <= g.size(); ++center) {
    if (is_isomorphic(scanner.ball(center, q), pattern)) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(g.size());
}

namespace {

// The truncated ball at 0 depends only on edges with length in [2, l] whose
// endpoints lie in the window [-k l, k l]: every hop moves by at most l.
// The window is materialized as a SegmentGraph on 1..2kl+1 (center k l + 1);
// is_isomorphic translates away the relabeling.
struct Window {
  int n;
  int center;
  std::vector<Edge> candidates;  // pairs that may carry an edge, sorted
  std::vector<double> probs;     // reference inclusion probability per pair

  Window(double gamma, const NeighborhoodQuery& q) {
    check_query(q);
    if (!q.l) throw std::invalid_argument("mu_truncated needs a truncation length");
    if (!(gamma > 0.0)) throw std::invalid_argument("mu_truncated needs gamma > 0");
    const int l = *q.l;
    const int half = q.k * l;
    n = 2 * half + 1;
    center = half + 1;
    for (int len = 2; len <= std::min(l, n - 1); ++len) {
      for (int x = 1; x + len <= n; ++x) candidates.push_back(Edge{x, x + len});
    }
    std::sort(candidates.begin(), candidates.end());
    probs.reserve(candidates.size());
    for (const Edge& e : candidates) {
      probs.push_back(std::exp(-std::pow(static_cast<double>(e.length()), gamma)));
    }
  }
};

}  // namespace

double mu_truncated(double gamma, const NeighborhoodQuery& q, const RootedPattern& pattern) {
  const Window w(gamma, q);
  const int m = static_cast<int>(w.candidates.size());
  if (m > kWindowEnumerationCap) {
    throw std::invalid_argument(
        "mu_truncated refused: " + std::to_string(m) + " window pairs exceed the cap of " +
        std::to_string(kWindowEnumerationCap) + "; use mu_truncated_monte_carlo");
  }
  const NeighborhoodQuery query = q;
  double total = 0.0;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    edges.clear();
    double prob = 1.0;
    for (int i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i)) {
        edges.push_back(w.candidates[static_cast<std::size_t>(i)]);
        prob *= w.probs[static_cast<std::size_t>(i)];
      } else {
        prob *= 1.0 - w.probs[static_cast<std::size_t>(i)];
      }
    }
    const SegmentGraph g(w.n, edges);
    if (is_isomorphic(ball(g, w.center, query), pattern)) total += prob;
  }
  return total;
}

double mu_truncated_monte_carlo(double gamma, const NeighborhoodQuery& q,
                                const RootedPattern& pattern, long long samples,
                                std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("mu_truncated_monte_carlo needs samples >= 1");
  const Window w(gamma, q);
  Rng rng(seed);
  long long matches = 0;
  std::vector<Edge> edges;
  edges.reserve(w.candidates.size());
  for (long long s = 0; s < samples; ++s) {
    edges.clear();
    for (std::size_t i = 0; i < w.candidates.size(); ++i) {
      if (bernoulli(rng, w.probs[i])) edges.push_back(w.candidates[i]);
    }
    const SegmentGraph g(w.n, edges);
    if (is_isomorphic(ball(g, w.center, q), pattern)) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(samples);
}

long long long_edge_count(const SegmentGraph& g, int l) {
  if (l < 1) throw std::invalid_argument("length bound must be >= 1");
  long long count = 0;
  for (const Edge& e : g.long_edges()) {
    if (e.length() > l) ++count;
  }
  return count;
}

std::vector<CensusEntry> pattern_census(std::span<const SegmentGraph> samples,
                                        const NeighborhoodQuery& q, int threads) {
  check_query(q);
  if (samples.empty()) throw std::invalid_argument("pattern_census needs at least one sample");

  // Phase 1 (parallel): per-sample pattern counts into disjoint slots.
  std::vector<std::map<RootedPattern, long long>> per_sample(samples.size());
  parallel_for_index(threads, static_cast<std::int64_t>(samples.size()), [&](std::int64_t s) {
    const SegmentGraph& g = samples[static_cast<std::size_t>(s)];
    const BallScanner scanner(g);
    auto& counts = per_sample[static_cast<std::size_t>(s)];
    for (int center = 1; center <= g.size(); ++center) {
      ++counts[scanner.ball(center, q).canonical()];
    }
  });

  // Phase 2 (sequential, sample order): two-pass moments of the per-sample
  // fractions.  Samples without the pattern contribute fraction 0; the
  // one-pass formula would lose near-zero variances to cancellation.
  struct Moments {
    double mean = 0.0;
    double sq_dev = 0.0;
    std::size_t appearances = 0;
  };
  std::map<RootedPattern, Moments> stats;
  const double s_count = static_cast<double>(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const double n = static_cast<double>(samples[s].size());
    for (const auto& [pattern, count] : per_sample[s]) {
      auto& m = stats[pattern];
      m.mean += static_cast<double>(count) / n;
      ++m.appearances;
    }
  }
  for (auto& [pattern, m] : stats) m.mean /= s_count;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const double n = static_cast<double>(samples[s].size());
    for (const auto& [pattern, count] : per_sample[s]) {
      auto& m = stats.at(pattern);
      const double dev = static_cast<double>(count) / n - m.mean;
      m.sq_dev += dev * dev;
    }
  }

  std::vector<CensusEntry> entries;
  entries.reserve(stats.size());
  for (const auto& [pattern, m] : stats) {
    double std_error = 0.0;
    if (samples.size() > 1) {
      const double zeros = s_count - static_cast<double>(m.appearances);
      const double var = (m.sq_dev + zeros * m.mean * m.mean) / (s_count - 1.0);
      std_error = std::sqrt(var / s_count);
    }
    entries.push_back(CensusEntry{pattern, m.mean, std_error});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const CensusEntry& a, const CensusEntry& b) {
    if (a.mean != b.mean) return a.mean > b.mean;
    return a.pattern < b.pattern;
  });
  return entries;
}

std::string to_json_string(const RootedPattern& pattern) {
  const RootedPattern canon = pattern.canonical();
  nlohmann::json j;
  j["root"] = canon.root();
  j["vertices"] = canon.vertices();
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : canon.edges()) edges.push_back({e.x, e.y});
  j["edges"] = std::move(edges);
  return j.dump();
}

RootedPattern pattern_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("pattern JSON parse error: ") + err.what());
  }
  if (!j.is_object() || !j.contains("root") || !j.contains("vertices") || !j.contains("edges") ||
      !j["root"].is_number_integer() || !j["vertices"].is_array() || !j["edges"].is_array()) {
    throw std::invalid_argument(
        "pattern JSON must be {\"root\": int, \"vertices\": [...], \"edges\": [[x,y],...]}");
  }
  std::vector<int> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_number_integer()) throw std::invalid_argument("pattern vertices must be integers");
    vertices.push_back(v.get<int>());
  }
  std::vector<Edge> edges;
  for (const auto& item : j["edges"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer()) {
      throw std::invalid_argument("pattern edges must be [x, y] integer pairs");
    }
    edges.push_back(Edge{item[0].get<int>(), item[1].get<int>()});
  }
  return RootedPattern(j["root"].get<int>(), std::move(vertices), std::move(edges));
}

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string csv_quote(const std::string& field) {
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string census_to_csv(std::span<const CensusEntry> entries) {
  std::ostringstream out;
  out.precision(12);
  out << "pattern_hash,pattern_json,mean,std_error\n";
  for (const CensusEntry& entry : entries) {
    const std::string pattern_json = to_json_string(entry.pattern);
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a(pattern_json)));
    out << hash << ',' << csv_quote(pattern_json) << ',' << entry.mean << ','
        << entry.std_error << '\n';
  }
  return out.str();
}

}  // namespace gibbs
