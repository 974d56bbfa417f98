#include "gibbs/segment_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gibbs {

PNorm PNorm::finite(double p) {
  if (!(p >= 1.0) || std::isinf(p) || std::isnan(p)) {
    throw std::invalid_argument("PNorm::finite requires 1 <= p < infinity");
  }
  return PNorm(p);
}

PNorm PNorm::infinity() { return PNorm(std::numeric_limits<double>::infinity()); }

PNorm pnorm_from_string(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return PNorm::infinity();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a p exponent: '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("not a p exponent: '" + text + "'");
  return PNorm::finite(value);
}

std::string to_string(PNorm p) {
  if (p.is_infinite()) return "inf";
  nlohmann::json j = p.value();  // shortest round-trip representation
  return j.dump();
}

SegmentGraph::SegmentGraph(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("SegmentGraph needs n >= 1");
}

SegmentGraph::SegmentGraph(int n, std::vector<Edge> long_edges)
    : n_(n), edges_(std::move(long_edges)) {
  if (n < 1) throw std::invalid_argument("SegmentGraph needs n >= 1");
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.x < 1 || e.y > n_) throw std::invalid_argument("edge endpoint outside [1, n]");
    if (e.y - e.x < 2) throw std::invalid_argument("long edges need length >= 2");
    if (i > 0 && edges_[i - 1] == e) throw std::invalid_argument("duplicate long edge");
  }
}

bool SegmentGraph::has_long_edge(int x, int y) const {
  if (x > y) std::swap(x, y);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{x, y});
}

SegmentGraph SegmentGraph::with_flipped(int x, int y) const {
  if (x > y) std::swap(x, y);
  if (x < 1 || y > n_) throw std::invalid_argument("flip endpoint outside [1, n]");
  if (y - x < 2) throw std::invalid_argument("flippable pairs need length >= 2");
  SegmentGraph out(n_);
  const Edge e{x, y};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  out.edges_.reserve(edges_.size() + 1);
  out.edges_.assign(edges_.begin(), it);
  if (it != edges_.end() && *it == e) {
    out.edges_.insert(out.edges_.end(), it + 1, edges_.end());
  } else {
    out.edges_.push_back(e);
    out.edges_.insert(out.edges_.end(), it, edges_.end());
  }
  return out;
}

long long eligible_pair_count(int n) {
  if (n < 1) throw std::invalid_argument("eligible_pair_count needs n >= 1");
  return static_cast<long long>(n - 1) * (n - 2) / 2;
}

std::vector<Edge> eligible_pairs(int n) {
  std::vector<Edge> pairs;
  pairs.reserve(static_cast<std::size_t>(std::max<long long>(0, eligible_pair_count(n))));
  for (int x = 1; x + 2 <= n; ++x) {
    for (int y = x + 2; y <= n; ++y) pairs.push_back(Edge{x, y});
  }
  return pairs;
}

namespace {

struct Csr {
  std::vector<int> offset;
  std::vector<int> adj;

  void build(int n, std::span<const Edge> edges) {
    offset.assign(static_cast<std::size_t>(n) + 2, 0);
    adj.resize(edges.size() * 2);
    for (const Edge& e : edges) {
      ++offset[static_cast<std::size_t>(e.x) + 1];
      ++offset[static_cast<std::size_t>(e.y) + 1];
    }
    for (std::size_t v = 1; v < offset.size(); ++v) offset[v] += offset[v - 1];
    std::vector<int> cursor(offset.begin(), offset.end() - 1);
    for (const Edge& e : edges) {
      adj[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.x)]++)] = e.y;
      adj[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.y)]++)] = e.x;
    }
  }
};

void check_vertex(const SegmentGraph& g, int v, const char* what) {
  if (v < 1 || v > g.size()) {
    throw std::invalid_argument(std::string(what) + " outside [1, n]");
  }
}

}  // namespace

int distance(const SegmentGraph& g, int x, int y) {
  check_vertex(g, x, "distance endpoint");
  check_vertex(g, y, "distance endpoint");
  if (x == y) return 0;
  const int n = g.size();
  Csr csr;
  csr.build(n, g.long_edges());
  std::vector<int> dist(static_cast<std::size_t>(n) + 1, -1);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(n));
  dist[static_cast<std::size_t>(x)] = 0;
  queue.push_back(x);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    const int dv = dist[static_cast<std::size_t>(v)];
    auto visit = [&](int u) {
      if (dist[static_cast<std::size_t>(u)] >= 0) return;
      dist[static_cast<std::size_t>(u)] = dv + 1;
      queue.push_back(u);
    };
    if (v > 1) visit(v - 1);
    if (v < n) visit(v + 1);
    for (int i = csr.offset[static_cast<std::size_t>(v)];
         i < csr.offset[static_cast<std::size_t>(v) + 1]; ++i) {
      visit(csr.adj[static_cast<std::size_t>(i)]);
    }
    if (dist[static_cast<std::size_t>(y)] >= 0) break;
  }
  return dist[static_cast<std::size_t>(y)];
}

std::vector<std::vector<int>> all_pairs_distances(const SegmentGraph& g) {
  const int n = g.size();
  Csr csr;
  csr.build(n, g.long_edges());
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n), 0));
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(n));
  for (int s = 1; s <= n; ++s) {
    auto& dist = out[static_cast<std::size_t>(s) - 1];
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(s) - 1] = 0;
    queue.clear();
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      const int dv = dist[static_cast<std::size_t>(v) - 1];
      auto visit = [&](int u) {
        if (dist[static_cast<std::size_t>(u) - 1] >= 0) return;
        dist[static_cast<std::size_t>(u) - 1] = dv + 1;
        queue.push_back(u);
      };
      if (v > 1) visit(v - 1);
      if (v < n) visit(v + 1);
      for (int i = csr.offset[static_cast<std::size_t>(v)];
           i < csr.offset[static_cast<std::size_t>(v) + 1]; ++i) {
        visit(csr.adj[static_cast<std::size_t>(i)]);
      }
    }
  }
  return out;
}

bool has_all_edges_up_to_length(const SegmentGraph& g, int l) {
  if (l < 1) throw std::invalid_argument("length bound must be >= 1");
  const int n = g.size();
  for (int len = 2; len <= std::min(l, n - 1); ++len) {
    for (int x = 1; x + len <= n; ++x) {
      if (!g.has_long_edge(x, x + len)) return false;
    }
  }
  return true;
}

HpEvaluator::HpEvaluator(int max_n) {
  if (max_n < 1) throw std::invalid_argument("HpEvaluator needs max_n >= 1");
  offset_.reserve(static_cast<std::size_t>(max_n) + 2);
  dist_.reserve(static_cast<std::size_t>(max_n) + 1);
  queue_.reserve(static_cast<std::size_t>(max_n));
  hist_.reserve(static_cast<std::size_t>(max_n));
}

double HpEvaluator::operator()(const SegmentGraph& g, PNorm p) {
  return (*this)(g.size(), g.long_edges(), p);
}

double HpEvaluator::operator()(int n, std::span<const Edge> long_edges, PNorm p) {
  if (n <= 1) return 0.0;

  // CSR adjacency for the long edges; path neighbours are arithmetic.
  offset_.assign(static_cast<std::size_t>(n) + 2, 0);
  adj_.resize(long_edges.size() * 2);
  for (const Edge& e : long_edges) {
    ++offset_[static_cast<std::size_t>(e.x) + 1];
    ++offset_[static_cast<std::size_t>(e.y) + 1];
  }
  for (std::size_t v = 1; v < offset_.size(); ++v) offset_[v] += offset_[v - 1];
  {
    std::vector<int>& cursor = dist_;  // reuse as scratch before BFS
    cursor.assign(offset_.begin(), offset_.end() - 1);
    for (const Edge& e : long_edges) {
      adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.x)]++)] = e.y;
      adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.y)]++)] = e.x;
    }
  }

  // hist_[d] = number of unordered pairs at distance d.
  hist_.assign(static_cast<std::size_t>(n), 0);
  queue_.resize(static_cast<std::size_t>(n));
  for (int s = 1; s <= n; ++s) {
    dist_.assign(static_cast<std::size_t>(n) + 1, -1);
    dist_[static_cast<std::size_t>(s)] = 0;
    queue_[0] = s;
    std::size_t head = 0, tail = 1;
    while (head < tail) {
      const int v = queue_[head++];
      const int dv = dist_[static_cast<std::size_t>(v)] + 1;
      auto visit = [&](int u) {
        if (dist_[static_cast<std::size_t>(u)] >= 0) return;
        dist_[static_cast<std::size_t>(u)] = dv;
        queue_[tail++] = u;
        if (u > s) ++hist_[static_cast<std::size_t>(dv)];
      };
      if (v > 1) visit(v - 1);
      if (v < n) visit(v + 1);
      for (int i = offset_[static_cast<std::size_t>(v)];
           i < offset_[static_cast<std::size_t>(v) + 1]; ++i) {
        visit(adj_[static_cast<std::size_t>(i)]);
      }
    }
  }

  int max_d = 0;
  for (int d = n - 1; d >= 1; --d) {
    if (hist_[static_cast<std::size_t>(d)] > 0) {
      max_d = d;
      break;
    }
  }
  if (p.is_infinite()) return static_cast<double>(max_d);

  // Factor out the maximum distance so large p cannot overflow:
  // h_p = m (sum_d hist[d] (d/m)^p / C(n,2))^(1/p).
  const double pv = p.value();
  const double m = static_cast<double>(max_d);
  double acc = 0.0;
  for (int d = 1; d <= max_d; ++d) {
    const long long c = hist_[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    acc += static_cast<double>(c) * std::pow(static_cast<double>(d) / m, pv);
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return m * std::pow(acc / pairs, 1.0 / pv);
}

double h_p(const SegmentGraph& g, PNorm p) {
  HpEvaluator eval(std::max(1, g.size()));
  return eval(g, p);
}

std::string to_json_string(const SegmentGraph& g) {
  nlohmann::json j;
  j["n"] = g.size();
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.long_edges()) edges.push_back({e.x, e.y});
  j["edges"] = std::move(edges);
  return j.dump();
}

SegmentGraph segment_graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("graph JSON parse error: ") + err.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges") ||
      !j["n"].is_number_integer() || !j["edges"].is_array()) {
    throw std::invalid_argument("graph JSON must be {\"n\": int, \"edges\": [[x,y],...]}");
  }
  std::vector<Edge> edges;
  edges.reserve(j["edges"].size());
  for (const auto& item : j["edges"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer()) {
      throw std::invalid_argument("graph JSON edges must be [x, y] integer pairs");
    }
    edges.push_back(Edge{item[0].get<int>(), item[1].get<int>()});
  }
  return SegmentGraph(j["n"].get<int>(), std::move(edges));
}

}  // namespace gibbs
