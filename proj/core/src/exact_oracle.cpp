#include "gibbs/exact_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gibbs/parallel.hpp"

namespace gibbs {

EnumerationReport::EnumerationReport(ModelParams params, std::vector<Edge> pairs,
                                     std::vector<double> log_weights, double log_z)
    : params_(params),
      pairs_(std::move(pairs)),
      log_weights_(std::move(log_weights)),
      log_z_(log_z) {}

double EnumerationReport::probability(std::uint32_t mask) const {
  return std::exp(log_weights_[mask] - log_z_);
}

SegmentGraph EnumerationReport::graph(std::uint32_t mask) const {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(std::popcount(mask)));
  for (int i = 0; i < pair_count(); ++i) {
    if (mask & (1u << i)) edges.push_back(pairs_[static_cast<std::size_t>(i)]);
  }
  return SegmentGraph(params_.n, std::move(edges));
}

std::uint32_t EnumerationReport::mask_of(const SegmentGraph& g) const {
  if (g.size() != params_.n) throw std::invalid_argument("graph size differs from params.n");
  std::uint32_t mask = 0;
  for (const Edge& e : g.long_edges()) {
    const auto it = std::lower_bound(pairs_.begin(), pairs_.end(), e);
    if (it == pairs_.end() || *it != e) throw std::invalid_argument("edge is not an eligible pair");
    mask |= 1u << static_cast<std::uint32_t>(it - pairs_.begin());
  }
  return mask;
}

EnumerationReport enumerate_gibbs(const ModelParams& params, int threads) {
  validate(params);
  const long long m_ll = eligible_pair_count(params.n);
  if (m_ll > kEnumerationCap) {
    throw std::invalid_argument(
        "enumeration refused: " + std::to_string(m_ll) + " eligible pairs exceed the cap of " +
        std::to_string(kEnumerationCap) + " (2^m graphs); use the MCMC sampler instead");
  }
  const int m = static_cast<int>(m_ll);
  std::vector<Edge> pairs = eligible_pairs(params.n);

  // Per-pair pieces of log P_{n,gamma}: base covers the all-absent graph,
  // adding pair i contributes logit[i].
  double base = 0.0;
  std::vector<double> logit(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    base += log_edge_absent_prob(pairs[i].length(), params.gamma);
    logit[i] = edge_logit(pairs[i].length(), params.gamma);
  }

  const std::size_t total = std::size_t{1} << m;
  const double n_pow_b = std::pow(static_cast<double>(params.n), params.b);
  std::vector<double> log_weights(total);

  // Fixed chunking: each chunk fills disjoint slots, so any thread count
  // produces bit-identical tables.
  const std::size_t chunk = std::max<std::size_t>(1, total / 256);
  const std::int64_t chunk_count = static_cast<std::int64_t>((total + chunk - 1) / chunk);
  parallel_for_index(threads, chunk_count, [&](std::int64_t c) {
    HpEvaluator eval(params.n);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    const std::size_t lo = static_cast<std::size_t>(c) * chunk;
    const std::size_t hi = std::min(total, lo + chunk);
    for (std::size_t mask = lo; mask < hi; ++mask) {
      edges.clear();
      double log_ref = base;
      for (int i = 0; i < m; ++i) {
        if (mask & (std::size_t{1} << i)) {
          edges.push_back(pairs[static_cast<std::size_t>(i)]);
          log_ref += logit[static_cast<std::size_t>(i)];
        }
      }
      const double h = eval(params.n, edges, params.p);
      log_weights[mask] = -n_pow_b * h + log_ref;
    }
  });

  // Stable normalization: factor out the max, sum in mask order.
  double max_lw = log_weights[0];
  for (const double lw : log_weights) max_lw = std::max(max_lw, lw);
  double sum = 0.0;
  for (const double lw : log_weights) sum += std::exp(lw - max_lw);
  const double log_z = max_lw + std::log(sum);

  return EnumerationReport(params, std::move(pairs), std::move(log_weights), log_z);
}

double exact_event_probability(const EnumerationReport& report,
                               const std::function<bool(const SegmentGraph&)>& event) {
  double total = 0.0;
  for (std::size_t mask = 0; mask < report.graph_count(); ++mask) {
    const auto m32 = static_cast<std::uint32_t>(mask);
    if (event(report.graph(m32))) total += report.probability(m32);
  }
  return total;
}

double exact_expectation(const EnumerationReport& report,
                         const std::function<double(const SegmentGraph&)>& f) {
  double total = 0.0;
  for (std::size_t mask = 0; mask < report.graph_count(); ++mask) {
    const auto m32 = static_cast<std::uint32_t>(mask);
    total += f(report.graph(m32)) * report.probability(m32);
  }
  return total;
}

double total_variation(const EnumerationReport& report,
                       std::span<const long long> visit_counts) {
  if (visit_counts.size() != report.graph_count()) {
    throw std::invalid_argument("visit_counts must have one entry per graph");
  }
  long long total = 0;
  for (const long long c : visit_counts) {
    if (c < 0) throw std::invalid_argument("visit counts must be nonnegative");
    total += c;
  }
  if (total == 0) throw std::invalid_argument("visit_counts are all zero");
  double tv = 0.0;
  for (std::size_t mask = 0; mask < report.graph_count(); ++mask) {
    const double freq = static_cast<double>(visit_counts[mask]) / static_cast<double>(total);
    tv += std::abs(freq - report.probability(static_cast<std::uint32_t>(mask)));
  }
  return 0.5 * tv;
}

std::string to_json_string(const EnumerationReport& report, bool include_table) {
  nlohmann::json j;
  j["params"] = nlohmann::json::parse(to_json_string(report.params()));
  j["pair_count"] = report.pair_count();
  j["graph_count"] = report.graph_count();
  j["log_z"] = report.log_z();
  const PNorm p = report.params().p;
  j["summary"] = {
      {"mean_h_p", exact_expectation(report, [&](const SegmentGraph& g) { return h_p(g, p); })},
      {"mean_long_edges",
       exact_expectation(report,
                         [](const SegmentGraph& g) {
                           return static_cast<double>(g.long_edges().size());
                         })},
      {"p_complete", exact_event_probability(report,
                                             [&](const SegmentGraph& g) {
                                               return g.long_edges().size() ==
                                                      static_cast<std::size_t>(report.pair_count());
                                             })},
      {"p_all_length2_present", exact_event_probability(report, [](const SegmentGraph& g) {
         return has_all_edges_up_to_length(g, 2);
       })}};
  if (include_table) {
    nlohmann::json table = nlohmann::json::array();
    for (std::size_t mask = 0; mask < report.graph_count(); ++mask) {
      const auto m32 = static_cast<std::uint32_t>(mask);
      table.push_back({mask, report.log_weight(m32), report.probability(m32)});
    }
    j["table"] = std::move(table);
  }
  return j.dump();
}

}  // namespace gibbs
