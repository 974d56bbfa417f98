#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gibbs/measures.hpp"
#include "gibbs/segment_graph.hpp"

namespace gibbs {

// Hard cap on the number of eligible pairs for full enumeration (2^24 graphs).
inline constexpr int kEnumerationCap = 24;

// Exact distribution of the Gibbs measure at small n, obtained by walking all
// 2^m long-edge subsets.  Graphs are indexed by bitmask over eligible_pairs(n)
// in lexicographic order (bit i set <=> pair i present).
class EnumerationReport {
 public:
  EnumerationReport(ModelParams params, std::vector<Edge> pairs,
                    std::vector<double> log_weights, double log_z);

  const ModelParams& params() const { return params_; }
  const std::vector<Edge>& pairs() const { return pairs_; }
  int pair_count() const { return static_cast<int>(pairs_.size()); }
  std::size_t graph_count() const { return log_weights_.size(); }
  double log_z() const { return log_z_; }

  double log_weight(std::uint32_t mask) const { return log_weights_[mask]; }
  double probability(std::uint32_t mask) const;
  SegmentGraph graph(std::uint32_t mask) const;
  std::uint32_t mask_of(const SegmentGraph& g) const;

 private:
  ModelParams params_;
  std::vector<Edge> pairs_;
  std::vector<double> log_weights_;
  double log_z_;
};

// Enumerates all 2^m graphs, refusing when m > kEnumerationCap.  The
// normalizing constant is a log-sum-exp over the full table (global max
// factored out), summed in mask order so results do not depend on `threads`.
EnumerationReport enumerate_gibbs(const ModelParams& params, int threads = 1);

// Sum of probabilities over graphs satisfying the predicate.
double exact_event_probability(const EnumerationReport& report,
                               const std::function<bool(const SegmentGraph&)>& event);

// Expectation of f under the exact distribution.
double exact_expectation(const EnumerationReport& report,
                         const std::function<double(const SegmentGraph&)>& f);

// Total variation distance between per-mask visit counts and the exact
// distribution: (1/2) sum_mask |counts[mask]/total - prob(mask)|.
double total_variation(const EnumerationReport& report,
                       std::span<const long long> visit_counts);

// Report export: params, m, log_z and named expectations; the full per-graph
// table only when requested (it is large).
std::string to_json_string(const EnumerationReport& report, bool include_table = false);

}  // namespace gibbs
