#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gibbs/rng.hpp"
#include "gibbs/segment_graph.hpp"

namespace gibbs {

// Parameters of the Gibbs measure: graph size n, long-edge decay exponent
// gamma > 0, penalty exponent b (any real; the weight is exp{-n^b h_p}),
// and the distance-functional exponent p.
struct ModelParams {
  int n;
  double gamma;
  double b;
  PNorm p;
};

void validate(const ModelParams& params);  // n >= 2, gamma > 0
std::string to_json_string(const ModelParams& params);
ModelParams model_params_from_json(const std::string& text);

// Reference inclusion probability of the long edge {x, y}:
// exp{-|x - y|^gamma}, requires |x - y| >= 2.
double edge_prob(int x, int y, double gamma);

// Pieces of the same quantity by edge length, stable for all gamma:
double log_edge_prob(int length, double gamma);         // -length^gamma
double log_edge_absent_prob(int length, double gamma);  // log1p(-exp(...))
double edge_logit(int length, double gamma);            // log p - log(1 - p)

// Draws from the reference measure: each eligible pair appears independently
// with probability edge_prob.  Sampling skips over absent pairs with
// geometric jumps, so the cost is O(n + #edges) rather than O(n^2).
SegmentGraph sample_reference(int n, double gamma, Rng& rng);
SegmentGraph sample_reference(const ModelParams& params, Rng& rng);  // b, p unused

// log P_{n,gamma}(g): sum of log-inclusion / log-exclusion terms over all
// eligible pairs (grouped by length; absent-pair terms use log1p).
double log_reference_weight(const SegmentGraph& g, double gamma);

// log of the unnormalized Gibbs weight: -n^b h_p(g) + log_reference_weight.
double log_gibbs_weight_unnormalized(const SegmentGraph& g, const ModelParams& params);

// log probability that all long edges of g are present (ignoring absences):
// sum over stored edges of -|e|^gamma.  Used for the hierarchical graphs.
double subgraph_log_prob(const SegmentGraph& g, double gamma);

// One Metropolis chain over long-edge configurations.  Proposal: flip one
// uniformly chosen eligible pair; acceptance min(1, exp(Delta)) with
//   Delta = -n^b (h_p(g') - h_p(g)) +/- [log p_e - log(1 - p_e)]
// (+ when adding e, - when removing).  The state owns its RNG and caches
// h_p(g); rejected additions are usually decided by an exact upper bound on
// Delta (adding an edge cannot increase h_p, and h_p >= 1), which skips the
// h_p evaluation without changing the kernel.
class ChainState {
 public:
  ChainState(const ModelParams& params, std::uint64_t seed);
  ChainState(const ModelParams& params, std::uint64_t seed, SegmentGraph initial);

  const ModelParams& params() const { return params_; }
  const SegmentGraph& graph() const { return graph_; }
  double cached_hp() const { return cached_hp_; }
  long long steps_taken() const { return steps_; }
  long long accepted() const { return accepted_; }
  double acceptance_rate() const;

  friend void mcmc_step(ChainState& state);

 private:
  ModelParams params_;
  SegmentGraph graph_;
  double cached_hp_;
  long long steps_ = 0;
  long long accepted_ = 0;
  Rng rng_;
  HpEvaluator eval_;
  std::vector<double> logit_;  // edge_logit by length
  double n_pow_b_;
};

void mcmc_step(ChainState& state);

// Acceptance log-ratio of flipping {e.x, e.y} from g, computed exactly as
// mcmc_step computes it (h_of_g must equal h_p(g, params.p)).  Exposed so the
// explicit transition kernel can be built from the production formula.
double log_flip_delta(const SegmentGraph& g, double h_of_g, Edge e,
                      const ModelParams& params, HpEvaluator& eval);

struct ChainSchedule {
  long long burn_in;
  long long n_samples;
  long long thinning;
};

// Defaults scale with the proposal space: burn_in = 50 m, thinning = m,
// where m = eligible_pair_count(n).
ChainSchedule default_schedule(int n, long long n_samples);

// Runs burn_in steps, then records n_samples graphs `thinning` steps apart.
std::vector<SegmentGraph> run_chain(ChainState& state, const ChainSchedule& schedule);
std::vector<SegmentGraph> run_chain(const ModelParams& params, std::uint64_t seed,
                                    const ChainSchedule& schedule);

}  // namespace gibbs
