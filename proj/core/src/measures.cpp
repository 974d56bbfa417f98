#include "gibbs/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gibbs {

void validate(const ModelParams& params) {
  if (params.n < 2) throw std::invalid_argument("model needs n >= 2");
  if (!(params.gamma > 0.0) || std::isinf(params.gamma) || std::isnan(params.gamma)) {
    throw std::invalid_argument("model needs 0 < gamma < infinity");
  }
  if (std::isnan(params.b) || std::isinf(params.b)) {
    throw std::invalid_argument("model needs a finite b");
  }
}

std::string to_json_string(const ModelParams& params) {
  nlohmann::json j;
  j["n"] = params.n;
  j["gamma"] = params.gamma;
  j["b"] = params.b;
  j["p"] = to_string(params.p);
  return j.dump();
}

ModelParams model_params_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("params JSON parse error: ") + err.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("gamma") || !j.contains("b") ||
      !j.contains("p")) {
    throw std::invalid_argument("params JSON needs fields n, gamma, b, p");
  }
  ModelParams params{j["n"].get<int>(), j["gamma"].get<double>(), j["b"].get<double>(),
                     j["p"].is_string() ? pnorm_from_string(j["p"].get<std::string>())
                                        : PNorm::finite(j["p"].get<double>())};
  validate(params);
  return params;
}

double log_edge_prob(int length, double gamma) {
  if (length < 2) throw std::invalid_argument("long edges have length >= 2");
  return -std::pow(static_cast<double>(length), gamma);
}

double log_edge_absent_prob(int length, double gamma) {
  // log(1 - e^{-length^gamma}); log1p keeps this exact when the probability
  // underflows (the term is then 0, which is correct in double).
  return std::log1p(-std::exp(log_edge_prob(length, gamma)));
}

double edge_logit(int length, double gamma) {
  return log_edge_prob(length, gamma) - log_edge_absent_prob(length, gamma);
}

double edge_prob(int x, int y, double gamma) {
  const int length = std::abs(y - x);
  if (length < 2) throw std::invalid_argument("edge_prob needs |x - y| >= 2");
  return std::exp(-std::pow(static_cast<double>(length), gamma));
}

SegmentGraph sample_reference(int n, double gamma, Rng& rng) {
  if (n < 2) throw std::invalid_argument("sample_reference needs n >= 2");
  if (!(gamma > 0.0)) throw std::invalid_argument("sample_reference needs gamma > 0");
  std::vector<Edge> edges;
  for (int len = 2; len <= n - 1; ++len) {
    const double p = std::exp(-std::pow(static_cast<double>(len), gamma));
    if (p <= 0.0) continue;  // underflow: this length cannot appear
    const int count = n - len;  // positions x = 1..count
    const double log1mp = std::log1p(-p);
    int pos = 0;  // last occupied position
    for (;;) {
      const double u = uniform01_open(rng);
      const double skip = std::floor(std::log(u) / log1mp);
      if (skip >= static_cast<double>(count - pos)) break;
      pos += static_cast<int>(skip) + 1;
      edges.push_back(Edge{pos, pos + len});
    }
  }
  return SegmentGraph(n, std::move(edges));
}

SegmentGraph sample_reference(const ModelParams& params, Rng& rng) {
  validate(params);
  return sample_reference(params.n, params.gamma, rng);
}

double log_reference_weight(const SegmentGraph& g, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("log_reference_weight needs gamma > 0");
  const int n = g.size();
  // Group by length: c[len] present edges among the (n - len) pairs.
  std::vector<long long> count(static_cast<std::size_t>(std::max(n, 1)), 0);
  for (const Edge& e : g.long_edges()) ++count[static_cast<std::size_t>(e.length())];
  double total = 0.0;
  for (int len = 2; len <= n - 1; ++len) {
    const long long present = count[static_cast<std::size_t>(len)];
    const long long absent = (n - len) - present;
    if (present > 0) total += static_cast<double>(present) * log_edge_prob(len, gamma);
    if (absent > 0) total += static_cast<double>(absent) * log_edge_absent_prob(len, gamma);
  }
  return total;
}

double log_gibbs_weight_unnormalized(const SegmentGraph& g, const ModelParams& params) {
  validate(params);
  if (g.size() != params.n) throw std::invalid_argument("graph size differs from params.n");
  return -std::pow(static_cast<double>(params.n), params.b) * h_p(g, params.p) +
         log_reference_weight(g, params.gamma);
}

double subgraph_log_prob(const SegmentGraph& g, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("subgraph_log_prob needs gamma > 0");
  double total = 0.0;
  for (const Edge& e : g.long_edges()) total += log_edge_prob(e.length(), gamma);
  return total;
}

ChainState::ChainState(const ModelParams& params, std::uint64_t seed)
    : ChainState(params, seed, SegmentGraph(params.n)) {}

ChainState::ChainState(const ModelParams& params, std::uint64_t seed, SegmentGraph initial)
    : params_(params),
      graph_(std::move(initial)),
      rng_(seed),
      eval_(params.n),
      n_pow_b_(std::pow(static_cast<double>(params.n), params.b)) {
  validate(params_);
  if (graph_.size() != params_.n) {
    throw std::invalid_argument("initial graph size differs from params.n");
  }
  cached_hp_ = eval_(graph_, params_.p);
  logit_.assign(static_cast<std::size_t>(params_.n), 0.0);
  for (int len = 2; len <= params_.n - 1; ++len) {
    logit_[static_cast<std::size_t>(len)] = edge_logit(len, params_.gamma);
  }
}

double ChainState::acceptance_rate() const {
  return steps_ == 0 ? 0.0 : static_cast<double>(accepted_) / static_cast<double>(steps_);
}

void mcmc_step(ChainState& state) {
  const ModelParams& params = state.params_;
  const int n = params.n;
  ++state.steps_;
  if (n <= 2) return;  // no eligible pairs: the step is a no-op

  // Uniform eligible pair by rejection.
  int x, y;
  do {
    x = 1 + static_cast<int>(uniform_below(state.rng_, static_cast<std::uint64_t>(n)));
    y = 1 + static_cast<int>(uniform_below(state.rng_, static_cast<std::uint64_t>(n)));
  } while (std::abs(x - y) < 2);
  if (x > y) std::swap(x, y);

  const double log_u = std::log(uniform01_open(state.rng_));
  const bool adding = !state.graph_.has_long_edge(x, y);
  const double logit = state.logit_[static_cast<std::size_t>(y - x)];
  const double known = adding ? logit : -logit;

  if (adding) {
    // Adding an edge cannot increase h_p, and h_p >= 1 on any graph with
    // n >= 2, so Delta <= n^b (h(g) - 1) + logit.  When even that bound
    // loses to log u the proposal is rejected without evaluating h_p(g').
    const double bound = state.n_pow_b_ * (state.cached_hp_ - 1.0) + known;
    if (log_u >= bound) return;
  }

  SegmentGraph next = state.graph_.with_flipped(x, y);
  const double h_next = state.eval_(next, params.p);
  const double delta = -state.n_pow_b_ * (h_next - state.cached_hp_) + known;
  if (log_u < delta) {
    state.graph_ = std::move(next);
    state.cached_hp_ = h_next;
    ++state.accepted_;
  }
}

double log_flip_delta(const SegmentGraph& g, double h_of_g, Edge e,
                      const ModelParams& params, HpEvaluator& eval) {
  validate(params);
  if (e.y - e.x < 2) throw std::invalid_argument("flippable pairs need length >= 2");
  const bool adding = !g.has_long_edge(e.x, e.y);
  const double known = (adding ? 1.0 : -1.0) * edge_logit(e.length(), params.gamma);
  const double h_next = eval(g.with_flipped(e.x, e.y), params.p);
  return -std::pow(static_cast<double>(params.n), params.b) * (h_next - h_of_g) + known;
}

ChainSchedule default_schedule(int n, long long n_samples) {
  const long long m = std::max<long long>(1, eligible_pair_count(n));
  return ChainSchedule{50 * m, n_samples, m};
}

std::vector<SegmentGraph> run_chain(ChainState& state, const ChainSchedule& schedule) {
  if (schedule.burn_in < 0 || schedule.thinning < 0 || schedule.n_samples < 1) {
    throw std::invalid_argument("chain schedule needs burn_in, thinning >= 0 and n_samples >= 1");
  }
  for (long long i = 0; i < schedule.burn_in; ++i) mcmc_step(state);
  std::vector<SegmentGraph> samples;
  samples.reserve(static_cast<std::size_t>(schedule.n_samples));
  for (long long s = 0; s < schedule.n_samples; ++s) {
    if (s > 0) {
      for (long long i = 0; i < schedule.thinning; ++i) mcmc_step(state);
    }
    samples.push_back(state.graph());
  }
  return samples;
}

std::vector<SegmentGraph> run_chain(const ModelParams& params, std::uint64_t seed,
                                    const ChainSchedule& schedule) {
  ChainState state(params, seed);
  return run_chain(state, schedule);
}

}  // namespace gibbs
