#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gibbs/exact_oracle.hpp"
#include "gibbs/hierarchy.hpp"
#include "gibbs/local_limit.hpp"
#include "gibbs/measures.hpp"
#include "gibbs/parallel.hpp"
#include "gibbs/rng.hpp"
#include "gibbs/theory.hpp"
#include "gibbs/version.hpp"

namespace cli {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

// Sidecar manifest: everything needed to reproduce the run.
void write_manifest(const std::string& out_path, const std::string& command,
                    const json& config, const json& results) {
  json manifest;
  manifest["command"] = command;
  manifest["version"] = gibbs::kVersion;
  manifest["config"] = config;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(config.dump())));
  manifest["config_hash"] = hash;
  manifest["results"] = results;
  write_text_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer list entry '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("empty integer list '" + text + "'");
  return values;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number list entry '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("empty number list '" + text + "'");
  return values;
}

gibbs::ChainSchedule resolve_schedule(int n, long long samples, long long burn_in,
                                      long long thinning) {
  gibbs::ChainSchedule schedule = gibbs::default_schedule(n, samples);
  if (burn_in >= 0) schedule.burn_in = burn_in;
  if (thinning >= 0) schedule.thinning = thinning;
  return schedule;
}

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

}  // namespace

int run_sample(const SampleOpts& opts) {
  if (opts.mode != "ref" && opts.mode != "gibbs") {
    throw std::invalid_argument("sample --mode must be ref or gibbs");
  }
  if (opts.replicas < 1) throw std::invalid_argument("sample needs replicas >= 1");
  if (opts.samples < 1) throw std::invalid_argument("sample needs samples >= 1");
  const gibbs::PNorm p = gibbs::pnorm_from_string(opts.p);
  const gibbs::ModelParams params{opts.n, opts.gamma, opts.b, p};
  gibbs::validate(params);

  const bool gibbs_mode = opts.mode == "gibbs";
  const gibbs::ChainSchedule schedule =
      resolve_schedule(opts.n, opts.samples, opts.burn_in, opts.thinning);

  // One stream per replica; replica outputs are concatenated in replica
  // order, so the file content is independent of the thread count.
  std::vector<std::string> chunks(static_cast<std::size_t>(opts.replicas));
  std::vector<double> acceptance(static_cast<std::size_t>(opts.replicas), 0.0);
  std::vector<std::vector<gibbs::SegmentGraph>> all_samples(
      static_cast<std::size_t>(opts.replicas));
  gibbs::parallel_for_index(opts.threads, opts.replicas, [&](std::int64_t r) {
    const std::uint64_t seed = gibbs::derive_seed(opts.seed, static_cast<std::uint64_t>(r));
    std::vector<gibbs::SegmentGraph> samples;
    if (gibbs_mode) {
      gibbs::ChainState state(params, seed);
      samples = gibbs::run_chain(state, schedule);
      acceptance[static_cast<std::size_t>(r)] = state.acceptance_rate();
    } else {
      gibbs::Rng rng(seed);
      samples.reserve(static_cast<std::size_t>(opts.samples));
      for (long long s = 0; s < opts.samples; ++s) {
        samples.push_back(gibbs::sample_reference(opts.n, opts.gamma, rng));
      }
    }
    std::string& text = chunks[static_cast<std::size_t>(r)];
    for (const gibbs::SegmentGraph& g : samples) text += gibbs::to_json_string(g) + "\n";
    all_samples[static_cast<std::size_t>(r)] = std::move(samples);
  });

  std::string body;
  for (const std::string& chunk : chunks) body += chunk;
  write_text_file(opts.out, body);

  json results;
  results["samples_written"] = opts.replicas * opts.samples;
  if (gibbs_mode) {
    results["acceptance_rates"] = acceptance;
    results["schedule"] = {{"burn_in", schedule.burn_in},
                           {"n_samples", schedule.n_samples},
                           {"thinning", schedule.thinning}};
  }
  if (opts.oracle_check) {
    if (!gibbs_mode) throw std::invalid_argument("--oracle-check needs --mode gibbs");
    const gibbs::EnumerationReport report = gibbs::enumerate_gibbs(params, opts.threads);
    std::vector<long long> counts(report.graph_count(), 0);
    for (const auto& replica : all_samples) {
      for (const gibbs::SegmentGraph& g : replica) ++counts[report.mask_of(g)];
    }
    const double tv = gibbs::total_variation(report, counts);
    results["tv_vs_oracle"] = tv;
    std::cout << "oracle check: TV(sampled, exact) = " << format_double(tv) << "\n";
  }

  json config;
  config["mode"] = opts.mode;
  config["n"] = opts.n;
  config["gamma"] = opts.gamma;
  if (gibbs_mode) {
    config["b"] = opts.b;
    config["p"] = gibbs::to_string(p);
  }
  config["samples"] = opts.samples;
  config["replicas"] = opts.replicas;
  config["seed"] = opts.seed;
  config["threads"] = opts.threads;
  config["out"] = opts.out;
  write_manifest(opts.out, "sample", config, results);
  std::cout << "wrote " << opts.replicas * opts.samples << " samples to " << opts.out << "\n";
  return 0;
}

int run_scaling(const ScalingOpts& opts) {
  if (opts.mode != "ref" && opts.mode != "gibbs") {
    throw std::invalid_argument("scaling --mode must be ref or gibbs");
  }
  if (opts.samples < 1) throw std::invalid_argument("scaling needs samples >= 1");
  const std::vector<int> grid = parse_int_list(opts.n_grid);
  const gibbs::PNorm p = gibbs::pnorm_from_string(opts.p);
  const bool gibbs_mode = opts.mode == "gibbs";
  if (gibbs_mode) {
    if (!opts.b) throw std::invalid_argument("scaling --mode gibbs needs --b");
    // Refuse regimes where the chain has no convergence story, unless forced.
    if (!gibbs::theorem2_assumption_holds(opts.gamma, *opts.b, p) && !(*opts.b < 0.0) &&
        !opts.force) {
      throw std::invalid_argument(
          "scaling: parameters are outside the trusted MCMC regime "
          "(assumption fails and b >= 0); pass --force to run anyway");
    }
  }

  struct Row {
    int n;
    double mean;
    double stderr_mean;
    double min_h_over_n;
  };
  std::vector<Row> rows(grid.size());
  gibbs::parallel_for_index(opts.threads, static_cast<std::int64_t>(grid.size()),
                            [&](std::int64_t idx) {
    const int n = grid[static_cast<std::size_t>(idx)];
    const std::uint64_t seed = gibbs::derive_seed(opts.seed, static_cast<std::uint64_t>(idx));
    std::vector<gibbs::SegmentGraph> samples;
    if (gibbs_mode) {
      const gibbs::ModelParams params{n, opts.gamma, *opts.b, p};
      samples = gibbs::run_chain(params, seed,
                                 resolve_schedule(n, opts.samples, opts.burn_in, opts.thinning));
    } else {
      gibbs::Rng rng(seed);
      samples.reserve(static_cast<std::size_t>(opts.samples));
      for (long long s = 0; s < opts.samples; ++s) {
        samples.push_back(gibbs::sample_reference(n, opts.gamma, rng));
      }
    }
    gibbs::HpEvaluator eval(n);
    std::vector<double> ratios;
    ratios.reserve(samples.size());
    double min_ratio = std::numeric_limits<double>::infinity();
    for (const gibbs::SegmentGraph& g : samples) {
      const double h = eval(g, p);
      ratios.push_back(std::log(h) / std::log(static_cast<double>(n)));
      min_ratio = std::min(min_ratio, h / static_cast<double>(n));
    }
    const double count = static_cast<double>(ratios.size());
    double mean = 0.0;
    for (const double r : ratios) mean += r;
    mean /= count;
    double se = 0.0;
    if (ratios.size() > 1) {
      // Two-pass variance: immune to cancellation when the spread is tiny.
      double sq_dev = 0.0;
      for (const double r : ratios) sq_dev += (r - mean) * (r - mean);
      se = std::sqrt(sq_dev / (count - 1.0) / count);
    }
    rows[static_cast<std::size_t>(idx)] = Row{n, mean, se, min_ratio};
  });

  std::ostringstream csv;
  csv << "n,samples,mean_log_ratio,std_error,alpha_star,min_h_over_n\n";
  for (const Row& row : rows) {
    csv << row.n << ',' << opts.samples << ',' << format_double(row.mean) << ','
        << format_double(row.stderr_mean) << ',';
    if (gibbs_mode) {
      csv << format_double(gibbs::alpha_star(opts.gamma, *opts.b).value);
    } else {
      csv << "na";
    }
    csv << ',' << format_double(row.min_h_over_n) << '\n';
  }
  write_text_file(opts.out, csv.str());

  json config;
  config["mode"] = opts.mode;
  config["n_grid"] = opts.n_grid;
  config["gamma"] = opts.gamma;
  if (opts.b) config["b"] = *opts.b;
  config["p"] = gibbs::to_string(p);
  config["samples"] = opts.samples;
  config["seed"] = opts.seed;
  config["threads"] = opts.threads;
  config["out"] = opts.out;
  write_manifest(opts.out, "scaling", config, json::object());
  std::cout << "wrote scaling table to " << opts.out << "\n";
  return 0;
}

int run_localfreq(const LocalFreqOpts& opts) {
  if (opts.mode != "ref" && opts.mode != "gibbs") {
    throw std::invalid_argument("localfreq --mode must be ref or gibbs");
  }
  if (opts.samples < 1) throw std::invalid_argument("localfreq needs samples >= 1");
  if (opts.mu_mode != "exact" && opts.mu_mode != "mc") {
    throw std::invalid_argument("localfreq --mu-mode must be exact or mc");
  }
  const gibbs::NeighborhoodQuery query{opts.k, opts.l};
  const gibbs::PNorm p = gibbs::pnorm_from_string(opts.p);
  const gibbs::RootedPattern pattern = [&] {
    if (opts.pattern_file.empty()) return gibbs::path_ball_pattern(opts.k);
    std::ifstream in(opts.pattern_file);
    if (!in) throw std::invalid_argument("cannot read pattern file '" + opts.pattern_file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return gibbs::pattern_from_json(buffer.str());
  }();

  // Samples: reference draws use one stream per sample (parallel safe);
  // Gibbs samples come from a single chain.
  std::vector<gibbs::SegmentGraph> samples;
  samples.reserve(static_cast<std::size_t>(opts.samples));
  if (opts.mode == "ref") {
    for (long long s = 0; s < opts.samples; ++s) samples.push_back(gibbs::SegmentGraph(1));
    gibbs::parallel_for_index(opts.threads, opts.samples, [&](std::int64_t s) {
      gibbs::Rng rng(gibbs::derive_seed(opts.seed, static_cast<std::uint64_t>(s)));
      samples[static_cast<std::size_t>(s)] = gibbs::sample_reference(opts.n, opts.gamma, rng);
    });
  } else {
    const gibbs::ModelParams params{opts.n, opts.gamma, opts.b, p};
    samples = gibbs::run_chain(params, opts.seed,
                               resolve_schedule(opts.n, opts.samples, opts.burn_in, opts.thinning));
  }

  const std::vector<gibbs::CensusEntry> census =
      gibbs::pattern_census(samples, query, opts.threads);
  write_text_file(opts.out, gibbs::census_to_csv(census));

  double census_mean = 0.0;
  for (const gibbs::CensusEntry& entry : census) {
    if (gibbs::is_isomorphic(entry.pattern, pattern)) {
      census_mean = entry.mean;
      break;
    }
  }

  double mu = 0.0;
  if (opts.mu_mode == "exact") {
    mu = gibbs::mu_truncated(opts.gamma, query, pattern);
  } else {
    mu = gibbs::mu_truncated_monte_carlo(
        opts.gamma, query, pattern, opts.mu_samples,
        gibbs::derive_seed(opts.seed, static_cast<std::uint64_t>(opts.samples)));
  }

  const int exceed_l = opts.long_edge_l > 0 ? opts.long_edge_l : opts.l;
  long long exceed = 0;
  for (const gibbs::SegmentGraph& g : samples) {
    if (static_cast<double>(gibbs::long_edge_count(g, exceed_l)) >
        opts.epsilon * static_cast<double>(opts.n)) {
      ++exceed;
    }
  }
  const double exceed_fraction =
      static_cast<double>(exceed) / static_cast<double>(opts.samples);

  json results;
  results["census_mean"] = census_mean;
  results["mu"] = mu;
  results["mu_mode"] = opts.mu_mode;
  results["abs_diff"] = std::abs(census_mean - mu);
  results["pattern"] = json::parse(gibbs::to_json_string(pattern));
  results["long_edge_l"] = exceed_l;
  results["epsilon"] = opts.epsilon;
  results["exceed_fraction"] = exceed_fraction;

  json config;
  config["mode"] = opts.mode;
  config["n"] = opts.n;
  config["gamma"] = opts.gamma;
  if (opts.mode == "gibbs") {
    config["b"] = opts.b;
    config["p"] = gibbs::to_string(p);
  }
  config["samples"] = opts.samples;
  config["k"] = opts.k;
  config["l"] = opts.l;
  config["mu_mode"] = opts.mu_mode;
  config["seed"] = opts.seed;
  config["threads"] = opts.threads;
  config["out"] = opts.out;
  write_manifest(opts.out, "localfreq", config, results);
  std::cout << "census mean = " << format_double(census_mean)
            << ", mu = " << format_double(mu)
            << ", |diff| = " << format_double(std::abs(census_mean - mu))
            << ", exceed fraction = " << format_double(exceed_fraction) << "\n";
  return 0;
}

int run_nolimit(const NoLimitOpts& opts) {
  if (opts.method != "exact" && opts.method != "mcmc") {
    throw std::invalid_argument("nolimit --method must be exact or mcmc");
  }
  if (opts.big_l < 1) throw std::invalid_argument("nolimit needs L >= 1");
  const gibbs::PNorm p = gibbs::pnorm_from_string(opts.p);
  const std::vector<double> b_grid = parse_double_list(opts.b_grid);

  const double min_b = *std::min_element(b_grid.begin(), b_grid.end());
  if (!(opts.gamma > 1.0) || p.is_infinite() || !(min_b > p.value() + 1.0)) {
    std::cerr << "warning: parameters are outside the all-short-edges regime "
                 "(needs gamma > 1, finite p, b > p + 1); running anyway\n";
  }

  // Fraction of eligible pairs of length <= L that carry an edge.
  const auto short_fraction = [&](const gibbs::SegmentGraph& g) {
    long long total = 0, present = 0;
    for (int len = 2; len <= std::min(opts.big_l, g.size() - 1); ++len) {
      total += g.size() - len;
    }
    if (total == 0) return 1.0;
    for (const gibbs::Edge& e : g.long_edges()) {
      if (e.length() <= opts.big_l) ++present;
    }
    return static_cast<double>(present) / static_cast<double>(total);
  };

  std::ostringstream csv;
  csv << "n,gamma,p,b,L,method,p_all_short_present,short_edge_fraction\n";
  json prob_list = json::array();
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    const double b = b_grid[i];
    const gibbs::ModelParams params{opts.n, opts.gamma, b, p};
    double p_all = 0.0;
    double frac = 0.0;
    if (opts.method == "exact") {
      const gibbs::EnumerationReport report = gibbs::enumerate_gibbs(params, opts.threads);
      p_all = gibbs::exact_event_probability(report, [&](const gibbs::SegmentGraph& g) {
        return gibbs::has_all_edges_up_to_length(g, opts.big_l);
      });
      frac = gibbs::exact_expectation(report, short_fraction);
    } else {
      const std::vector<gibbs::SegmentGraph> samples = gibbs::run_chain(
          params, gibbs::derive_seed(opts.seed, static_cast<std::uint64_t>(i)),
          resolve_schedule(opts.n, opts.samples, opts.burn_in, opts.thinning));
      long long hits = 0;
      double sum = 0.0;
      for (const gibbs::SegmentGraph& g : samples) {
        if (gibbs::has_all_edges_up_to_length(g, opts.big_l)) ++hits;
        sum += short_fraction(g);
      }
      p_all = static_cast<double>(hits) / static_cast<double>(samples.size());
      frac = sum / static_cast<double>(samples.size());
    }
    csv << opts.n << ',' << format_double(opts.gamma) << ',' << gibbs::to_string(p) << ','
        << format_double(b) << ',' << opts.big_l << ',' << opts.method << ','
        << format_double(p_all) << ',' << format_double(frac) << '\n';
    prob_list.push_back(p_all);
  }
  write_text_file(opts.out, csv.str());

  json config;
  config["n"] = opts.n;
  config["gamma"] = opts.gamma;
  config["p"] = gibbs::to_string(p);
  config["L"] = opts.big_l;
  config["b_grid"] = opts.b_grid;
  config["method"] = opts.method;
  config["samples"] = opts.samples;
  config["seed"] = opts.seed;
  config["threads"] = opts.threads;
  config["out"] = opts.out;
  json results;
  results["p_all_short_present"] = prob_list;
  write_manifest(opts.out, "nolimit", config, results);
  std::cout << "wrote all-short-edges table to " << opts.out << "\n";
  return 0;
}

int run_enumerate(const EnumerateOpts& opts) {
  const gibbs::PNorm p = gibbs::pnorm_from_string(opts.p);
  const gibbs::ModelParams params{opts.n, opts.gamma, opts.b, p};
  const gibbs::EnumerationReport report = gibbs::enumerate_gibbs(params, opts.threads);
  write_text_file(opts.out, gibbs::to_json_string(report, opts.full_table) + "\n");

  json config;
  config["n"] = opts.n;
  config["gamma"] = opts.gamma;
  config["b"] = opts.b;
  config["p"] = gibbs::to_string(p);
  config["full_table"] = opts.full_table;
  config["threads"] = opts.threads;
  config["out"] = opts.out;
  json results;
  results["log_z"] = report.log_z();
  results["graph_count"] = report.graph_count();
  write_manifest(opts.out, "enumerate", config, results);
  std::cout << "enumerated " << report.graph_count() << " graphs, log Z = "
            << format_double(report.log_z()) << "\n";
  return 0;
}

int run_gstar(const GStarOpts& opts) {
  const std::vector<int> grid = parse_int_list(opts.n_grid);
  const gibbs::PNorm p = gibbs::pnorm_from_string(opts.p);
  const gibbs::Regime regime = [&] {
    if (opts.regime == "subcritical") return gibbs::Regime::subcritical(opts.gamma, opts.alpha);
    if (opts.regime == "supercritical") {
      return gibbs::Regime::supercritical(opts.gamma, opts.alpha);
    }
    if (opts.regime == "critical") return gibbs::Regime::critical(opts.i);
    throw std::invalid_argument(
        "gstar --regime must be subcritical, supercritical or critical");
  }();

  const std::vector<gibbs::ScalingRow> rows = gibbs::verify_scaling(grid, regime, p);
  write_text_file(opts.out, gibbs::to_csv(rows));
  if (!opts.graph_out.empty()) {
    const int n_max = *std::max_element(grid.begin(), grid.end());
    write_text_file(opts.graph_out,
                    gibbs::to_json_string(gibbs::g_star(n_max, regime)) + "\n");
  }

  json config;
  config["regime"] = opts.regime;
  if (opts.regime == "critical") {
    config["i"] = opts.i;
  } else {
    config["gamma"] = opts.gamma;
    config["alpha"] = opts.alpha;
  }
  config["n_grid"] = opts.n_grid;
  config["p"] = gibbs::to_string(p);
  config["out"] = opts.out;
  write_manifest(opts.out, "gstar", config, json::object());
  std::cout << "wrote scaling trend table to " << opts.out << "\n";
  return 0;
}

int run_theory(const TheoryOpts& opts) {
  const std::vector<double> gammas = parse_double_list(opts.gamma_grid);
  const std::vector<double> bs = parse_double_list(opts.b_grid);
  const gibbs::PNorm p = gibbs::pnorm_from_string(opts.p);
  write_text_file(opts.out, gibbs::theory_grid_csv(gammas, bs, p));

  json config;
  config["gamma_grid"] = opts.gamma_grid;
  config["b_grid"] = opts.b_grid;
  config["p"] = gibbs::to_string(p);
  config["out"] = opts.out;
  write_manifest(opts.out, "theory", config, json::object());
  std::cout << "wrote theory table to " << opts.out << "\n";
  return 0;
}

}  // namespace cli
