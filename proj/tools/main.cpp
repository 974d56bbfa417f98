// Experiment driver: every library capability behind one binary with
// reproducible subcommands.  Options come from flags or from a flat JSON
// config file (--config); explicit flags win.  Exit codes: 0 on success,
// 2 on validation/usage errors, 1 on I/O failures.

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "experiments.hpp"

namespace {

// Applies a flat JSON object as extra command-line arguments, skipping any
// key the user already passed, so explicit flags always win.
std::vector<std::string> inject_config(const std::vector<std::string>& args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw std::invalid_argument("cannot read config file '" + config_path + "'");
  nlohmann::json config;
  try {
    std::stringstream buffer;
    buffer << in.rdbuf();
    config = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("config JSON parse error: ") + err.what());
  }
  if (!config.is_object()) throw std::invalid_argument("config file must hold a JSON object");

  std::vector<std::string> augmented = args;
  for (const auto& [key, value] : config.items()) {
    const std::string flag = "--" + key;
    bool given = false;
    for (const std::string& arg : args) {
      if (arg == flag || arg.rfind(flag + "=", 0) == 0) {
        given = true;
        break;
      }
    }
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) augmented.push_back(flag);
    } else if (value.is_array()) {
      std::string list;
      for (const auto& item : value) {
        if (!list.empty()) list += ',';
        list += item.is_string() ? item.get<std::string>() : item.dump();
      }
      augmented.push_back(flag);
      augmented.push_back(list);
    } else {
      augmented.push_back(flag);
      augmented.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  return augmented;
}

void add_config_option(CLI::App* cmd, std::string& slot) {
  cmd->add_option("--config", slot, "flat JSON object of option defaults (flags win)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spatial Gibbs random graphs on a segment: samplers, exact "
               "enumeration, hierarchical scaling and local-limit experiments"};
  app.require_subcommand(1);

  std::string config_slot;  // parsed for --help only; injection uses raw args

  cli::SampleOpts sample;
  CLI::App* cmd_sample = app.add_subcommand("sample", "draw reference or Gibbs samples (JSONL)");
  cmd_sample->add_option("--mode", sample.mode, "ref | gibbs")->capture_default_str();
  cmd_sample->add_option("--n", sample.n, "vertex count")->required();
  cmd_sample->add_option("--gamma", sample.gamma, "edge decay exponent")->required();
  cmd_sample->add_option("--b", sample.b, "penalty exponent (gibbs mode)");
  cmd_sample->add_option("--p", sample.p, "distance exponent, number or 'inf'")
      ->capture_default_str();
  cmd_sample->add_option("--samples", sample.samples, "samples per replica")
      ->capture_default_str();
  cmd_sample->add_option("--replicas", sample.replicas, "independent chains/streams")
      ->capture_default_str();
  cmd_sample->add_option("--burn-in", sample.burn_in, "steps before sampling (-1: 50m)");
  cmd_sample->add_option("--thinning", sample.thinning, "steps between samples (-1: m)");
  cmd_sample->add_flag("--oracle-check", sample.oracle_check,
                       "compare sampled distribution with exact enumeration");
  cmd_sample->add_option("--seed", sample.seed, "master seed")->capture_default_str();
  cmd_sample->add_option("--threads", sample.threads, "worker threads")->capture_default_str();
  cmd_sample->add_option("--out", sample.out, "output JSONL path")->capture_default_str();
  add_config_option(cmd_sample, config_slot);

  cli::ScalingOpts scaling;
  CLI::App* cmd_scaling =
      app.add_subcommand("scaling", "h_p growth exponent across an n grid (CSV)");
  cmd_scaling->add_option("--mode", scaling.mode, "gibbs | ref")->capture_default_str();
  cmd_scaling->add_option("--n-grid", scaling.n_grid, "comma list of n")->capture_default_str();
  cmd_scaling->add_option("--gamma", scaling.gamma, "edge decay exponent")->required();
  cmd_scaling->add_option("--b", scaling.b, "penalty exponent (gibbs mode)");
  cmd_scaling->add_option("--p", scaling.p, "distance exponent")->capture_default_str();
  cmd_scaling->add_option("--samples", scaling.samples, "samples per n")->capture_default_str();
  cmd_scaling->add_option("--burn-in", scaling.burn_in, "steps before sampling (-1: 50m)");
  cmd_scaling->add_option("--thinning", scaling.thinning, "steps between samples (-1: m)");
  cmd_scaling->add_flag("--force", scaling.force, "run outside the trusted MCMC regime");
  cmd_scaling->add_option("--seed", scaling.seed, "master seed")->capture_default_str();
  cmd_scaling->add_option("--threads", scaling.threads, "worker threads")->capture_default_str();
  cmd_scaling->add_option("--out", scaling.out, "output CSV path")->capture_default_str();
  add_config_option(cmd_scaling, config_slot);

  cli::LocalFreqOpts localfreq;
  CLI::App* cmd_localfreq = app.add_subcommand(
      "localfreq", "ball-pattern census vs the infinite-path prediction (CSV)");
  cmd_localfreq->add_option("--mode", localfreq.mode, "ref | gibbs")->capture_default_str();
  cmd_localfreq->add_option("--n", localfreq.n, "vertex count")->required();
  cmd_localfreq->add_option("--gamma", localfreq.gamma, "edge decay exponent")->required();
  cmd_localfreq->add_option("--b", localfreq.b, "penalty exponent (gibbs mode)");
  cmd_localfreq->add_option("--p", localfreq.p, "distance exponent (gibbs mode)")
      ->capture_default_str();
  cmd_localfreq->add_option("--samples", localfreq.samples, "sample graphs")
      ->capture_default_str();
  cmd_localfreq->add_option("--k", localfreq.k, "ball radius")->capture_default_str();
  cmd_localfreq->add_option("--l", localfreq.l, "truncation length")->capture_default_str();
  cmd_localfreq->add_option("--pattern-file", localfreq.pattern_file,
                            "pattern JSON (default: bare radius-k ball)");
  cmd_localfreq->add_option("--mu-mode", localfreq.mu_mode, "exact | mc")->capture_default_str();
  cmd_localfreq->add_option("--mu-samples", localfreq.mu_samples, "Monte Carlo draws for mu")
      ->capture_default_str();
  cmd_localfreq->add_option("--long-edge-l", localfreq.long_edge_l,
                            "length bound for the exceedance check (-1: use --l)");
  cmd_localfreq->add_option("--epsilon", localfreq.epsilon, "exceedance threshold epsilon*n")
      ->capture_default_str();
  cmd_localfreq->add_option("--burn-in", localfreq.burn_in, "steps before sampling (-1: 50m)");
  cmd_localfreq->add_option("--thinning", localfreq.thinning, "steps between samples (-1: m)");
  cmd_localfreq->add_option("--seed", localfreq.seed, "master seed")->capture_default_str();
  cmd_localfreq->add_option("--threads", localfreq.threads, "worker threads")
      ->capture_default_str();
  cmd_localfreq->add_option("--out", localfreq.out, "census CSV path")->capture_default_str();
  add_config_option(cmd_localfreq, config_slot);

  cli::NoLimitOpts nolimit;
  CLI::App* cmd_nolimit = app.add_subcommand(
      "nolimit", "probability that every edge of length <= L is present, across b (CSV)");
  cmd_nolimit->add_option("--n", nolimit.n, "vertex count")->capture_default_str();
  cmd_nolimit->add_option("--gamma", nolimit.gamma, "edge decay exponent")
      ->capture_default_str();
  cmd_nolimit->add_option("--p", nolimit.p, "distance exponent")->capture_default_str();
  cmd_nolimit->add_option("--L", nolimit.big_l, "edge length bound")->capture_default_str();
  cmd_nolimit->add_option("--b-grid", nolimit.b_grid, "comma list of b")->capture_default_str();
  cmd_nolimit->add_option("--method", nolimit.method, "exact | mcmc")->capture_default_str();
  cmd_nolimit->add_option("--samples", nolimit.samples, "MCMC samples per b")
      ->capture_default_str();
  cmd_nolimit->add_option("--burn-in", nolimit.burn_in, "steps before sampling (-1: 50m)");
  cmd_nolimit->add_option("--thinning", nolimit.thinning, "steps between samples (-1: m)");
  cmd_nolimit->add_option("--seed", nolimit.seed, "master seed")->capture_default_str();
  cmd_nolimit->add_option("--threads", nolimit.threads, "worker threads")->capture_default_str();
  cmd_nolimit->add_option("--out", nolimit.out, "output CSV path")->capture_default_str();
  add_config_option(cmd_nolimit, config_slot);

  cli::EnumerateOpts enumerate;
  CLI::App* cmd_enumerate =
      app.add_subcommand("enumerate", "exact distribution over all graphs at small n (JSON)");
  cmd_enumerate->add_option("--n", enumerate.n, "vertex count")->required();
  cmd_enumerate->add_option("--gamma", enumerate.gamma, "edge decay exponent")->required();
  cmd_enumerate->add_option("--b", enumerate.b, "penalty exponent")->required();
  cmd_enumerate->add_option("--p", enumerate.p, "distance exponent")->capture_default_str();
  cmd_enumerate->add_flag("--full-table", enumerate.full_table, "include per-graph table");
  cmd_enumerate->add_option("--threads", enumerate.threads, "worker threads")
      ->capture_default_str();
  cmd_enumerate->add_option("--out", enumerate.out, "output JSON path")->capture_default_str();
  add_config_option(cmd_enumerate, config_slot);

  cli::GStarOpts gstar;
  CLI::App* cmd_gstar = app.add_subcommand(
      "gstar", "hierarchical construction: h_p and log-probability trends (CSV)");
  cmd_gstar->add_option("--regime", gstar.regime, "subcritical | supercritical | critical")
      ->required();
  cmd_gstar->add_option("--gamma", gstar.gamma, "edge decay exponent (non-critical)");
  cmd_gstar->add_option("--alpha", gstar.alpha, "target exponent (non-critical)");
  cmd_gstar->add_option("--i", gstar.i, "level count (critical)");
  cmd_gstar->add_option("--n-grid", gstar.n_grid, "comma list of n")->required();
  cmd_gstar->add_option("--p", gstar.p, "distance exponent")->capture_default_str();
  cmd_gstar->add_option("--graph-out", gstar.graph_out, "also write g* of the largest n (JSON)");
  cmd_gstar->add_option("--out", gstar.out, "output CSV path")->capture_default_str();
  add_config_option(cmd_gstar, config_slot);

  cli::TheoryOpts theory;
  CLI::App* cmd_theory =
      app.add_subcommand("theory", "alpha*, exceptional set and assumption flags (CSV)");
  cmd_theory->add_option("--gamma-grid", theory.gamma_grid, "comma list of gamma")->required();
  cmd_theory->add_option("--b-grid", theory.b_grid, "comma list of b")->required();
  cmd_theory->add_option("--p", theory.p, "distance exponent")->capture_default_str();
  cmd_theory->add_option("--out", theory.out, "output CSV path")->capture_default_str();
  add_config_option(cmd_theory, config_slot);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = inject_config(args);
    // CLI11 parses reversed vectors in place.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;  // --help exits 0; any parse failure is 2
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }

  try {
    if (*cmd_sample) return cli::run_sample(sample);
    if (*cmd_scaling) return cli::run_scaling(scaling);
    if (*cmd_localfreq) return cli::run_localfreq(localfreq);
    if (*cmd_nolimit) return cli::run_nolimit(nolimit);
    if (*cmd_enumerate) return cli::run_enumerate(enumerate);
    if (*cmd_gstar) return cli::run_gstar(gstar);
    if (*cmd_theory) return cli::run_theory(theory);
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
