#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// One experiment driver per subcommand.  Each run writes its primary output
// file plus a sidecar "<out>.manifest.json" recording the resolved config,
// a hash of it, the seed and the library version, so runs are reproducible
// from the manifest alone.  All functions throw std::invalid_argument on
// bad parameters (mapped to exit code 2 by main).

namespace cli {

struct SampleOpts {
  std::string mode = "ref";  // ref | gibbs
  int n = 0;
  double gamma = 0.0;
  double b = 0.0;
  std::string p = "inf";
  long long samples = 1;
  int replicas = 1;
  long long burn_in = -1;   // -1: default 50 m
  long long thinning = -1;  // -1: default m
  bool oracle_check = false;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out = "samples.jsonl";
};
int run_sample(const SampleOpts& opts);

struct ScalingOpts {
  std::string mode = "gibbs";  // gibbs | ref
  std::string n_grid = "128,256,512";
  double gamma = 0.0;
  std::optional<double> b;
  std::string p = "inf";
  long long samples = 50;
  long long burn_in = -1;
  long long thinning = -1;
  bool force = false;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out = "scaling.csv";
};
int run_scaling(const ScalingOpts& opts);

struct LocalFreqOpts {
  std::string mode = "ref";  // ref | gibbs
  int n = 0;
  double gamma = 0.0;
  double b = 0.0;
  std::string p = "inf";
  long long samples = 50;
  int k = 1;
  int l = 2;
  std::string pattern_file;      // empty: bare radius-k path ball
  std::string mu_mode = "exact";  // exact | mc
  long long mu_samples = 200000;
  int long_edge_l = -1;  // -1: use l
  double epsilon = 0.05;
  long long burn_in = -1;
  long long thinning = -1;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out = "census.csv";
};
int run_localfreq(const LocalFreqOpts& opts);

struct NoLimitOpts {
  int n = 5;
  double gamma = 2.0;
  std::string p = "1";
  int big_l = 2;
  std::string b_grid = "2,3,4,5";
  std::string method = "exact";  // exact | mcmc
  long long samples = 50;
  long long burn_in = -1;
  long long thinning = -1;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out = "nolimit.csv";
};
int run_nolimit(const NoLimitOpts& opts);

struct EnumerateOpts {
  int n = 5;
  double gamma = 1.0;
  double b = 0.0;
  std::string p = "inf";
  bool full_table = false;
  int threads = 1;
  std::string out = "enumeration.json";
};
int run_enumerate(const EnumerateOpts& opts);

struct GStarOpts {
  std::string regime;  // subcritical | supercritical | critical
  double gamma = 0.0;
  double alpha = 0.0;
  int i = 0;
  std::string n_grid;
  std::string p = "inf";
  std::string graph_out;  // optional: g* of the largest n as JSON
  std::string out = "gstar.csv";
};
int run_gstar(const GStarOpts& opts);

struct TheoryOpts {
  std::string gamma_grid;
  std::string b_grid;
  std::string p = "inf";
  std::string out = "theory.csv";
};
int run_theory(const TheoryOpts& opts);

}  // namespace cli
