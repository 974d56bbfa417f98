#pragma once

#include <span>
#include <string>
#include <vector>

#include "gibbs/segment_graph.hpp"

namespace gibbs {

// Layer E_{N,l}: edges {1, 1+l}, {1+l, 1+2l}, ..., {1+kl, N} where k is the
// integer with 1 + kl < N <= 1 + (k+1)l.  Edges may have length 1 (they then
// coincide with path edges).
struct LayerSpec {
  int n;
  int spacing;
};

std::vector<Edge> layer(LayerSpec spec);

// The three regimes of the hierarchical construction g*.
class Regime {
 public:
  enum class Kind { SubCritical, SuperCritical, Critical };

  // gamma in (0, 1), alpha in (0, 1): layers at spacings N 2^-j, j = 0..i,
  // i smallest with N 2^-i < N^(1-alpha), plus the path layer.
  static Regime subcritical(double gamma, double alpha);
  // gamma > 1, alpha in (0, 1): layers at spacings 2^j, j = 0..i, i smallest
  // with 2^i > N^alpha.
  static Regime supercritical(double gamma, double alpha);
  // gamma = 1, i >= 2 (i.e. alpha in (1/i, 1/(i-1))): layers at spacings
  // N^(j/i), j = 1..i-1, plus the path layer.
  static Regime critical(int i);

  Kind kind() const { return kind_; }
  double gamma() const { return gamma_; }
  double alpha() const { return alpha_; }  // sub/supercritical only
  int i() const { return i_; }             // critical only

  // Growth exponent of h_p(g*): distances are dominated by path walks at the
  // finest spacing, so h_p grows like n^(1-alpha) in the non-critical regimes
  // and n^(1/i) in the critical one.
  double scaling_exponent() const;
  // Growth exponent of -log P(all long edges of g* present).
  double cost_exponent() const;

 private:
  Regime(Kind kind, double gamma, double alpha, int i)
      : kind_(kind), gamma_(gamma), alpha_(alpha), i_(i) {}
  Kind kind_;
  double gamma_;
  double alpha_;
  int i_;
};

// Layer spacings used by g_star(n, regime), largest first, path layer (1)
// included.  Non-integer spacings are rounded to the nearest integer >= 1.
std::vector<int> g_star_spacings(int n, const Regime& regime);

// Union of the regime's layers as a SegmentGraph (length-1 edges coincide
// with the implicit path and are not stored).
SegmentGraph g_star(int n, const Regime& regime);

// One row per n: h_p(g*), log of the probability that all of g*'s long edges
// are present, and the trend ratios h_p / n^scaling_exponent and
// -log_prob / n^cost_exponent, which stay bounded as n grows.
struct ScalingRow {
  int n;
  double alpha_or_i;
  double h_p;
  double log_prob;
  double ratio_h;
  double ratio_logp;
};

std::vector<ScalingRow> verify_scaling(std::span<const int> n_grid,
                                       const Regime& regime, PNorm p);

// CSV with header n,alpha_or_i,h_p,log_prob,ratio_h,ratio_logp.
std::string to_csv(std::span<const ScalingRow> rows);

}  // namespace gibbs
