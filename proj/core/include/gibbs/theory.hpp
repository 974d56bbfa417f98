#pragma once

#include <optional>
#include <span>
#include <string>

#include "gibbs/segment_graph.hpp"

namespace gibbs {

enum class GammaRegime { BelowOne, EqualOne, AboveOne };

// Predicted scaling exponent alpha*(gamma, b): h_p concentrates near
// N^alpha*.  For gamma = 1 the value is a right-continuous step function
// 1/(k+1) on [(k-1)/k, k/(k+1)); critical_k reports that k (present exactly
// when gamma = 1 and 0 <= b < 1).
struct AlphaStarResult {
  double value;
  GammaRegime regime;
  std::optional<long long> critical_k;  // grows like 1/(1-b) as b -> 1
};

AlphaStarResult alpha_star(double gamma, double b);

// Membership in the exceptional set E_p where the gamma = 1 scaling result
// does not apply.  Finite p: union over k >= 1 of the closed intervals
// [(k-1)/k, (k-1)/k + max(0, (2p - (p-1)k) / (k(k+1)(k+2p)))].
// p = infinity: [0, 1/4] together with the points (k-1)/k, k >= 2.
// Boundary comparisons use the absolute tolerance `tol`.
bool in_exceptional_set(PNorm p, double b, double tol = 1e-12);

// Hypothesis of the local-limit theorem: gamma in (0,1) with b < 1, or
// gamma = 1 with b < 1 and b outside E_p, or gamma > 1 with b < 0.
bool theorem2_assumption_holds(double gamma, double b, PNorm p);

// Hypothesis of the scaling theorem behind alpha_star: everything except
// gamma = 1 with b in E_p.
bool scaling_theorem_covers(double gamma, double b, PNorm p);

// CSV with header gamma,b,alpha_star,in_E_p,assumption_ok; alpha_star is
// "na" where the scaling theorem does not cover the parameters.
std::string theory_grid_csv(std::span<const double> gammas,
                            std::span<const double> bs, PNorm p);

}  // namespace gibbs
