#include "gibbs/theory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gibbs {

namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || std::isinf(gamma) || std::isnan(gamma)) {
    throw std::invalid_argument("theory predicates need 0 < gamma < infinity");
  }
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

AlphaStarResult alpha_star(double gamma, double b) {
  check_gamma(gamma);
  if (std::isnan(b)) throw std::invalid_argument("alpha_star needs a real b");
  if (gamma < 1.0) {
    return AlphaStarResult{clamp01((1.0 - b) / (2.0 - gamma)), GammaRegime::BelowOne, {}};
  }
  if (gamma > 1.0) {
    return AlphaStarResult{clamp01((gamma - b) / gamma), GammaRegime::AboveOne, {}};
  }
  if (b < 0.0) return AlphaStarResult{1.0, GammaRegime::EqualOne, {}};
  if (b >= 1.0) return AlphaStarResult{0.0, GammaRegime::EqualOne, {}};
  // Unique k >= 1 with (k-1)/k <= b < k/(k+1), i.e. k = floor(1/(1-b)) in
  // exact arithmetic (bounded: b < 1 keeps it below ~2^53).  The capped
  // nudges absorb division rounding near interval endpoints; past the cap
  // neighbouring endpoints are closer than one ulp of b anyway.  A walk
  // from k = 1 would need ~1/(1-b) iterations.
  long long k = std::max(1LL, static_cast<long long>(std::floor(1.0 / (1.0 - b))));
  for (int nudge = 0;
       nudge < 3 && b >= static_cast<double>(k) / static_cast<double>(k + 1); ++nudge)
    ++k;
  for (int nudge = 0;
       nudge < 3 && k > 1 && b < static_cast<double>(k - 1) / static_cast<double>(k);
       ++nudge)
    --k;
  return AlphaStarResult{1.0 / static_cast<double>(k + 1), GammaRegime::EqualOne, k};
}

bool in_exceptional_set(PNorm p, double b, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  if (!(b < 1.0)) return false;  // the intervals accumulate at 1 from below
  if (b < -tol) return false;

  // Interval k lies inside [(k-1)/k, 1 - 1/(k+1)): its width is at most
  // 1/(k(k+1)).  Only k near 1/(1-b) can therefore contain b; scan that
  // window (capped: past 1e7 adjacent intervals are closer than any
  // sensible tolerance resolves in double).
  const double inv = 1.0 / (1.0 - b);
  const long long k_lo = std::max(1LL, static_cast<long long>(std::floor(inv)) - 3);
  const long long k_hi = std::min<long long>(10'000'000, static_cast<long long>(std::floor(inv)) + 3);

  if (p.is_infinite()) {
    if (b >= -tol && b <= 0.25 + tol) return true;
    for (long long k = std::max(2LL, k_lo); k <= k_hi; ++k) {
      const double point = static_cast<double>(k - 1) / static_cast<double>(k);
      if (std::abs(b - point) <= tol) return true;
    }
    return false;
  }

  const double pv = p.value();
  for (long long k = k_lo; k <= k_hi; ++k) {
    const double kd = static_cast<double>(k);
    const double left = (kd - 1.0) / kd;
    const double width =
        std::max(0.0, (2.0 * pv - (pv - 1.0) * kd) / (kd * (kd + 1.0) * (kd + 2.0 * pv)));
    if (b >= left - tol && b <= left + width + tol) return true;
  }
  return false;
}

bool theorem2_assumption_holds(double gamma, double b, PNorm p) {
  check_gamma(gamma);
  if (gamma < 1.0) return b < 1.0;
  if (gamma > 1.0) return b < 0.0;
  return b < 1.0 && !in_exceptional_set(p, b);
}

bool scaling_theorem_covers(double gamma, double b, PNorm p) {
  check_gamma(gamma);
  return gamma != 1.0 || !in_exceptional_set(p, b);
}

std::string theory_grid_csv(std::span<const double> gammas,
                            std::span<const double> bs, PNorm p) {
  if (gammas.empty() || bs.empty()) {
    throw std::invalid_argument("theory grid needs nonempty gamma and b grids");
  }
  std::ostringstream out;
  out.precision(12);
  out << "gamma,b,alpha_star,in_E_p,assumption_ok\n";
  for (const double gamma : gammas) {
    for (const double b : bs) {
      const bool in_ep = in_exceptional_set(p, b);
      out << gamma << ',' << b << ',';
      if (scaling_theorem_covers(gamma, b, p)) {
        out << alpha_star(gamma, b).value;
      } else {
        out << "na";
      }
      out << ',' << (in_ep ? 1 : 0) << ',' << (theorem2_assumption_holds(gamma, b, p) ? 1 : 0)
          << '\n';
    }
  }
  return out.str();
}

}  // namespace gibbs
