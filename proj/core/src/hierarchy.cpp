#include "gibbs/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gibbs/measures.hpp"

namespace gibbs {

std::vector<Edge> layer(LayerSpec spec) {
  if (spec.n < 2) throw std::invalid_argument("layer needs n >= 2");
  if (spec.spacing < 1) throw std::invalid_argument("layer needs spacing >= 1");
  const int n = spec.n;
  const int l = spec.spacing;
  // k is the integer with 1 + k l < n <= 1 + (k+1) l.
  const int k = (n - 1 + l - 1) / l - 1;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j < k; ++j) edges.push_back(Edge{1 + j * l, 1 + (j + 1) * l});
  edges.push_back(Edge{1 + k * l, n});
  return edges;
}

Regime Regime::subcritical(double gamma, double alpha) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("subcritical regime needs gamma in (0, 1)");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("subcritical regime needs alpha in (0, 1)");
  }
  return Regime(Kind::SubCritical, gamma, alpha, 0);
}

Regime Regime::supercritical(double gamma, double alpha) {
  if (!(gamma > 1.0) || std::isinf(gamma)) {
    throw std::invalid_argument("supercritical regime needs gamma > 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("supercritical regime needs alpha in (0, 1)");
  }
  return Regime(Kind::SuperCritical, gamma, alpha, 0);
}

Regime Regime::critical(int i) {
  if (i < 2) throw std::invalid_argument("critical regime needs i >= 2");
  return Regime(Kind::Critical, 1.0, 0.0, i);
}

double Regime::scaling_exponent() const {
  // Distances in g* are dominated by path walks at the finest hierarchical
  // spacing: n^(1-alpha) in both non-critical regimes, n^(1/i) when critical.
  return kind_ == Kind::Critical ? 1.0 / static_cast<double>(i_) : 1.0 - alpha_;
}

double Regime::cost_exponent() const {
  // Leading exponent of -log P(g* present).  The layer sums are dominated by
  // the finest layer when gamma < 1 and by the coarsest long layer when
  // gamma > 1; both collapse to 1 at gamma = 1.
  const double a = scaling_exponent();
  return kind_ == Kind::SuperCritical ? gamma_ + a * (1.0 - gamma_)
                                      : 1.0 - a * (1.0 - gamma_);
}

namespace {

int rounded_spacing(double value) {
  return static_cast<int>(std::max<long long>(1, std::llround(value)));
}

}  // namespace

std::vector<int> g_star_spacings(int n, const Regime& regime) {
  if (n < 2) throw std::invalid_argument("g_star needs n >= 2");
  const double nd = static_cast<double>(n);
  std::vector<int> spacings;
  switch (regime.kind()) {
    case Regime::Kind::SubCritical: {
      // i smallest with n 2^-i < n^(1-alpha); layers n 2^-j, j = 0..i, + path.
      const double floor_value = std::pow(nd, 1.0 - regime.alpha());
      int i = 0;
      while (nd * std::pow(2.0, -i) >= floor_value) ++i;
      for (int j = 0; j <= i; ++j) spacings.push_back(rounded_spacing(nd * std::pow(2.0, -j)));
      spacings.push_back(1);
      break;
    }
    case Regime::Kind::SuperCritical: {
      // i smallest with 2^i > n^alpha; layers 2^j, j = 0..i.
      const double cap = std::pow(nd, regime.alpha());
      int i = 0;
      while (std::pow(2.0, i) <= cap) ++i;
      for (int j = i; j >= 0; --j) {
        const double s = std::pow(2.0, j);
        spacings.push_back(s > nd ? n : static_cast<int>(s));
      }
      break;
    }
    case Regime::Kind::Critical: {
      // layers n^(j/i), j = i-1..1, + path.
      const int i = regime.i();
      for (int j = i - 1; j >= 1; --j) {
        spacings.push_back(rounded_spacing(std::pow(nd, static_cast<double>(j) / i)));
      }
      spacings.push_back(1);
      break;
    }
  }
  std::sort(spacings.begin(), spacings.end(), std::greater<int>());
  spacings.erase(std::unique(spacings.begin(), spacings.end()), spacings.end());
  return spacings;
}

SegmentGraph g_star(int n, const Regime& regime) {
  std::vector<Edge> edges;
  for (const int spacing : g_star_spacings(n, regime)) {
    for (const Edge& e : layer(LayerSpec{n, spacing})) {
      if (e.length() >= 2) edges.push_back(e);  // length-1 edges are the path
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return SegmentGraph(n, std::move(edges));
}

std::vector<ScalingRow> verify_scaling(std::span<const int> n_grid,
                                       const Regime& regime, PNorm p) {
  if (n_grid.empty()) throw std::invalid_argument("verify_scaling needs a nonempty n grid");
  std::vector<ScalingRow> rows;
  rows.reserve(n_grid.size());
  const double a = regime.scaling_exponent();
  const double logp_exponent = regime.cost_exponent();
  for (const int n : n_grid) {
    const SegmentGraph g = g_star(n, regime);
    const double h = h_p(g, p);
    const double log_prob = subgraph_log_prob(g, regime.gamma());
    rows.push_back(ScalingRow{
        n,
        regime.kind() == Regime::Kind::Critical ? static_cast<double>(regime.i())
                                                : regime.alpha(),
        h, log_prob, h / std::pow(static_cast<double>(n), a),
        -log_prob / std::pow(static_cast<double>(n), logp_exponent)});
  }
  return rows;
}

std::string to_csv(std::span<const ScalingRow> rows) {
  std::ostringstream out;
  out.precision(12);
  out << "n,alpha_or_i,h_p,log_prob,ratio_h,ratio_logp\n";
  for (const ScalingRow& row : rows) {
    out << row.n << ',' << row.alpha_or_i << ',' << row.h_p << ',' << row.log_prob << ','
        << row.ratio_h << ',' << row.ratio_logp << '\n';
  }
  return out.str();
}

}  // namespace gibbs
