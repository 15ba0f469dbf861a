#include "rbl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rbl/quadrature.hpp"
#include "rbl/sphere.hpp"

namespace rbl {
namespace {

double sq(double x) { return x * x; }

}  // namespace

DriftEstimate drift_expected(const LinkFunction& link, int d, double m,
                             double eta, double sigma, long n_mc,
                             RngStream& rng) {
  if (d < 3) throw std::invalid_argument("drift_expected: d must be >= 3");
  if (sigma <= 0.0 || sigma > 1.0) {
    throw std::invalid_argument("drift_expected: sigma must be in (0, 1]");
  }
  const double a = std::sqrt(1.0 - sigma * sigma);
  const double b = sigma * std::sqrt(std::max(0.0, 1.0 - m * m));
  const double pref =
      eta * sigma * sigma / (d - 2) * link.deriv(a) * (1.0 - m * m);

  SphereMarginal marg(d - 1);
  const long pairs = std::max<long>(1, n_mc / 2);
  double sum = 0.0, sumsq = 0.0;
  for (long i = 0; i < pairs; ++i) {
    const double x = marg.sample(rng);
    const double w = 1.0 - x * x;
    const double g =
        0.5 * (link.deriv(a * m + b * x) + link.deriv(a * m - b * x)) * w;
    sum += g;
    sumsq += g * g;
  }
  const double mean = sum / pairs;
  const double var = std::max(0.0, sumsq / pairs - mean * mean);
  const double se = std::sqrt(var / pairs);

  DriftEstimate est;
  est.value = pref * mean;
  est.std_error = std::abs(pref) * se;
  if (link.name == "identity") {
    est.closed_form = eta * sigma * sigma * (1.0 - m * m) / (d - 1);
  }
  return est;
}

double drift_lower_bound(const LinkFunction& link, int d, double m, double eta,
                         double sigma, DriftRegime regime,
                         const ConcentrationParams& params) {
  if (!(m > 0.0)) throw std::invalid_argument("drift_lower_bound: m must be > 0");
  const double a = std::sqrt(1.0 - sigma * sigma);
  double bound = params.c_dr * eta * sigma * sigma / d * link.deriv(a) *
                 (1.0 - m * m);
  switch (regime) {
    case DriftRegime::glb:
      if (!link.c0) {
        throw std::invalid_argument(
            "drift_lower_bound: link has no derivative floor (glb regime)");
      }
      break;
    case DriftRegime::convex:
      if (!link.convex_on_unit) {
        throw std::invalid_argument(
            "drift_lower_bound: link is not convex on [0,1] (convex regime)");
      }
      bound *= link.deriv(a * m);
      break;
  }
  return bound;
}

double subexp_norm_bound(const LinkFunction& link, int d, double m, double eta,
                         double sigma, const ConcentrationParams& params) {
  if (std::abs(m) > 1.0 || sigma < 0.0 || sigma > 1.0) {
    throw std::invalid_argument("subexp_norm_bound: bad (m, sigma)");
  }
  const double a = std::sqrt(1.0 - sigma * sigma);
  return params.C_se * std::sqrt((1.0 - m * m) / d) * eta * sigma *
         link.deriv(a);
}

double concentration_envelope(double V, const ConcentrationParams& params) {
  if (V < 0.0) throw std::invalid_argument("concentration_envelope: V < 0");
  const double inner = std::max(V * params.omega, 1.0);
  const double ell =
      2.0 * std::log(1.0 + std::log(inner)) + std::log(1.0 / params.delta);
  return params.C_mt * (std::sqrt(std::max(V, 1.0 / params.omega) * ell) +
                        ell / params.lambda_max);
}

double normalization_error_bound(const LinkFunction& link, double eta,
                                 double sigma, double delta,
                                 const ConcentrationParams& params) {
  if (delta <= 0.0 || delta >= 1.0) {
    throw std::invalid_argument("normalization_error_bound: delta in (0,1)");
  }
  const double fp = link.deriv(std::sqrt(1.0 - sigma * sigma));
  return params.C_nm * sq(eta) * sq(sigma) * sq(fp) * std::log(1.0 / delta);
}

BurninIntegral burnin_integral(const LinkFunction& link, int d, double gamma0,
                               std::optional<double> lower,
                               std::optional<double> upper) {
  BurninIntegral out;
  out.lower = lower.value_or(1.0 / (2.0 * std::sqrt(double(d))));
  out.upper = upper.value_or(1.0 - gamma0 / 4.0);
  if (!(out.lower < out.upper)) {
    throw std::invalid_argument("burnin_integral: empty interval");
  }
  // coarse scan first so a vanishing f' is reported with its location
  const int scan = 1000;
  for (int i = 0; i <= scan; ++i) {
    const double x = out.lower + (out.upper - out.lower) * i / scan;
    if (link.deriv(x) <= 0.0) {
      throw std::runtime_error("burnin_integral: f' vanishes at m = " +
                               std::to_string(x));
    }
  }
  auto integrand = [&link](double x) {
    const double fp = link.deriv(x);
    if (fp <= 0.0) {
      throw std::runtime_error("burnin_integral: f' vanishes at m = " +
                               std::to_string(x));
    }
    return x / (fp * fp);
  };
  out.integral = integrate(integrand, out.lower, out.upper, 1e-9, 10000);
  out.d2_scaled = double(d) * double(d) * out.integral;
  return out;
}

DriftProxy::DriftProxy(const LinkFunction& link, int d, long n_mc_per_node,
                       double grid_step, RngStream rng)
    : link_(link), d_(d), n_mc_(n_mc_per_node), step_(grid_step), rng_(rng) {
  if (grid_step <= 0.0 || grid_step > 0.5) {
    throw std::invalid_argument("DriftProxy: grid_step out of range");
  }
}

const DriftProxy::Grid& DriftProxy::grid_for(double eta, double sigma) {
  const auto key = std::make_pair(eta, sigma);
  auto it = grids_.find(key);
  if (it != grids_.end()) return it->second;

  Grid grid;
  const int n_nodes = static_cast<int>(std::floor(2.0 / step_)) + 1;
  grid.value.resize(n_nodes);
  grid.se.resize(n_nodes);
  RngStream node_rng = rng_.child(grids_.size() + 1);
  for (int i = 0; i < n_nodes; ++i) {
    const double m = std::min(1.0, -1.0 + i * step_);
    DriftEstimate est = drift_expected(link_, d_, m, eta, sigma, n_mc_, node_rng);
    grid.value[i] = est.value;
    grid.se[i] = est.std_error;
  }
  return grids_.emplace(key, std::move(grid)).first->second;
}

std::pair<double, double> DriftProxy::value_and_se(double m, double eta,
                                                   double sigma) {
  const Grid& g = grid_for(eta, sigma);
  const double pos = (std::clamp(m, -1.0, 1.0) + 1.0) / step_;
  const int i = std::min<int>(static_cast<int>(pos), g.value.size() - 2);
  const double t = pos - i;
  const double v = (1.0 - t) * g.value[i] + t * g.value[i + 1];
  const double se = std::max(g.se[i], g.se[i + 1]);
  return {v, se};
}

BoundReport MonitorReport::to_bound_report() const {
  BoundReport rep;
  rep.name = "martingale_monitor";
  rep.theory_value = 1.0;  // envelope normalized: |S_t| / envelope_t <= 1
  rep.empirical_value = max_ratio;
  rep.pass = !ever_violated;
  std::ostringstream meta;
  meta << "steps=" << steps << " violations=" << violations
       << " V_T=" << v_final << " widen=" << widen_total;
  rep.meta = meta.str();
  return rep;
}

MonitorReport martingale_monitor(const StepTrace& trace,
                                 const LinkFunction& link, int d,
                                 const ConcentrationParams& params,
                                 DriftProxy& proxy) {
  if (trace.m == nullptr || trace.m_half == nullptr || trace.eta == nullptr ||
      trace.sigma == nullptr || trace.m_half->empty() ||
      trace.m->size() != trace.m_half->size()) {
    throw std::invalid_argument(
        "martingale_monitor: trajectory lacks half-step instrumentation");
  }
  const size_t n = trace.m->size();
  MonitorReport rep;
  rep.steps = static_cast<long>(n);
  double S = 0.0, V = 0.0, k_max = 0.0, widen = 0.0;
  ConcentrationParams local = params;
  for (size_t s = 0; s < n; ++s) {
    const double m = (*trace.m)[s];
    const double eta = (*trace.eta)[s];
    const double sigma = (*trace.sigma)[s];
    const auto [drift, se] = proxy.value_and_se(m, eta, sigma);
    S += (*trace.m_half)[s] - m - drift;
    widen += 3.0 * se;
    const double K = subexp_norm_bound(link, d, m, eta, sigma, params);
    V += K * K;
    k_max = std::max(k_max, K);
    local.lambda_max = 1.0 / (2.0 * params.C_se * std::max(k_max, 1e-300));
    const double env = concentration_envelope(V, local) + widen;
    const double ratio = std::abs(S) / env;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 1.0) {
      ++rep.violations;
      rep.ever_violated = true;
    }
  }
  rep.v_final = V;
  rep.widen_total = widen;
  return rep;
}

}  // namespace rbl
