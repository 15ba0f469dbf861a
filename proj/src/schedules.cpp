#include "rbl/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbl {
namespace {

double sq(double x) { return x * x; }

}  // namespace

ScheduleKind schedule_kind_from_id(const std::string& id) {
  if (id == "constant") return ScheduleKind::constant;
  if (id == "pure_exploration") return ScheduleKind::pure_exploration;
  if (id == "regret_min") return ScheduleKind::regret_min;
  if (id == "burnin_glb") return ScheduleKind::burnin_glb;
  if (id == "burnin_convex_epochs") return ScheduleKind::burnin_convex_epochs;
  if (id == "fig1_threshold") return ScheduleKind::fig1_threshold;
  if (id == "counterexample") return ScheduleKind::counterexample;
  if (id == "composite") return ScheduleKind::composite;
  throw std::invalid_argument("unknown schedule kind: " + id);
}

std::string schedule_kind_id(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::pure_exploration: return "pure_exploration";
    case ScheduleKind::regret_min: return "regret_min";
    case ScheduleKind::burnin_glb: return "burnin_glb";
    case ScheduleKind::burnin_convex_epochs: return "burnin_convex_epochs";
    case ScheduleKind::fig1_threshold: return "fig1_threshold";
    case ScheduleKind::counterexample: return "counterexample";
    case ScheduleKind::composite: return "composite";
  }
  return "?";
}

double ScheduleConfig::iota_learning() const {
  const double eps = epsilon.value_or(gamma0 / 4.0);
  return sq(std::log(d / (eps * delta)));
}

double ScheduleConfig::iota_burnin() const { return sq(std::log(d / delta)); }

void ScheduleConfig::validate() const {
  if (c_small <= 0.0 || C_big <= 0.0) {
    throw std::invalid_argument("schedule: c and C must be > 0");
  }
  if (c_small * C_big > 1e3) {
    throw std::invalid_argument("schedule: c*C exceeds the sanity cap 1e3");
  }
  if (delta <= 0.0 || delta >= 1.0) {
    throw std::invalid_argument("schedule: delta must be in (0, 1)");
  }
  if (epsilon && (*epsilon <= 0.0 || *epsilon >= 1.0)) {
    throw std::invalid_argument("schedule: epsilon must be in (0, 1)");
  }
}

Rates rates_at(const ScheduleConfig& config, long t) {
  if (t < 1) throw std::invalid_argument("rates_at: t must be >= 1");
  const double d = config.d;
  switch (config.kind) {
    case ScheduleKind::constant:
      return {config.eta_const, config.sigma_const};
    case ScheduleKind::counterexample:
      return {0.001, 0.1};
    case ScheduleKind::pure_exploration: {
      const double eta = config.c_small / config.iota_learning() *
                         std::min(d / t, 1.0 / d);
      return {eta, std::sqrt(config.gamma0)};
    }
    case ScheduleKind::regret_min: {
      const double sigma2 = std::min(1.0, config.C_big * d / std::sqrt(double(t)));
      // iota tracks the current accuracy scale when no explicit target is set
      const double eps = config.epsilon
                             ? *config.epsilon
                             : std::min(1.0, d / std::sqrt(double(t)));
      const double iota = sq(std::log(d / (eps * config.delta)));
      const double eta = config.c_small / iota *
                         std::min(1.0 / std::sqrt(double(t)), 1.0 / d);
      return {eta, std::sqrt(sigma2)};
    }
    case ScheduleKind::burnin_glb: {
      const double eta = config.c_small / (d * config.iota_burnin());
      return {eta, std::sqrt(config.gamma0)};
    }
    case ScheduleKind::burnin_convex_epochs:
      throw std::logic_error("rates_at: use epoch_rates_at for burnin_convex_epochs");
    case ScheduleKind::fig1_threshold:
      throw std::logic_error("rates_at: fig1_threshold needs diagnostic state");
    case ScheduleKind::composite:
      throw std::logic_error("rates_at: composite is driven by the runner");
  }
  throw std::logic_error("rates_at: unhandled kind");
}

long burnin_glb_horizon(const ScheduleConfig& config) {
  const double eta = config.c_small / (config.d * config.iota_burnin());
  return static_cast<long>(std::ceil(config.C_big * config.d / eta));
}

EpochPlan build_epoch_plan(const LinkFunction& link, int d, double gamma0,
                           double c_small, double C_big, double delta) {
  if (d < 4) throw std::invalid_argument("build_epoch_plan: d must be >= 4");
  if (!link.convex_on_unit) {
    throw std::invalid_argument("build_epoch_plan: link is not convex on [0,1]");
  }
  const double iota = sq(std::log(d / delta));
  auto m_lower = [&](int k) { return sq(1.0 - gamma0) * std::sqrt(double(k) / d); };
  auto m_upper = [&](int k) {
    return (1.0 - gamma0 / 4.0) * std::sqrt(double(k) / d);
  };
  if (link.deriv(m_lower(1)) <= 0.0) {
    throw std::invalid_argument(
        "build_epoch_plan: f'(m_lower_1) <= 0, schedule undefined");
  }
  EpochPlan plan;
  plan.sigma = std::sqrt(gamma0);
  for (int k = 1; k <= d - 1; ++k) {
    Epoch e;
    e.k = k;
    e.m_lower = m_lower(k);
    e.m_upper = m_upper(k);
    const double fp = link.deriv(e.m_lower);
    if (fp <= 0.0) {
      throw std::invalid_argument("build_epoch_plan: f' vanishes at milestone " +
                                  std::to_string(e.m_lower));
    }
    e.eta = c_small * fp / (iota * d * e.m_lower);
    e.sigma = plan.sigma;
    e.delta_raw = C_big * d * (m_lower(k + 1) - e.m_lower) / (e.eta * fp);
    e.length = std::max<long>(1, static_cast<long>(std::ceil(e.delta_raw)));
    plan.total_length += e.length;
    plan.epochs.push_back(e);
  }
  return plan;
}

EpochRates epoch_rates_at(const EpochPlan& plan, long t) {
  if (t < 1 || t > plan.total_length) {
    throw std::out_of_range("epoch_rates_at: t outside the plan horizon");
  }
  long acc = 0;
  for (const Epoch& e : plan.epochs) {
    acc += e.length;
    if (t <= acc) return {e.eta, e.sigma, e.k};
  }
  throw std::logic_error("epoch_rates_at: unreachable");
}

EpochPlan build_learning_epoch_plan(int d, double gamma0, double eps_target,
                                    double c_small, double C_big, double delta,
                                    bool regret_min_mode) {
  if (eps_target <= 0.0 || eps_target >= 1.0) {
    throw std::invalid_argument("learning plan: eps_target must be in (0, 1)");
  }
  EpochPlan plan;
  plan.sigma = std::sqrt(gamma0);  // per-epoch sigma overridden in RM mode
  double eps = gamma0 / 4.0;
  int k = 1;
  for (;;) {
    const double iota = sq(std::log(d / (eps * delta)));
    Epoch e;
    e.k = k++;
    e.m_lower = 1.0 - eps;        // entry correlation
    e.m_upper = 1.0 - eps / 2.0;  // exit correlation
    e.eta = c_small * eps / (d * iota);
    e.sigma = regret_min_mode ? std::sqrt(eps) : std::sqrt(gamma0);
    const double horizon =
        regret_min_mode ? C_big * d / (e.eta * eps) : C_big * d / e.eta;
    e.delta_raw = horizon;
    e.length = std::max<long>(1, static_cast<long>(std::ceil(horizon)));
    plan.total_length += e.length;
    plan.epochs.push_back(e);
    if (eps / 2.0 <= eps_target) break;
    eps /= 2.0;
  }
  return plan;
}

Rates fig1_rates(double state_m, double eta_const, double sigma_hi,
                 double sigma_lo, double threshold, Fig1Latch& latch) {
  latch.crossed = latch.crossed || state_m >= threshold;
  return {eta_const, latch.crossed ? sigma_lo : sigma_hi};
}

}  // namespace rbl
