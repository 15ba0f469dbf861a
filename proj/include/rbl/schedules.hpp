#pragma once
#include <optional>
#include <string>
#include <vector>

#include "rbl/linkfn.hpp"

namespace rbl {

enum class ScheduleKind {
  constant,
  pure_exploration,
  regret_min,
  burnin_glb,
  burnin_convex_epochs,
  fig1_threshold,
  counterexample,
  composite,  // burn-in plan, then pure exploration on a fresh clock
};

ScheduleKind schedule_kind_from_id(const std::string& id);
std::string schedule_kind_id(ScheduleKind kind);

struct Rates {
  double eta = 0.0;
  double sigma = 0.0;
};

struct ScheduleConfig {
  ScheduleKind kind = ScheduleKind::constant;
  int d = 0;
  double gamma0 = 0.1;     // taken from the link
  double c_small = 0.5;    // small constant c
  double C_big = 24.0;     // large constant C
  double delta = 0.01;     // failure budget per step
  std::optional<double> epsilon;  // target accuracy, where applicable

  // constant / counterexample / fig1 knobs
  double eta_const = 0.002;
  double sigma_const = 0.5;
  double sigma_hi = 0.5;
  double sigma_lo = 0.2;
  double m_threshold = 0.7;

  double iota_learning() const;  // ln^2(d / (epsilon * delta))
  double iota_burnin() const;    // ln^2(d / delta)
  void validate() const;
};

// Deterministic per-step rates; throws for kinds that need an epoch plan
// (burnin_convex_epochs) or diagnostic state (fig1_threshold).
Rates rates_at(const ScheduleConfig& config, long t);

// Planned burn-in horizon C*d/eta for the constant-rate schedule.
long burnin_glb_horizon(const ScheduleConfig& config);

struct Epoch {
  int k = 0;            // 1-based
  double m_lower = 0.0; // (1-gamma0)^2 sqrt(k/d)
  double m_upper = 0.0; // (1-gamma0/4) sqrt(k/d)
  double eta = 0.0;
  double sigma = 0.0;
  double delta_raw = 0.0;  // real-valued planned length before rounding
  long length = 0;
};

struct EpochPlan {
  std::vector<Epoch> epochs;
  double sigma = 0.0;  // common exploration level (burn-in plans)
  long total_length = 0;
};

// Milestone schedule for convex links: epoch k runs at
// eta_k = c f'(m_lower_k) / (iota d m_lower_k) for
// Delta_k = C d (m_lower_{k+1} - m_lower_k) / (eta_k f'(m_lower_k)) steps.
EpochPlan build_epoch_plan(const LinkFunction& link, int d, double gamma0,
                           double c_small, double C_big, double delta);

struct EpochRates {
  double eta = 0.0;
  double sigma = 0.0;
  int epoch_index = 0;  // 1-based
};

EpochRates epoch_rates_at(const EpochPlan& plan, long t);  // t in [1, total]

// Accuracy-halving plan for the learning phase, starting from eps0 =
// gamma0/4 and halving until eps <= eps_target. regret_min_mode picks
// sigma^2 = eps and the longer epoch C d / (eta eps).
EpochPlan build_learning_epoch_plan(int d, double gamma0, double eps_target,
                                    double c_small, double C_big, double delta,
                                    bool regret_min_mode);

// Threshold schedule used for the constant-rate reproduction runs: sigma_hi
// until the diagnostic correlation first reaches m_threshold, sigma_lo ever
// after. The latch is per-trajectory state owned by the caller.
struct Fig1Latch {
  bool crossed = false;
};

Rates fig1_rates(double state_m, double eta_const, double sigma_hi,
                 double sigma_lo, double threshold, Fig1Latch& latch);

}  // namespace rbl
