#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rbl/analysis.hpp"
#include "rbl/dynamics.hpp"
#include "rbl/linkfn.hpp"
#include "rbl/report.hpp"
#include "rbl/schedules.hpp"

namespace rbl {

struct InitSpec {
  enum class Kind { random, fixed_m, capped_m, floored_m, certified };
  Kind kind = Kind::random;
  double m = 0.0;       // fixed_m / capped_m / floored_m
  long n_samples = 0;   // certified
};

InitSpec::Kind init_kind_from_id(const std::string& id);

struct RunConfig {
  int d = 20;
  std::string link_id = "cubic";
  ScheduleConfig schedule;
  double noise_std = 1.0;
  NoiseKind noise_kind = NoiseKind::gaussian;
  long horizon = 100000;
  int n_runs = 1;
  std::uint64_t base_seed = 1;
  std::string out_path;
  InitSpec init;
  std::optional<std::uint64_t> theta_star_seed;  // pins theta* across runs
  long log_every = 1;
  bool log_half_step = false;
  bool stop_at_hit = false;   // end a run once the hitting target is reached
  int threads = 0;            // 0: RBL_THREADS or hardware
  long max_T = 10000000;
  bool warm_switch_by_observer = false;  // composite: switch on diagnostic m

  std::optional<double> hitting_epsilon() const { return schedule.epsilon; }
  void validate() const;
};

struct TrajectoryRecord {
  int run_index = 0;
  long steps = 0;
  long log_every = 1;
  std::vector<long> t;
  std::vector<double> m, eta, sigma, reward, align;
  std::vector<double> regret_m, regret_a, cum_regret_m, cum_regret_a;
  std::vector<double> m_half;  // only with log_half_step
  std::optional<long> hit_time;
  double final_m = 0.0;
  double max_m = -1.0;
};

TrajectoryRecord run_trajectory(const RunConfig& config, int run_index);

struct EnsembleSummary {
  long steps = 0;
  long log_every = 1;
  int n_runs = 0;
  std::vector<long> t;
  std::vector<double> mean_m;
  std::vector<double> std_m;  // sample std across runs, 0 when n_runs == 1
  std::vector<double> final_m;
  std::vector<std::optional<long>> hit_times;
};

// Independent runs on per-run streams; trajectories execute in parallel but
// aggregation and CSV output follow run-index order, so results do not
// depend on the worker count. Writes per-step rows to config.out_path when
// set.
EnsembleSummary run_ensemble(const RunConfig& config);

// First t with m_t >= 1 - epsilon for one run, or nullopt at max_T.
std::optional<long> sample_complexity(const RunConfig& config, double epsilon,
                                      long max_T, int run_index = 0);

struct CounterexampleResult {
  double fraction = 0.0;          // runs with max_t m_t <= 0.2
  std::vector<double> max_m;      // per-run trajectory maximum
};

// Constant-rate runs against the non-monotone catalog link (or a control
// link). Hypothesis checks (m1 cap, sigma, eta versus log(T/delta)) are
// enforced for the counterexample link itself.
CounterexampleResult counterexample_experiment(const std::string& link_id,
                                               int d, long T, double eta,
                                               double sigma, double m1_cap,
                                               int n_runs, std::uint64_t seed,
                                               int threads = 0);

// Draws a direction, spends half the pulls on it and half on its antipode,
// and returns the better-scoring one.
Vec certify_initialization(const Environment& env, long n_samples,
                           RngStream& rng);

struct RegretRow {
  long T = 0;
  double cum_regret_m = 0.0;      // median across runs
  double cum_regret_action = 0.0;
  double ref_d_sqrt_T = 0.0;
  double ref_burnin_plus = 0.0;   // min(T, d^2 integral + d sqrt(T)); NaN if undefined
};

std::vector<RegretRow> regret_report(const RunConfig& config,
                                     const std::vector<long>& checkpoints);

enum class SweepTask { pure_exploration, burnin };

struct SweepResult {
  std::vector<int> dims;
  std::vector<double> median_hit;   // NaN when every run timed out
  std::vector<int> timeouts;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double slope_ci_lo = 0.0, slope_ci_hi = 0.0;  // 95%
};

SweepResult scaling_sweep(const std::vector<int>& dims,
                          const std::string& link_id, SweepTask task,
                          int runs_per_dim, const RunConfig& base);

// Planned horizon for schedules with a natural total (burn-in and composite
// kinds); 0 when the kind has none.
long planned_horizon(const RunConfig& config);

struct VerifyOptions {
  long n_mc = 200000;
  std::uint64_t seed = 20240901;
  int threads = 0;
};

std::vector<BoundReport> verify_all(const VerifyOptions& options);

void write_csv(std::ostream& os, const std::vector<TrajectoryRecord>& records,
               bool header = true);
void write_csv_file(const std::string& path,
                    const std::vector<TrajectoryRecord>& records);

RunConfig config_from_json_text(const std::string& text);
RunConfig load_config(const std::string& path);
std::string config_to_json_text(const RunConfig& config);

}  // namespace rbl
