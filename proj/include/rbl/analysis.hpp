#pragma once
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rbl/linkfn.hpp"
#include "rbl/report.hpp"
#include "rbl/rng.hpp"

namespace rbl {

// Universal constants of the one-step bounds, exposed as configuration.
struct ConcentrationParams {
  double C_se = 1.0;   // sub-exponential norm constant
  double C_mt = 1.0;   // martingale envelope constant
  double C_nm = 2.0;   // normalization error constant
  double c_dr = 0.2;   // drift lower-bound constant
  double lambda_max = 1.0;
  double omega = 1.0;
  double delta = 0.05;
};

struct DriftEstimate {
  double value = 0.0;      // Monte-Carlo estimate of the exact drift
  double std_error = 0.0;
  std::optional<double> closed_form;  // identity link only
};

// Expected one-step improvement of the correlation before renormalization:
//   eta sigma^2/(d-2) f'(sqrt(1-sigma^2)) (1-m^2)
//     * E[ f'(sqrt(1-sigma^2) m + sigma sqrt(1-m^2) X) (1 - X^2) ],
// X the one-coordinate marginal of a uniform unit vector in R^{d-1}.
// Antithetic pairs (X, -X) halve the variance.
DriftEstimate drift_expected(const LinkFunction& link, int d, double m,
                             double eta, double sigma, long n_mc,
                             RngStream& rng);

enum class DriftRegime { glb, convex };

// c_dr * eta sigma^2 / d * f'(sqrt(1-sigma^2)) (1-m^2), with an extra factor
// f'(sqrt(1-sigma^2) m) in the convex regime. Requires m > 0 and the link's
// matching assumption flag.
double drift_lower_bound(const LinkFunction& link, int d, double m, double eta,
                         double sigma, DriftRegime regime,
                         const ConcentrationParams& params);

// Sub-exponential norm proxy K = C_se sqrt((1-m^2)/d) eta sigma
// f'(sqrt(1-sigma^2)) of the one-step martingale difference.
double subexp_norm_bound(const LinkFunction& link, int d, double m, double eta,
                         double sigma, const ConcentrationParams& params);

// Time-uniform boundary C_mt ( sqrt((V v 1/omega) l(V)) + l(V)/lambda_max )
// with l(V) = 2 log(1 + log(V omega v 1)) + log(1/delta).
double concentration_envelope(double V, const ConcentrationParams& params);

// C_nm eta^2 sigma^2 f'(sqrt(1-sigma^2))^2 log(1/delta)
double normalization_error_bound(const LinkFunction& link, double eta,
                                 double sigma, double delta,
                                 const ConcentrationParams& params);

struct BurninIntegral {
  double integral = 0.0;   // int m / f'(m)^2 dm
  double d2_scaled = 0.0;  // d^2 * integral
  double lower = 0.0, upper = 0.0;
};

// Burn-in cost integral over [1/(2 sqrt(d)), 1 - gamma0/4] by default.
// Throws with the offending point if f' vanishes on the interval.
BurninIntegral burnin_integral(const LinkFunction& link, int d, double gamma0,
                               std::optional<double> lower = std::nullopt,
                               std::optional<double> upper = std::nullopt);

// Monte-Carlo drift estimates cached on an m-grid per (eta, sigma) pair, so
// a long trajectory can be drift-corrected without re-sampling every step.
// Linear interpolation between nodes; per-node standard errors retained.
class DriftProxy {
 public:
  DriftProxy(const LinkFunction& link, int d, long n_mc_per_node,
             double grid_step, RngStream rng);
  std::pair<double, double> value_and_se(double m, double eta, double sigma);

 private:
  struct Grid {
    std::vector<double> value, se;
  };
  const Grid& grid_for(double eta, double sigma);
  const LinkFunction& link_;
  int d_;
  long n_mc_;
  double step_;
  RngStream rng_;
  std::map<std::pair<double, double>, Grid> grids_;
};

struct MonitorReport {
  long steps = 0;
  long violations = 0;            // steps with |S_t| above the widened envelope
  bool ever_violated = false;
  double max_ratio = 0.0;         // max |S_t| / envelope_t
  double v_final = 0.0;
  double widen_total = 0.0;       // 3 * sum of per-step drift-proxy SEs
  double violation_fraction() const {
    return steps == 0 ? 0.0 : double(violations) / double(steps);
  }
  BoundReport to_bound_report() const;
};

struct StepTrace {
  // per-step instrumented columns required by the monitor
  const std::vector<double>* m;       // m_t before the step
  const std::vector<double>* m_half;  // m_{t+1/2}
  const std::vector<double>* eta;
  const std::vector<double>* sigma;
};

// Reconstructs the drift-corrected partial sums S_t, the variance proxy
// V_t = sum K_s^2, and counts crossings of the envelope widened by
// 3 * sum of drift-proxy standard errors (the proxy bias allowance).
// lambda_max is set to 1 / (2 C_se max_s K_s) as the sums accumulate.
MonitorReport martingale_monitor(const StepTrace& trace,
                                 const LinkFunction& link, int d,
                                 const ConcentrationParams& params,
                                 DriftProxy& proxy);

}  // namespace rbl
