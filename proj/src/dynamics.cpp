#include "rbl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbl {
namespace {

constexpr double kRoot3 = 1.7320508075688772935274463415059;

struct HalfStep {
  double coef;      // eta * (f(align) - r) * f'(align) * sigma
  double norm_sq;   // 1 + coef^2
};

HalfStep half_step_coef(const SgdState& state, const ActionSample& sample,
                        double reward, double eta, const LinkFunction& link) {
  if (!(eta > 0.0)) throw std::invalid_argument("sgd_step: eta must be > 0");
  const double align = dot(state.theta, sample.action);
  if (std::abs(align - sample.align_current) > 1e-9) {
    throw std::invalid_argument("sgd_step: sample does not match state");
  }
  const double f = link.eval(sample.align_current);
  const double fp = link.deriv(sample.align_current);
  HalfStep h;
  h.coef = eta * (f - reward) * fp * sample.sigma;
  h.norm_sq = 1.0 + h.coef * h.coef;
  return h;
}

}  // namespace

double pull(const Environment& env, const Vec& action, RngStream& rng) {
  if (std::abs(norm(action) - 1.0) > 1e-9) {
    throw std::invalid_argument("pull: action must be a unit vector");
  }
  const double mean = env.link->eval(dot(env.theta_star, action));
  double noise = 0.0;
  if (env.noise_std > 0.0) {
    noise = env.noise_kind == NoiseKind::gaussian
                ? env.noise_std * rng.normal()
                : env.noise_std * kRoot3 * (2.0 * rng.uniform01() - 1.0);
  }
  return mean + noise;
}

ActionSample propose_action(const SgdState& state, double sigma,
                            RngStream& rng) {
  if (sigma < 0.0 || sigma > 1.0) {
    throw std::out_of_range("propose_action: sigma must be in [0, 1]");
  }
  ActionSample s;
  s.sigma = sigma;
  s.tangent = sample_tangent(state.theta, rng);
  s.align_current = std::sqrt(1.0 - sigma * sigma);
  const int d = static_cast<int>(state.theta.size());
  s.action.resize(d);
  for (int i = 0; i < d; ++i) {
    s.action[i] = s.align_current * state.theta[i] + sigma * s.tangent[i];
  }
  return s;
}

SgdState sgd_step(const SgdState& state, const ActionSample& sample,
                  double reward, double eta, const LinkFunction& link,
                  const Vec* theta_star, bool check_projection_form) {
  const HalfStep h = half_step_coef(state, sample, reward, eta, link);
  const int d = static_cast<int>(state.theta.size());

  Vec next(d);
  for (int i = 0; i < d; ++i) {
    next[i] = state.theta[i] - h.coef * sample.tangent[i];
  }
  const double nrm = std::sqrt(h.norm_sq);
  if (nrm < 1e-8) throw std::runtime_error("sgd_step: degenerate half-step norm");

  if (check_projection_form) {
    // sigma * Z equals (I - theta theta^T) a; both update forms must agree
    const double align = dot(state.theta, sample.action);
    const double scale = eta * (link.eval(align) - reward) * link.deriv(align);
    for (int i = 0; i < d; ++i) {
      const double proj = sample.action[i] - align * state.theta[i];
      const double alt = state.theta[i] - scale * proj;
      if (std::abs(alt - next[i]) > 1e-12) {
        throw std::logic_error("sgd_step: projection form mismatch");
      }
    }
  }

  SgdState out;
  out.theta.resize(d);
  for (int i = 0; i < d; ++i) out.theta[i] = next[i] / nrm;
  out.t = state.t + 1;
  out.m = state.m;
  if (theta_star != nullptr) {
    double m = dot(*theta_star, out.theta);
    if (std::abs(m) > 1.0 + 1e-9) {
      throw std::runtime_error("sgd_step: correlation escaped [-1, 1]");
    }
    out.m = std::clamp(m, -1.0, 1.0);
  }
  return out;
}

std::pair<double, double> half_step_correlation(const SgdState& state,
                                                const ActionSample& sample,
                                                double reward, double eta,
                                                const LinkFunction& link,
                                                const Vec& theta_star) {
  const HalfStep h = half_step_coef(state, sample, reward, eta, link);
  const double m = dot(theta_star, state.theta);
  const double w = dot(theta_star, sample.tangent);
  const double m_half = m - h.coef * w;
  return {m_half, m_half / std::sqrt(h.norm_sq)};
}

}  // namespace rbl
