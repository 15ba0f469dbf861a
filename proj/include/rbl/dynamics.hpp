#pragma once
#include <optional>
#include <utility>

#include "rbl/linkfn.hpp"
#include "rbl/rng.hpp"
#include "rbl/sphere.hpp"

namespace rbl {

enum class NoiseKind { gaussian, uniform };

struct Environment {
  Vec theta_star;  // hidden unit vector
  const LinkFunction* link = nullptr;
  double noise_std = 1.0;  // in [0, 1]
  NoiseKind noise_kind = NoiseKind::gaussian;
};

// reward f(<theta*, a>) + noise
double pull(const Environment& env, const Vec& action, RngStream& rng);

struct SgdState {
  Vec theta;    // unit iterate
  long t = 1;   // step index
  double m = 0.0;  // diagnostic correlation <theta*, theta>, observer-side
};

struct ActionSample {
  Vec action;   // sqrt(1-sigma^2) theta + sigma Z
  Vec tangent;  // Z, unit, orthogonal to theta
  double sigma = 0.0;
  double align_current = 1.0;  // <theta, action> = sqrt(1-sigma^2)
};

ActionSample propose_action(const SgdState& state, double sigma, RngStream& rng);

// Gradient half-step along sigma*Z followed by renormalization. When
// theta_star is given, the diagnostic correlation of the new state is
// refreshed (values drifting past [-1,1] by more than 1e-9 abort).
// check_projection_form additionally recomputes the update from the
// projected action (I - theta theta^T) a and asserts both forms agree.
SgdState sgd_step(const SgdState& state, const ActionSample& sample,
                  double reward, double eta, const LinkFunction& link,
                  const Vec* theta_star = nullptr,
                  bool check_projection_form = false);

// (m at the half step, m after renormalization) for the same update.
std::pair<double, double> half_step_correlation(const SgdState& state,
                                                const ActionSample& sample,
                                                double reward, double eta,
                                                const LinkFunction& link,
                                                const Vec& theta_star);

}  // namespace rbl
