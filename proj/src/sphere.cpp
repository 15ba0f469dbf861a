#include "rbl/sphere.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rbl/quadrature.hpp"

namespace rbl {
namespace {

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

struct MeanVar {
  double mean = 0.0, se = 0.0;
};

MeanVar mean_and_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double s = 0.0;
  for (double x : xs) s += x;
  const double mean = s / n;
  double q = 0.0;
  for (double x : xs) q += (x - mean) * (x - mean);
  MeanVar out;
  out.mean = mean;
  out.se = std::sqrt(q / (n - 1.0) / n);
  return out;
}

}  // namespace

double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

void normalize(Vec& x) {
  const double n = norm(x);
  if (n < 1e-300) throw std::runtime_error("normalize: zero vector");
  for (double& v : x) v /= n;
}

Vec sample_unit(int d, RngStream& rng) {
  if (d < 2) throw std::invalid_argument("sample_unit: d must be >= 2");
  Vec v(d);
  for (double& x : v) x = rng.normal();
  normalize(v);
  return v;
}

Vec sample_tangent(const Vec& theta, RngStream& rng) {
  const int d = static_cast<int>(theta.size());
  if (d < 2) throw std::invalid_argument("sample_tangent: d must be >= 2");
  if (d == 2) {
    // unique tangent direction up to sign
    Vec z = {-theta[1], theta[0]};
    if (rng.uniform01() < 0.5) {
      z[0] = -z[0];
      z[1] = -z[1];
    }
    return z;
  }
  Vec z(d);
  for (double& x : z) x = rng.normal();
  const double c = dot(z, theta);
  for (int i = 0; i < d; ++i) z[i] -= c * theta[i];
  normalize(z);
  return z;
}

SphereMarginal::SphereMarginal(int ambient_dim) : d(ambient_dim) {
  if (d < 2) throw std::invalid_argument("SphereMarginal: d must be >= 2");
}

double SphereMarginal::pdf(double x) const {
  if (std::abs(x) > 1.0) return 0.0;
  const double expo = 0.5 * (d - 3);
  return std::exp(expo * std::log1p(-x * x) - log_beta(0.5, 0.5 * (d - 1)));
}

double SphereMarginal::cdf(double x) const {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (d == 2) return 0.5 + std::asin(x) / M_PI;
  return integrate([this](double t) { return pdf(t); }, -1.0, x, 1e-12, 20000);
}

double SphereMarginal::sample(RngStream& rng) const {
  return rng.symmetric_beta_pm1(0.5 * (d - 1));
}

double SphereMarginal::sample_via_coordinate(RngStream& rng) const {
  return sample_unit(d, rng)[0];
}

BoundReport stein_residual(const LinkFunction& link, int d, double shift,
                           double scale, long n_mc, RngStream& rng) {
  if (d < 3) throw std::invalid_argument("stein_residual: d must be >= 3");
  if (std::abs(shift) + std::abs(scale) > 1.0 + 1e-12) {
    throw std::domain_error("stein_residual: |shift| + |scale| must be <= 1");
  }
  SphereMarginal marg(d);
  std::vector<double> lhs(n_mc), rhs(n_mc);
  for (long i = 0; i < n_mc; ++i) {
    const double x = marg.sample(rng);
    lhs[i] = x * link.eval(shift + scale * x);
    rhs[i] = scale * link.deriv(shift + scale * x) * (1.0 - x * x) / (d - 1.0);
  }
  const MeanVar l = mean_and_se(lhs);
  const MeanVar r = mean_and_se(rhs);
  BoundReport rep;
  rep.name = "stein_residual(" + link.name + ")";
  rep.theory_value = 0.0;
  rep.empirical_value = l.mean - r.mean;
  rep.std_error = l.se + r.se;
  rep.pass = std::abs(*rep.empirical_value) <= 3.0 * (l.se + r.se);
  std::ostringstream meta;
  meta << "d=" << d << " shift=" << shift << " scale=" << scale
       << " lhs=" << l.mean << "+-" << l.se << " rhs=" << r.mean << "+-"
       << r.se << " n=" << n_mc;
  rep.meta = meta.str();
  return rep;
}

ConvexTestFn convex_test_fn_from_id(const std::string& id) {
  if (id == "linear") return ConvexTestFn::linear;
  if (id == "square") return ConvexTestFn::square;
  if (id == "exp_half") return ConvexTestFn::exp_half;
  if (id == "softplus_shift") return ConvexTestFn::softplus_shift;
  throw std::invalid_argument("unknown convex test fn: " + id);
}

std::vector<std::string> convex_test_fn_ids() {
  return {"linear", "square", "exp_half", "softplus_shift"};
}

BoundReport convex_order_gap(int d, ConvexTestFn g, long n_mc, RngStream& rng) {
  auto gf = [g](double u) {
    switch (g) {
      case ConvexTestFn::linear: return u;
      case ConvexTestFn::square: return u * u;
      case ConvexTestFn::exp_half: return std::exp(0.5 * u);
      case ConvexTestFn::softplus_shift: return std::log1p(std::exp(u - 1.0));
    }
    return 0.0;
  };
  SphereMarginal marg(d);
  const double root_d = std::sqrt(static_cast<double>(d));
  std::vector<double> gauss(n_mc), sphere(n_mc);
  for (long i = 0; i < n_mc; ++i) {
    const double yg = rng.normal() / root_d;
    const double ys = marg.sample(rng);
    gauss[i] = gf(yg * yg);
    sphere[i] = gf(ys * ys);
  }
  const MeanVar a = mean_and_se(gauss);
  const MeanVar b = mean_and_se(sphere);
  BoundReport rep;
  rep.name = "convex_order_gap";
  rep.theory_value = 0.0;
  rep.empirical_value = a.mean - b.mean;
  rep.std_error = std::sqrt(a.se * a.se + b.se * b.se);
  rep.pass = *rep.empirical_value >= -3.0 * *rep.std_error;
  std::ostringstream meta;
  meta << "d=" << d << " gauss=" << a.mean << " sphere=" << b.mean
       << " n=" << n_mc;
  rep.meta = meta.str();
  return rep;
}

}  // namespace rbl
