#pragma once
#include <string>
#include <vector>

#include "rbl/linkfn.hpp"
#include "rbl/report.hpp"
#include "rbl/rng.hpp"

namespace rbl {

using Vec = std::vector<double>;

double dot(const Vec& x, const Vec& y);
double norm(const Vec& x);
void normalize(Vec& x);  // throws if ||x|| < 1e-300

// Uniform draw from the unit sphere in R^d (normalized Gaussian vector).
Vec sample_unit(int d, RngStream& rng);

// Uniform draw from {z on the sphere : <z, theta> = 0}. For d == 2 the
// tangent sphere degenerates to two points; both are returned with equal
// probability.
Vec sample_tangent(const Vec& theta, RngStream& rng);

// Law of a single coordinate of a uniform unit vector in R^d.
// pdf(x) = (1 - x^2)^{(d-3)/2} / Beta(1/2, (d-1)/2) on [-1, 1].
struct SphereMarginal {
  explicit SphereMarginal(int ambient_dim);
  int d;

  double pdf(double x) const;
  double cdf(double x) const;                // quadrature of pdf
  double sample(RngStream& rng) const;       // 2*Beta((d-1)/2, (d-1)/2) - 1
  double sample_via_coordinate(RngStream& rng) const;  // cross-check route
};

// Monte-Carlo check of E[X g(X)] = E[g'(X)(1 - X^2)]/(d-1) for the marginal
// X of a uniform unit vector in R^d, applied to g(x) = f(shift + scale*x).
// Both sides share the same draws; meta carries the per-side estimates.
BoundReport stein_residual(const LinkFunction& link, int d, double shift,
                           double scale, long n_mc, RngStream& rng);

enum class ConvexTestFn { linear, square, exp_half, softplus_shift };
ConvexTestFn convex_test_fn_from_id(const std::string& id);
std::vector<std::string> convex_test_fn_ids();

// gap = E[g(<a,X>^2)] - E[g(<a,X'>^2)] with X ~ N(0, I/d), X' uniform on the
// sphere; must be >= 0 up to Monte-Carlo error for convex g.
BoundReport convex_order_gap(int d, ConvexTestFn g, long n_mc, RngStream& rng);

}  // namespace rbl
