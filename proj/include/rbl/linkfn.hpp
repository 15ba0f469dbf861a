#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rbl {

// A reward link f: [-1,1] -> [-1,1] together with its derivative and the
// assumption metadata used by the schedules (local-linearity window
// [1-gamma0, 1] with slope bounds gamma1 <= f' <= gamma2, optional global
// slope floor c0 on [0,1], convexity flag on [0,1]).
struct LinkFunction {
  std::string name;
  std::function<double(double)> eval_fn;
  std::function<double(double)> deriv_fn;  // right derivative at kinks
  double gamma0 = 0.1;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  std::optional<double> c0;
  bool convex_on_unit = false;
  bool even_symmetric = false;  // monotone on [0,1] only; see verify_assumptions
  std::vector<double> kinks;    // non-differentiable points, if any

  // Evaluation clamps |x| <= 1 within a 1e-9 band and rejects anything beyond.
  double eval(double x) const;
  double deriv(double x) const;
};

struct AssumptionReport {
  bool monotone = false;        // non-decreasing on the checked range
  bool sup_bounded = false;     // |f| <= 1
  bool locally_linear = false;  // gamma1 <= f' <= gamma2 on [1-gamma0, 1]
  bool derivative_floor = false;  // f' >= c0 > 0 on [0, 1]
  bool midpoint_convex = false;   // on [0, 1]
  double min_deriv_unit = 0.0;    // measured min of f' on [0, 1]
  double max_abs_value = 0.0;     // measured sup of |f| on [-1, 1]
  bool assumption1() const { return monotone && sup_bounded && locally_linear; }
  bool assumption2() const { return derivative_floor; }
  bool assumption3() const { return midpoint_convex; }
};

AssumptionReport verify_assumptions(const LinkFunction& link, int grid_size);

// Catalog ids: identity, pow2, cubic, pow5, counterexample, logistic.
const LinkFunction& catalog(const std::string& id);
std::vector<std::string> catalog_ids();

// Piecewise-linear link from knots (x strictly increasing, covering [-1, 1]).
LinkFunction piecewise_linear(std::vector<std::pair<double, double>> knots,
                              std::string name = "piecewise");
LinkFunction load_piecewise_link(const std::string& path);

}  // namespace rbl
