#pragma once
#include <functional>

namespace rbl {

// Adaptive Gauss-Kronrod (G7/K15) with interval bisection. Throws
// std::runtime_error if max_subdiv bisections cannot reach abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-9, int max_subdiv = 10000);

}  // namespace rbl
