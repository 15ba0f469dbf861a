#include "rbl/linkfn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace rbl {
namespace {

constexpr double kDomainTol = 1e-9;

double clamp_domain(double x, const char* who) {
  if (std::abs(x) > 1.0 + kDomainTol) {
    throw std::domain_error(std::string(who) + ": argument " +
                            std::to_string(x) + " outside [-1, 1]");
  }
  return std::clamp(x, -1.0, 1.0);
}

LinkFunction make_identity() {
  LinkFunction link;
  link.name = "identity";
  link.eval_fn = [](double x) { return x; };
  link.deriv_fn = [](double) { return 1.0; };
  link.gamma0 = 0.1;
  link.gamma1 = 1.0;
  link.gamma2 = 1.0;
  link.c0 = 1.0;
  link.convex_on_unit = true;
  return link;
}

LinkFunction make_power(int p) {
  LinkFunction link;
  link.name = p == 3 ? "cubic" : "pow" + std::to_string(p);
  link.eval_fn = [p](double x) { return std::pow(x, p); };
  link.deriv_fn = [p](double x) { return p * std::pow(x, p - 1); };
  link.gamma0 = 0.1;
  link.gamma1 = p * std::pow(0.9, p - 1);
  link.gamma2 = static_cast<double>(p);
  link.convex_on_unit = true;
  link.even_symmetric = (p % 2 == 0);
  return link;
}

// piecewise: 0 for x <= 0, -x on (0, 1/3], x - 2/3 on (1/3, 1]
LinkFunction make_counterexample() {
  LinkFunction link;
  link.name = "counterexample";
  link.eval_fn = [](double x) {
    if (x <= 0.0) return 0.0;
    if (x <= 1.0 / 3.0) return -x;
    return x - 2.0 / 3.0;
  };
  link.deriv_fn = [](double x) {
    if (x < 0.0) return 0.0;
    if (x < 1.0 / 3.0) return -1.0;
    return 1.0;
  };
  link.gamma0 = 0.1;
  link.gamma1 = 1.0;
  link.gamma2 = 1.0;
  link.convex_on_unit = true;  // slopes -1 then 1 on [0, 1]
  link.kinks = {0.0, 1.0 / 3.0};
  return link;
}

// 1/(1+e^{-4x}) rescaled to [-1,1], i.e. tanh(2x)
LinkFunction make_logistic() {
  LinkFunction link;
  link.name = "logistic";
  link.eval_fn = [](double x) { return std::tanh(2.0 * x); };
  link.deriv_fn = [](double x) {
    const double t = std::tanh(2.0 * x);
    return 2.0 * (1.0 - t * t);
  };
  link.gamma0 = 0.1;
  link.gamma1 = 2.0 * (1.0 - std::pow(std::tanh(2.0), 2));    // f'(1)
  link.gamma2 = 2.0 * (1.0 - std::pow(std::tanh(1.8), 2));    // f'(0.9)
  link.c0 = link.gamma1;  // f' is decreasing on [0, 1]
  link.convex_on_unit = false;
  return link;
}

const std::map<std::string, LinkFunction>& catalog_map() {
  static const std::map<std::string, LinkFunction> links = [] {
    std::map<std::string, LinkFunction> m;
    for (LinkFunction link : {make_identity(), make_power(2), make_power(3),
                              make_power(5), make_counterexample(),
                              make_logistic()}) {
      AssumptionReport rep = verify_assumptions(link, 512);
      if (!rep.sup_bounded || !rep.locally_linear) {
        throw std::logic_error("catalog link fails declared constants: " +
                               link.name);
      }
      m.emplace(link.name, std::move(link));
    }
    return m;
  }();
  return links;
}

}  // namespace

double LinkFunction::eval(double x) const {
  return eval_fn(clamp_domain(x, "eval"));
}

double LinkFunction::deriv(double x) const {
  return deriv_fn(clamp_domain(x, "deriv"));
}

AssumptionReport verify_assumptions(const LinkFunction& link, int grid_size) {
  if (grid_size < 100) {
    throw std::invalid_argument("verify_assumptions: grid_size must be >= 100");
  }
  AssumptionReport rep;
  const int n = grid_size;
  const double mono_lo = link.even_symmetric ? 0.0 : -1.0;

  rep.monotone = true;
  rep.sup_bounded = true;
  double prev = link.eval(mono_lo);
  for (int i = 1; i <= n; ++i) {
    const double x = mono_lo + (1.0 - mono_lo) * i / n;
    const double v = link.eval(x);
    if (v < prev - 1e-12) rep.monotone = false;
    prev = v;
  }
  rep.max_abs_value = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = -1.0 + 2.0 * i / n;
    rep.max_abs_value = std::max(rep.max_abs_value, std::abs(link.eval(x)));
  }
  rep.sup_bounded = rep.max_abs_value <= 1.0 + 1e-12;

  rep.locally_linear = true;
  for (int i = 0; i <= n; ++i) {
    const double x = 1.0 - link.gamma0 + link.gamma0 * i / n;
    const double fp = link.deriv(x);
    if (fp < link.gamma1 - 1e-9 || fp > link.gamma2 + 1e-9) {
      rep.locally_linear = false;
    }
  }

  rep.min_deriv_unit = link.deriv(0.0);
  for (int i = 0; i <= n; ++i) {
    rep.min_deriv_unit = std::min(rep.min_deriv_unit, link.deriv(double(i) / n));
  }
  rep.derivative_floor =
      rep.min_deriv_unit > 0.0 &&
      (!link.c0 || rep.min_deriv_unit >= *link.c0 - 1e-9);

  rep.midpoint_convex = true;
  const int pairs = 100;
  for (int i = 0; i <= pairs && rep.midpoint_convex; ++i) {
    for (int j = 0; j <= pairs; ++j) {
      const double x = double(i) / pairs;
      const double y = double(j) / pairs;
      if (link.eval(0.5 * (x + y)) >
          0.5 * (link.eval(x) + link.eval(y)) + 1e-12) {
        rep.midpoint_convex = false;
        break;
      }
    }
  }
  return rep;
}

const LinkFunction& catalog(const std::string& id) {
  const auto& m = catalog_map();
  auto it = m.find(id);
  if (it == m.end()) throw std::invalid_argument("unknown link id: " + id);
  return it->second;
}

std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const auto& [k, v] : catalog_map()) ids.push_back(k);
  return ids;
}

LinkFunction piecewise_linear(std::vector<std::pair<double, double>> knots,
                              std::string name) {
  if (knots.size() < 2) {
    throw std::invalid_argument("piecewise link needs at least 2 knots");
  }
  for (size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].first > knots[i - 1].first)) {
      throw std::invalid_argument("piecewise link knots must be strictly increasing in x");
    }
  }
  if (knots.front().first > -1.0 + 1e-12 || knots.back().first < 1.0 - 1e-12) {
    throw std::invalid_argument("piecewise link knots must cover [-1, 1]");
  }
  auto shared = std::make_shared<std::vector<std::pair<double, double>>>(std::move(knots));
  const auto& k = *shared;

  auto segment = [shared](double x) -> size_t {
    const auto& kn = *shared;
    // last segment whose left knot is <= x; right derivative convention
    auto it = std::upper_bound(kn.begin(), kn.end(), x,
                               [](double v, const auto& p) { return v < p.first; });
    size_t i = (it == kn.begin()) ? 0 : (it - kn.begin() - 1);
    return std::min(i, kn.size() - 2);
  };

  LinkFunction link;
  link.name = std::move(name);
  link.eval_fn = [shared, segment](double x) {
    const auto& kn = *shared;
    const size_t i = segment(x);
    const double t = (x - kn[i].first) / (kn[i + 1].first - kn[i].first);
    return kn[i].second + t * (kn[i + 1].second - kn[i].second);
  };
  link.deriv_fn = [shared, segment](double x) {
    const auto& kn = *shared;
    const size_t i = segment(x);
    return (kn[i + 1].second - kn[i].second) / (kn[i + 1].first - kn[i].first);
  };
  for (size_t i = 1; i + 1 < k.size(); ++i) link.kinks.push_back(k[i].first);

  link.gamma0 = 0.1;
  double lo = 1e300, hi = -1e300, floor01 = 1e300;
  bool convex = true;
  double prev_slope = -1e300;
  for (size_t i = 0; i + 1 < k.size(); ++i) {
    const double slope = (k[i + 1].second - k[i].second) / (k[i + 1].first - k[i].first);
    if (k[i + 1].first > 1.0 - link.gamma0 - 1e-15) {
      lo = std::min(lo, slope);
      hi = std::max(hi, slope);
    }
    if (k[i + 1].first > 1e-15) {
      floor01 = std::min(floor01, slope);
      if (slope < prev_slope - 1e-12) convex = false;
      prev_slope = slope;
    }
  }
  link.gamma1 = lo;
  link.gamma2 = hi;
  if (floor01 > 0.0) link.c0 = floor01;
  link.convex_on_unit = convex;
  return link;
}

LinkFunction load_piecewise_link(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open link file: " + path);
  std::vector<std::pair<double, double>> knots;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y)) {
      throw std::runtime_error("bad knot line in " + path + ": " + line);
    }
    knots.emplace_back(x, y);
  }
  return piecewise_linear(std::move(knots), path);
}

}  // namespace rbl
