#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace dualhop::testing {

struct KnownIntegral {
  std::string name;
  std::function<double(double)> f;
  double lo;
  double hi;  // +inf for semi-infinite ranges
  double exact;
};

inline std::vector<KnownIntegral> known_integrals() {
  using std::numbers::pi;
  const double inf = std::numeric_limits<double>::infinity();
  return {
      {"x^2 on [0,1]", [](double x) { return x * x; }, 0.0, 1.0, 1.0 / 3.0},
      {"1 on [0,1]", [](double) { return 1.0; }, 0.0, 1.0, 1.0},
      {"sin on [0,pi]", [](double x) { return std::sin(x); }, 0.0, pi, 2.0},
      {"exp on [0,1]", [](double x) { return std::exp(x); }, 0.0, 1.0, std::numbers::e - 1.0},
      {"1/(1+x^2) on [0,1]", [](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, pi / 4.0},
      {"sqrt on [0,1]", [](double x) { return std::sqrt(x); }, 0.0, 1.0, 2.0 / 3.0},
      {"1/sqrt on [0,1]", [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 2.0},
      {"log on [0,1]", [](double x) { return std::log(x); }, 0.0, 1.0, -1.0},
      {"cos^2 on [0,2pi]", [](double x) { return std::cos(x) * std::cos(x); }, 0.0, 2.0 * pi, pi},
      {"1/x on [1,2]", [](double x) { return 1.0 / x; }, 1.0, 2.0, std::numbers::ln2},
      {"x^9 on [0,1]", [](double x) { return std::pow(x, 9); }, 0.0, 1.0, 0.1},
      {"Runge on [-1,1]", [](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0,
       0.4 * std::atan(5.0)},
      {"x log(1+x) on [0,1]", [](double x) { return x * std::log1p(x); }, 0.0, 1.0, 0.25},
      {"exp(-x) on [0,inf)", [](double x) { return std::exp(-x); }, 0.0, inf, 1.0},
      {"exp(-x)/sqrt(x) on [0,inf)", [](double x) { return std::exp(-x) / std::sqrt(x); }, 0.0,
       inf, std::sqrt(pi)},
      {"2 exp(-u^2) on [0,inf)", [](double u) { return 2.0 * std::exp(-u * u); }, 0.0, inf,
       std::sqrt(pi)},
      {"x^-2 on [1,inf)", [](double x) { return 1.0 / (x * x); }, 1.0, inf, 1.0},
      {"1/(1+x^2) on [0,inf)", [](double x) { return 1.0 / (1.0 + x * x); }, 0.0, inf, pi / 2.0},
      {"x exp(-x) on [0,inf)", [](double x) { return x * std::exp(-x); }, 0.0, inf, 1.0},
      {"x^3 exp(-2x) on [0,inf)", [](double x) { return x * x * x * std::exp(-2.0 * x); }, 0.0,
       inf, 0.375},
      {"exp(-x) sin x on [0,inf)", [](double x) { return std::exp(-x) * std::sin(x); }, 0.0, inf,
       0.5},
  };
}

}  // namespace dualhop::testing
