#pragma once

#include <string>
#include <vector>

namespace hankel::specfun {

// Orders above the cap are rejected rather than returned inaccurately.
inline constexpr int kMaxPolygammaOrder = 16;

// log Gamma(x), x > 0.  Relative error below 1e-12 on [1e-3, 1e6].
double log_gamma(double x);

// Digamma psi_0(x), x > 0.
double digamma(double x);

// Polygamma psi_k(x) = d^{k+1}/dx^{k+1} log Gamma(x) for 0 <= k <= 16, x > 0.
double polygamma(int k, double x);

// log B(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b), a, b > 0.
double log_beta_fn(double a, double b);

// One polygamma evaluation together with its defining data.  For k >= 1 the
// value has sign (-1)^{k+1} and |psi_k| decreases in the argument.
struct PolyEval {
  int order = 0;
  double argument = 0.0;
  double value = 0.0;
};
PolyEval polygamma_eval(int k, double x);

// Grid checks of the polygamma inequalities the cumulant bounds rest on:
// the z^{-n} sandwich, the psi_1 difference sandwich, the higher-order
// difference bound, the first-order error bound, the variance bound,
// log-convexity, and the shift recurrence.
struct InequalityFamily {
  std::string name;
  int evaluated = 0;
  int violations = 0;
  // Smallest margin (bound minus value) seen on the grid; negative means a
  // violation beyond the slack.
  double worst_margin = 0.0;
  bool pass = false;
};

struct InequalityReport {
  std::vector<InequalityFamily> families;
  bool all_pass() const {
    for (const auto& f : families)
      if (!f.pass) return false;
    return true;
  }
};

InequalityReport check_polygamma_inequalities(double slack = 1e-9);

}  // namespace hankel::specfun
