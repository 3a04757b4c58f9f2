#pragma once

#include <vector>

namespace hankel::logbeta {

// Shape pair of a beta distribution on [0, 1].
struct BetaParams {
  double a = 1.0;
  double b = 1.0;
};

// Exact cumulants kappa_1..kappa_m of some scalar law.
struct CumulantVector {
  std::vector<double> values;
  int order() const { return static_cast<int>(values.size()); }
};

// m-th cumulant of log X, X ~ beta(a, b):
//   kappa_m = psi_{m-1}(a) - psi_{m-1}(a + b).
double log_beta_cumulant(int m, const BetaParams& p);

// m-th cumulant of log(X(1-X)):
//   kappa_m = psi_{m-1}(a) + psi_{m-1}(b) - 2^m psi_{m-1}(a + b).
double log_beta_sym_cumulant(int m, const BetaParams& p);

// m-th cumulant of wa*log X + wb*log(1-X); reduces to the two forms above at
// (1, 0) and (1, 1) and handles the mixed-exponent terms exactly:
//   wa^m psi_{m-1}(a) + wb^m psi_{m-1}(b) - (wa+wb)^m psi_{m-1}(a+b).
double weighted_log_beta_cumulant(int m, double wa, double wb, const BetaParams& p);

// log E[X^{wa z} (1-X)^{wb z}] = log B(a + wa z, b + wb z) - log B(a, b).
// Throws strip_error when a shifted shape leaves the positive half-line.
double weighted_log_beta_cgf(double z, double wa, double wb, const BetaParams& p);

// Central moments mu_2..mu_m from exact cumulants via the recursion
//   mu_n = kappa_n + sum_{m=2}^{n-2} C(n-1, m-1) kappa_m mu_{n-m}.
std::vector<double> cumulants_to_central_moments(const CumulantVector& k);

// Exact cumulants of log X (or of wa*log X + wb*log(1-X)) up to max_order.
CumulantVector log_beta_cumulants(int max_order, const BetaParams& p,
                                  double wa = 1.0, double wb = 0.0);

}  // namespace hankel::logbeta
