#pragma once

#include <optional>

#include "hankel/hankelproc.hpp"

namespace hankel::asympt {

// c(t1, t2) = int_0^{t1 ^ t2} (t1 - x)(t2 - x) / (1 - x)^2 dx, closed form.
double kernel_c(double t1, double t2);

// The same by adaptive quadrature; validation route for the closed form.
double kernel_c_quadrature(double t1, double t2);

// Limit covariance (s1 ^ s2)^2 c(t1, t2) / 2 of the centered, sqrt(n)-scaled
// process.
double limit_covariance(double s1, double t1, double s2, double t2);

// int_0^t ((t - x) / (1 - x))^m dx by adaptive quadrature.
double weighted_kernel_power(int m, double t);

// Almost-sure limit of H(s, t) / (n p_n):  -s^2/2 (t + (1 - t) log(1 - t)).
double lln_limit(double s, double t);

// Mod-Gaussian speed (p_n/n)^{2/3} kappa_2(H(s,t)) with its asymptotic
// equivalent n^{1/3} p_n^{2/3} (s^2/2) int ((t-x)/(1-x))^2 dx.
struct ModGaussSpeed {
  double exact = 0.0;
  double asymptotic = 0.0;
};
ModGaussSpeed mod_gaussian_speed(const hankelproc::ProcessParams& params,
                                 double s, double t);

// Limiting function psi(z) = exp(-z^3 (s^2/6) int_0^t ((t-x)/(1-x))^3 dx).
double mod_gaussian_psi(double z, double s, double t);

// Moderate-deviation rate I(x) = x^2 / (s^2 int_0^t ((t-y)/(1-y))^2 dy).
double moderate_rate(double x, double s, double t);

// Limiting scaled CGF Lambda(lam) = -(s^2/2) int_0^t log(1 + lam (t-y)/(1-y)) dy,
// finite for lam > -1/t.
double ldp_lambda(double lam, double s, double t);

// Fenchel-Legendre transform sup_{lam > -1/t} (lam x - Lambda(lam)).
struct RateEval {
  double x = 0.0;
  double value = 0.0;  // +infinity for x >= 0
  std::optional<double> argmax_lambda;
};
RateEval ldp_rate(double x, double s, double t);

// Closed form of the t = 1 rate for x < 0 (stationarity of the transform of
// -(s^2/2) log(1 + lam)):  -x - s^2/2 + s^2 log s - (s^2/2) log(-2x).
double ldp_rate_closed_form_t1(double x, double s);

// The same expression with the opposite sign on the last term; kept so the
// discrepancy against the numeric transform can be reported explicitly.
double ldp_rate_printed_form_t1(double x, double s);

// Tail approximation (1/(|x| sqrt(2 pi t_n))) exp(-t_n x^2/2 - x^3 (s^2/6) W3(t))
// with W3 the cubic weighted kernel integral; x must be nonzero.
double tail_asymptotic_value(double x, double t_n, double s, double t);
double tail_asymptotic(double x, const hankelproc::ProcessParams& params,
                       double s, double t);

}  // namespace hankel::asympt
