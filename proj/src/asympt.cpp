#include "hankel/asympt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hankel/quadrature.hpp"

namespace hankel::asympt {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit(double v, const char* who) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::domain_error(std::string(who) + ": argument must lie in [0, 1]");
}

}  // namespace

double kernel_c(double t1, double t2) {
  require_unit(t1, "kernel_c");
  require_unit(t2, "kernel_c");
  const double t = std::min(t1, t2);
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;  // only reached at t1 = t2 = 1
  // Substituting u = 1 - x in the integrand.
  return t + (2.0 - t1 - t2) * std::log1p(-t) +
         (1.0 - t1) * (1.0 - t2) * (1.0 / (1.0 - t) - 1.0);
}

double kernel_c_quadrature(double t1, double t2) {
  require_unit(t1, "kernel_c_quadrature");
  require_unit(t2, "kernel_c_quadrature");
  const double t = std::min(t1, t2);
  return quad::integrate(
      [&](double x) { return (t1 - x) * (t2 - x) / ((1.0 - x) * (1.0 - x)); },
      0.0, t, 1e-12);
}

double limit_covariance(double s1, double t1, double s2, double t2) {
  require_unit(s1, "limit_covariance");
  require_unit(s2, "limit_covariance");
  const double s = std::min(s1, s2);
  return 0.5 * s * s * kernel_c(t1, t2);
}

double weighted_kernel_power(int m, double t) {
  if (m < 1) throw std::domain_error("weighted_kernel_power: m must be >= 1");
  require_unit(t, "weighted_kernel_power");
  if (t == 0.0) return 0.0;
  return quad::integrate(
      [&](double x) { return std::pow((t - x) / (1.0 - x), m); }, 0.0, t, 1e-12);
}

double lln_limit(double s, double t) {
  require_unit(s, "lln_limit");
  require_unit(t, "lln_limit");
  const double entropy = (t >= 1.0) ? t : t + (1.0 - t) * std::log1p(-t);
  return -0.5 * s * s * entropy;
}

ModGaussSpeed mod_gaussian_speed(const hankelproc::ProcessParams& params,
                                 double s, double t) {
  ModGaussSpeed out;
  const double ratio = static_cast<double>(params.p_n) / params.n;
  out.exact = std::pow(ratio, 2.0 / 3.0) *
              hankelproc::exact_cumulant(2, params, s, t);
  out.asymptotic = std::pow(params.n, 1.0 / 3.0) *
                   std::pow(params.p_n, 2.0 / 3.0) * 0.5 * s * s *
                   weighted_kernel_power(2, t);
  return out;
}

double mod_gaussian_psi(double z, double s, double t) {
  return std::exp(-z * z * z * s * s / 6.0 * weighted_kernel_power(3, t));
}

double moderate_rate(double x, double s, double t) {
  if (!(s > 0.0 && s <= 1.0) || !(t > 0.0 && t <= 1.0))
    throw std::domain_error("moderate_rate: s, t must lie in (0, 1]");
  const double denom = s * s * weighted_kernel_power(2, t);
  if (!(denom > 0.0))
    throw std::domain_error("moderate_rate: degenerate variance integral");
  return x * x / denom;
}

double ldp_lambda(double lam, double s, double t) {
  if (!(t > 0.0 && t <= 1.0))
    throw std::domain_error("ldp_lambda: t must lie in (0, 1]");
  if (!(lam > -1.0 / t))
    throw std::domain_error("ldp_lambda: lam must exceed -1/t");
  if (lam == 0.0) return 0.0;
  return -0.5 * s * s *
         quad::integrate(
             [&](double y) { return std::log1p(lam * (t - y) / (1.0 - y)); },
             0.0, t, 1e-12);
}

RateEval ldp_rate(double x, double s, double t) {
  if (!(s > 0.0 && s <= 1.0) || !(t > 0.0 && t <= 1.0))
    throw std::domain_error("ldp_rate: s, t must lie in (0, 1]");
  RateEval out;
  out.x = x;
  if (x >= 0.0) {
    // The objective grows like lam*x + (s^2 t / 2) log(lam); the supremum
    // diverges.
    out.value = kInf;
    return out;
  }
  const auto objective = [&](double lam) { return lam * x - ldp_lambda(lam, s, t); };

  const double lo = -1.0 / t + 1e-9;
  double hi = 1.0;
  double f_hi = objective(hi);
  for (;;) {
    const double next = hi * 2.0;
    const double f_next = objective(next);
    if (f_next < f_hi) break;
    hi = next;
    f_hi = f_next;
    if (hi > 1e12) {
      out.value = kInf;
      return out;
    }
  }
  hi *= 2.0;

  // Golden-section maximization of the concave objective.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  for (int iter = 0; iter < 200 && (b - a) > 1e-13 * (1.0 + std::fabs(a) + std::fabs(b));
       ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = objective(d);
    }
  }
  const double lam_star = 0.5 * (a + b);
  out.value = objective(lam_star);
  out.argmax_lambda = lam_star;
  return out;
}

double ldp_rate_closed_form_t1(double x, double s) {
  if (!(x < 0.0)) return kInf;
  return -(x + 0.5 * s * s) + s * s * std::log(s) - 0.5 * s * s * std::log(-2.0 * x);
}

double ldp_rate_printed_form_t1(double x, double s) {
  if (!(x < 0.0)) return kInf;
  return -(x + 0.5 * s * s) + s * s * std::log(s) + 0.5 * s * s * std::log(-2.0 * x);
}

double tail_asymptotic_value(double x, double t_n, double s, double t) {
  if (x == 0.0) throw std::domain_error("tail_asymptotic: x must be nonzero");
  const double cubic = x * x * x * s * s / 6.0 * weighted_kernel_power(3, t);
  return std::exp(-0.5 * t_n * x * x - cubic) /
         (std::fabs(x) * std::sqrt(2.0 * kPi * t_n));
}

double tail_asymptotic(double x, const hankelproc::ProcessParams& params,
                       double s, double t) {
  return tail_asymptotic_value(x, mod_gaussian_speed(params, s, t).exact, s, t);
}

}  // namespace hankel::asympt
