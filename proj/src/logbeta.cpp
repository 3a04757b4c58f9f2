#include "hankel/logbeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hankel/errors.hpp"
#include "hankel/specfun.hpp"

namespace hankel::logbeta {
namespace {

void validate(const BetaParams& p) {
  if (!(p.a > 0.0) || !(p.b > 0.0))
    throw std::domain_error("beta shapes must be positive");
}

void validate_order(int m) {
  if (m < 1) throw std::domain_error("cumulant order must be >= 1");
}

// Exact integer arithmetic below n = 20, log-gamma above.
double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= 20) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
  }
  return std::exp(specfun::log_gamma(n + 1.0) - specfun::log_gamma(k + 1.0) -
                  specfun::log_gamma(n - k + 1.0));
}

}  // namespace

double log_beta_cumulant(int m, const BetaParams& p) {
  validate_order(m);
  validate(p);
  return specfun::polygamma(m - 1, p.a) - specfun::polygamma(m - 1, p.a + p.b);
}

double log_beta_sym_cumulant(int m, const BetaParams& p) {
  validate_order(m);
  validate(p);
  return specfun::polygamma(m - 1, p.a) + specfun::polygamma(m - 1, p.b) -
         std::pow(2.0, m) * specfun::polygamma(m - 1, p.a + p.b);
}

double weighted_log_beta_cumulant(int m, double wa, double wb, const BetaParams& p) {
  validate_order(m);
  validate(p);
  double value = 0.0;
  if (wa != 0.0) value += std::pow(wa, m) * specfun::polygamma(m - 1, p.a);
  if (wb != 0.0) value += std::pow(wb, m) * specfun::polygamma(m - 1, p.b);
  const double w = wa + wb;
  if (w != 0.0) value -= std::pow(w, m) * specfun::polygamma(m - 1, p.a + p.b);
  return value;
}

double weighted_log_beta_cgf(double z, double wa, double wb, const BetaParams& p) {
  validate(p);
  const double sa = p.a + wa * z;
  const double sb = p.b + wb * z;
  if (!(sa > 0.0) || !(sb > 0.0)) {
    double z_min = -std::numeric_limits<double>::infinity();
    if (wa > 0.0) z_min = std::max(z_min, -p.a / wa);
    if (wb > 0.0) z_min = std::max(z_min, -p.b / wb);
    throw strip_error("weighted_log_beta_cgf: shifted shape nonpositive", z_min,
                      sa > 0.0 ? "second shape" : "first shape");
  }
  if (z == 0.0) return 0.0;
  return specfun::log_beta_fn(sa, sb) - specfun::log_beta_fn(p.a, p.b);
}

std::vector<double> cumulants_to_central_moments(const CumulantVector& k) {
  const int order = k.order();
  if (order < 2)
    throw std::domain_error("cumulants_to_central_moments: order must be >= 2");
  // mu[n] with mu[0] = 1, mu[1] = 0 (central).
  std::vector<double> mu(order + 1, 0.0);
  mu[0] = 1.0;
  for (int n = 2; n <= order; ++n) {
    double value = k.values[n - 1];
    for (int m = 2; m <= n - 2; ++m)
      value += binomial(n - 1, m - 1) * k.values[m - 1] * mu[n - m];
    mu[n] = value;
  }
  return std::vector<double>(mu.begin() + 2, mu.end());
}

CumulantVector log_beta_cumulants(int max_order, const BetaParams& p, double wa,
                                  double wb) {
  validate_order(max_order);
  CumulantVector out;
  out.values.reserve(max_order);
  for (int m = 1; m <= max_order; ++m)
    out.values.push_back(weighted_log_beta_cumulant(m, wa, wb, p));
  return out;
}

}  // namespace hankel::logbeta
