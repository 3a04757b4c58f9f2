#include "hankel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hankel/specfun.hpp"

namespace hankel::stats {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require_size(std::size_t n, const char* who) {
  if (n < 50)
    throw std::invalid_argument(std::string(who) + ": needs at least 50 observations");
}

}  // namespace

double kolmogorov_tail(double lambda) {
  if (lambda <= 1e-10) return 1.0;
  if (lambda < 1.18) {
    // Theta-function form, rapidly convergent for small arguments.
    const double q = std::exp(-kPi * kPi / (8.0 * lambda * lambda));
    const double cdf = std::sqrt(2.0 * kPi) / lambda *
                       (q + std::pow(q, 9) + std::pow(q, 25) + std::pow(q, 49));
    return 1.0 - cdf;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("incomplete_beta: shapes must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // Continued fraction (modified Lentz); symmetry keeps it convergent.
  const auto cf = [](double a, double b, double x) {
    const double tiny = 1e-300;
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
      const int m2 = 2 * m;
      double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
      d = 1.0 + num * d;
      if (std::fabs(d) < tiny) d = tiny;
      c = 1.0 + num / c;
      if (std::fabs(c) < tiny) c = tiny;
      d = 1.0 / d;
      h *= d * c;
      num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
      d = 1.0 + num * d;
      if (std::fabs(d) < tiny) d = tiny;
      c = 1.0 + num / c;
      if (std::fabs(c) < tiny) c = tiny;
      d = 1.0 / d;
      const double delta = d * c;
      h *= delta;
      if (std::fabs(delta - 1.0) < 1e-15) break;
    }
    return h;
  };
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) -
                                specfun::log_beta_fn(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * cf(a, b, x) / a;
  return 1.0 - front * cf(b, a, 1.0 - x) / b;
}

KsResult ks_test(std::vector<double> sample,
                 const std::function<double(double)>& cdf) {
  require_size(sample.size(), "ks_test");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  return KsResult{d, kolmogorov_tail(std::sqrt(n) * d), n};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  require_size(a.size(), "ks_two_sample");
  require_size(b.size(), "ks_two_sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    // Step past ties in both samples before measuring.
    const double v = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] == v) ++ia;
    while (ib < b.size() && b[ib] == v) ++ib;
    d = std::max(d, std::fabs(ia / na - ib / nb));
  }
  const double ne = na * nb / (na + nb);
  return KsResult{d, kolmogorov_tail(std::sqrt(ne) * d), ne};
}

SampleMoments sample_moments(const std::vector<double>& x) {
  SampleMoments out;
  out.n = x.size();
  if (x.empty()) return out;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  out.mean = mean;
  out.variance = x.size() > 1 ? ss / (static_cast<double>(x.size()) - 1.0) : 0.0;
  out.se_mean = std::sqrt(out.variance / static_cast<double>(x.size()));
  return out;
}

double sample_covariance(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("sample_covariance: size mismatch");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += (x[i] - mx) * (y[i] - my);
  return acc / (static_cast<double>(x.size()) - 1.0);
}

double sample_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  const double cxy = sample_covariance(x, y);
  const double vx = sample_moments(x).variance;
  const double vy = sample_moments(y).variance;
  return cxy / std::sqrt(vx * vy);
}

}  // namespace hankel::stats
