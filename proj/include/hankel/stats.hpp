#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hankel::stats {

// Upper tail Q(lambda) of the asymptotic Kolmogorov distribution.
double kolmogorov_tail(double lambda);

double normal_cdf(double z);

// Regularized incomplete beta I_x(a, b) by continued fraction; this is the
// beta(a, b) CDF at x.
double incomplete_beta(double a, double b, double x);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double n_effective = 0.0;
};

// One-sample Kolmogorov-Smirnov test against a reference CDF, asymptotic
// p-value.  Requires at least 50 observations.
KsResult ks_test(std::vector<double> sample,
                 const std::function<double(double)>& cdf);

// Two-sample variant with the pooled effective sample size.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct SampleMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double se_mean = 0.0;
};

SampleMoments sample_moments(const std::vector<double>& x);

double sample_covariance(const std::vector<double>& x, const std::vector<double>& y);
double sample_correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hankel::stats
