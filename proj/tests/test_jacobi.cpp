#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hankel/errors.hpp"
#include "hankel/jacobi.hpp"
#include "hankel/logbeta.hpp"
#include "hankel/specfun.hpp"
#include "hankel/stats.hpp"

namespace jb = hankel::jacobi;
namespace lb = hankel::logbeta;
namespace sf = hankel::specfun;
namespace st = hankel::stats;
using hankel::RandomStream;
using jb::Matrix;

namespace {

double exact_mean_logdet_u(int p, double gamma, double delta) {
  double v = 0.0;
  for (int i = 0; i < p; ++i)
    v += sf::digamma(gamma - 0.5 * i) - sf::digamma(gamma - 0.5 * i + delta);
  return v;
}

double exact_var_logdet_u(int p, double gamma, double delta) {
  double v = 0.0;
  for (int i = 0; i < p; ++i)
    v += sf::polygamma(1, gamma - 0.5 * i) -
         sf::polygamma(1, gamma - 0.5 * i + delta);
  return v;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(jb::validate({2, 0.5, 2.0}), std::domain_error);
  CHECK_THROWS_AS(jb::validate({3, 2.0, 1.0}), std::domain_error);
  CHECK_NOTHROW(jb::validate({3, 1.01, 1.01}));
  RandomStream rng(1u);
  CHECK_THROWS_AS(jb::sample_beta(rng, {0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(jb::wishart_bartlett_factor(rng, 3, 2.0), std::domain_error);
}

TEST_CASE("sample_beta moments") {
  RandomStream rng(42u);
  const int reps = 100000;
  {
    double sum = 0.0;
    for (int i = 0; i < reps; ++i) sum += jb::sample_beta(rng, {1.0, 1.0});
    const double se = std::sqrt(1.0 / 12.0 / reps);
    CHECK(std::fabs(sum / reps - 0.5) <= 4.0 * se);
  }
  {
    double sum = 0.0;
    for (int i = 0; i < reps; ++i) sum += jb::sample_beta(rng, {2.0, 3.0});
    // variance ab / ((a+b)^2 (a+b+1)) = 0.04.
    const double se = std::sqrt(0.04 / reps);
    CHECK(std::fabs(sum / reps - 0.4) <= 4.0 * se);
  }
}

TEST_CASE("sample_beta arcsine law via KS") {
  RandomStream rng(43u);
  std::vector<double> sample(20000);
  for (auto& v : sample) v = jb::sample_beta(rng, {0.5, 0.5});
  const auto ks = st::ks_test(sample, [](double x) {
    return 2.0 / 3.14159265358979323846 * std::asin(std::sqrt(x));
  });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("scalar ensemble reduces to the beta law") {
  RandomStream rng(44u);
  const double gamma = 2.0, delta = 3.0;
  std::vector<double> sample(20000);
  for (auto& v : sample) v = jb::sample_jbe(rng, {1, gamma, delta})(0, 0);
  const auto ks = st::ks_test(
      sample, [&](double x) { return st::incomplete_beta(gamma, delta, x); });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("ensemble determinant moments at p = 2") {
  RandomStream rng(45u);
  const jb::JBEParams params{2, 2.0, 2.0};
  const int reps = 40000;
  std::vector<double> det(reps), logdet(reps);
  for (int i = 0; i < reps; ++i) {
    const Matrix u = jb::sample_jbe(rng, params);
    det[i] = u.determinant();
    logdet[i] = std::log(det[i]);
  }
  // E det U = prod (gamma - i/2) / (gamma + delta - i/2) = (2/4)(1.5/3.5).
  const auto md = st::sample_moments(det);
  CHECK(std::fabs(md.mean - 0.5 * 1.5 / 3.5) <= 4.0 * md.se_mean);
  const auto ml = st::sample_moments(logdet);
  CHECK(std::fabs(ml.mean - exact_mean_logdet_u(2, 2.0, 2.0)) <= 4.0 * ml.se_mean);
}

TEST_CASE("subblock determinant decomposition, pinned") {
  {
    Matrix u(2, 2);
    u << 0.5, 0.0, 0.0, 0.5;
    const auto d = jb::decompose_subblock_dets(u);
    CHECK(d.p1[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.p1[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.p2[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    Matrix u(2, 2);
    u << 0.5, 0.25, 0.25, 0.5;
    const auto d = jb::decompose_subblock_dets(u);
    CHECK(d.p1[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.p1[1] == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(d.p2[0] == doctest::Approx(0.6).epsilon(1e-12));
  }
  {
    const Matrix u = 0.5 * Matrix::Identity(3, 3);
    const auto d = jb::decompose_subblock_dets(u);
    for (double v : d.p1) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
    for (double v : d.p2) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("decomposition reconstructs every subblock determinant pair") {
  RandomStream rng(46u);
  const jb::JBEParams params{3, 4.0, 4.0};
  for (int rep = 0; rep < 50; ++rep) {
    const Matrix u = jb::sample_jbe(rng, params);
    const auto d = jb::decompose_subblock_dets(u);
    for (int j = 1; j <= params.p; ++j) {
      // Prefix identity of the beta factors.
      double acc_u = 0.0, acc_iu = std::log1p(-d.p1[0]);
      for (int i = 0; i < j; ++i) acc_u += std::log(d.p1[i]);
      for (int i = 1; i < j; ++i)
        acc_iu += std::log1p(-d.p1[i]) + std::log(d.p2[i - 1]);
      CHECK(std::fabs(acc_u - d.logdet_u[j - 1]) <= 1e-10);
      CHECK(std::fabs(acc_iu - d.logdet_iu[j - 1]) <= 1e-10);
      // Weighted combinations reconstruct det^a det(I-.)^b for a few (a, b).
      for (const auto& [a, b] :
           std::vector<std::pair<double, double>>{{1, 0}, {0, 1}, {2, 3}}) {
        const double lhs = a * d.logdet_u[j - 1] + b * d.logdet_iu[j - 1];
        double rhs = a * std::log(d.p1[0]) + b * std::log1p(-d.p1[0]);
        for (int i = 1; i < j; ++i)
          rhs += a * std::log(d.p1[i]) + b * std::log1p(-d.p1[i]) +
                 b * std::log(d.p2[i - 1]);
        CHECK(std::fabs(lhs - rhs) <= 1e-10);
      }
    }
  }
}

TEST_CASE("fast sampler shape layout and degenerate guard") {
  RandomStream rng(47u);
  // p = 1 collapses to a single beta(gamma, delta) factor.
  const auto d = jb::sample_subblock_dets_fast(rng, {1, 3.0, 2.0});
  CHECK(d.p1.size() == 1);
  CHECK(d.p2.empty());
  CHECK(d.logdet_u[0] == doctest::Approx(std::log(d.p1[0])));
}

TEST_CASE("two-path distributional equality (quick)") {
  const jb::JBEParams params{3, 4.0, 4.0};
  const int reps = 6000;
  std::vector<double> direct_u(reps), direct_iu(reps), fast_u(reps), fast_iu(reps);
  for (int i = 0; i < reps; ++i) {
    RandomStream rng = RandomStream::child(910, 2 * i);
    const auto d = jb::decompose_subblock_dets(jb::sample_jbe(rng, params));
    direct_u[i] = d.logdet_u.back();
    direct_iu[i] = d.logdet_iu.back();
    RandomStream rng2 = RandomStream::child(910, 2 * i + 1);
    const auto f = jb::sample_subblock_dets_fast(rng2, params);
    fast_u[i] = f.logdet_u.back();
    fast_iu[i] = f.logdet_iu.back();
  }
  CHECK(st::ks_two_sample(direct_u, fast_u).p_value > 0.001);
  CHECK(st::ks_two_sample(direct_iu, fast_iu).p_value > 0.001);

  const double mean_ref = exact_mean_logdet_u(3, 4.0, 4.0);
  for (const auto* path : {&direct_u, &fast_u}) {
    const auto m = st::sample_moments(*path);
    CHECK(std::fabs(m.mean - mean_ref) <= 4.0 * m.se_mean);
    const double var_ref = exact_var_logdet_u(3, 4.0, 4.0);
    // SE of a sample variance, Gaussian-rule approximation.
    CHECK(std::fabs(m.variance - var_ref) <=
          4.0 * var_ref * std::sqrt(2.0 / reps) + 0.05 * var_ref);
  }
}

TEST_CASE("two-path equality with asymmetric shapes") {
  // The second beta family has shapes (delta - i/2, i/2); with gamma and
  // delta apart, a wrong first shape would shift the I - U side visibly.
  const jb::JBEParams params{3, 5.0, 3.5};
  const int reps = 8000;
  std::vector<double> direct_iu(reps), fast_iu(reps);
  for (int i = 0; i < reps; ++i) {
    RandomStream rng = RandomStream::child(915, 2 * i);
    direct_iu[i] =
        jb::decompose_subblock_dets(jb::sample_jbe(rng, params)).logdet_iu.back();
    RandomStream rng2 = RandomStream::child(915, 2 * i + 1);
    fast_iu[i] = jb::sample_subblock_dets_fast(rng2, params).logdet_iu.back();
  }
  CHECK(st::ks_two_sample(direct_iu, fast_iu).p_value > 0.001);
  const auto md = st::sample_moments(direct_iu);
  const auto mf = st::sample_moments(fast_iu);
  // Exact mean of log det(I - U) from the digamma sums.
  double ref = 0.0;
  for (int i = 0; i < params.p; ++i) {
    ref += sf::digamma(params.delta) -
           sf::digamma(params.gamma - 0.5 * i + params.delta);
    if (i >= 1)
      ref += sf::digamma(params.delta - 0.5 * i) - sf::digamma(params.delta);
  }
  CHECK(std::fabs(md.mean - ref) <= 4.0 * md.se_mean);
  CHECK(std::fabs(mf.mean - ref) <= 4.0 * mf.se_mean);
}

TEST_CASE("upper-left subblock is the smaller ensemble") {
  const jb::JBEParams params{3, 4.0, 4.0};
  const int reps = 20000;
  std::vector<double> logdet_v(reps), log_p_last(reps);
  for (int i = 0; i < reps; ++i) {
    RandomStream rng = RandomStream::child(911, i);
    const Matrix u = jb::sample_jbe(rng, params);
    const Matrix v = u.topLeftCorner(2, 2);
    logdet_v[i] = std::log(v.determinant());
    log_p_last[i] = std::log(u.determinant() / v.determinant());
  }
  const auto m = st::sample_moments(logdet_v);
  CHECK(std::fabs(m.mean - exact_mean_logdet_u(2, 4.0, 4.0)) <= 4.0 * m.se_mean);
  const double var_ref = exact_var_logdet_u(2, 4.0, 4.0);
  CHECK(std::fabs(m.variance - var_ref) <=
        4.0 * var_ref * std::sqrt(2.0 / reps) + 0.05 * var_ref);
  // det U / det V is independent of the subblock.
  const double corr = st::sample_correlation(log_p_last, logdet_v);
  CHECK(std::fabs(corr) <= 4.0 / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("scalar subblock of an asymmetric draw follows the beta law") {
  // The 1x1 upper-left subblock of a p = 2 draw is the p = 1 ensemble,
  // i.e. a plain beta(gamma, delta) variable.
  const jb::JBEParams params{2, 3.0, 2.0};
  std::vector<double> corner(15000);
  for (std::size_t i = 0; i < corner.size(); ++i) {
    RandomStream rng = RandomStream::child(916, i);
    corner[i] = jb::sample_jbe(rng, params)(0, 0);
  }
  const auto ks = st::ks_test(corner, [&](double x) {
    return st::incomplete_beta(params.gamma, params.delta, x);
  });
  CHECK(ks.p_value > 0.001);
}

TEST_CASE("Bartlett diagonal squares are beta distributed") {
  const jb::JBEParams params{2, 2.0, 2.0};
  const int reps = 10000;
  std::vector<std::vector<double>> diag_sq(2, std::vector<double>(reps));
  for (int r = 0; r < reps; ++r) {
    RandomStream rng = RandomStream::child(912, r);
    const Matrix u = jb::sample_jbe(rng, params);
    const Eigen::LLT<Matrix> llt(u);
    const Matrix l = llt.matrixL();
    for (int i = 0; i < 2; ++i) diag_sq[i][r] = l(i, i) * l(i, i);
  }
  for (int i = 1; i <= 2; ++i) {
    const double a = params.gamma - 0.5 * (i - 1);
    const double ref = a / (a + params.delta);
    const auto m = st::sample_moments(diag_sq[i - 1]);
    INFO("diagonal ", i);
    CHECK(std::fabs(m.mean - ref) <= 4.0 * m.se_mean);
  }
  // And the squared diagonals KS-match their beta laws.
  const auto ks = st::ks_test(diag_sq[1], [&](double x) {
    return st::incomplete_beta(params.gamma - 0.5, params.delta, x);
  });
  CHECK(ks.p_value > 0.001);
}

TEST_CASE("boundary input is rejected by the decomposition") {
  Matrix u(2, 2);
  u << 1.2, 0.0, 0.0, 0.5;  // outside the cube
  CHECK_THROWS_AS(jb::decompose_subblock_dets(u), hankel::boundary_error);
}
