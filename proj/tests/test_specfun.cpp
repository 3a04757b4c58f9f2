#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hankel/specfun.hpp"

namespace sf = hankel::specfun;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Independent oracle: Hurwitz series with an Euler-Maclaurin tail, summed
// directly to a far larger cutoff than the implementation ever shifts to.
double oracle_polygamma(int k, double x) {
  const int cutoff = 4000;
  if (k == 0) {
    double sum = 0.0;
    for (int j = 0; j < cutoff; ++j) sum += 1.0 / (x + j);
    const double y = x + cutoff;
    const double tail = std::log(y) - 0.5 / y - 1.0 / (12.0 * y * y) +
                        1.0 / (120.0 * std::pow(y, 4));
    return tail - sum;
  }
  // |psi_k(x)| = k! * sum_j (x + j)^{-(k+1)}.
  const double s = k + 1;
  double sum = 0.0;
  for (int j = cutoff - 1; j >= 0; --j) sum += std::pow(x + j, -s);
  const double y = x + cutoff;
  sum += std::pow(y, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(y, -s) +
         s / 12.0 * std::pow(y, -s - 1.0) -
         s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(y, -s - 3.0);
  double kfact = 1.0;
  for (int i = 2; i <= k; ++i) kfact *= i;
  return (k % 2 == 1 ? 1.0 : -1.0) * kfact * sum;
}

double rel_gap(double value, double reference) {
  return std::fabs(value - reference) / std::max(std::fabs(reference), 1e-300);
}

}  // namespace

TEST_CASE("log_gamma pinned values") {
  CHECK(std::fabs(sf::log_gamma(1.0)) < 1e-13);
  CHECK(std::fabs(sf::log_gamma(2.0)) < 1e-13);
  CHECK(sf::log_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-13));
  CHECK(sf::log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
}

TEST_CASE("log_gamma agrees with std::lgamma across the supported range") {
  for (double x : {1e-3, 7e-3, 0.04, 0.3, 0.77, 1.5, 2.5, 3.9, 8.0, 19.0, 31.5,
                   32.5, 64.0, 311.0, 4.5e3, 8.8e4, 1e6}) {
    const double mine = sf::log_gamma(x);
    const double ref = std::lgamma(x);
    CHECK(std::fabs(mine - ref) <= 1e-12 * std::max(1.0, std::fabs(ref)));
  }
}

TEST_CASE("polygamma pinned values") {
  CHECK(sf::polygamma(1, 1.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));
  CHECK(sf::polygamma(1, 2.0) ==
        doctest::Approx(kPi * kPi / 6.0 - 1.0).epsilon(1e-13));
  CHECK(sf::polygamma(0, 1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-13));
  CHECK(sf::digamma(1.0) == doctest::Approx(oracle_polygamma(0, 1.0)).epsilon(1e-13));
}

TEST_CASE("polygamma matches the Hurwitz oracle to 1e-12 relative") {
  const std::vector<double> xs = {1e-3, 0.01, 0.1,  0.5,   1.0, 1.75, 2.0, 5.0,
                                  10.0, 31.9, 32.0, 33.1,  100.0, 1e3, 3.3e4, 1e6};
  for (int k = 0; k <= 12; ++k) {
    for (double x : xs) {
      const double mine = sf::polygamma(k, x);
      const double ref = oracle_polygamma(k, x);
      INFO("k=", k, " x=", x, " mine=", mine, " ref=", ref);
      CHECK(rel_gap(mine, ref) <= 1e-12);
    }
  }
}

TEST_CASE("polygamma above the certified order range, frozen references") {
  // High-precision references for the orders between 13 and the cap.
  struct Ref { int k; double x; double value; };
  const Ref refs[] = {
      {13, 0.001, 6.2270208e51},
      {13, 0.5, 102023530134651.95041},
      {13, 3.25, 435.02910564121437843},
      {13, 150.0, 2.5695325679701736937e-20},
      {16, 0.001, -2.0922789888e64},
      {16, 0.5, -2742391937439321116.0},
      {16, 3.25, -42000.163506390627005},
      {16, 150.0, -2.0990382350732961599e-23},
  };
  for (const auto& ref : refs) {
    INFO("k=", ref.k, " x=", ref.x);
    CHECK(rel_gap(sf::polygamma(ref.k, ref.x), ref.value) <= 1e-12);
  }
}

TEST_CASE("polygamma sign and monotonicity for k >= 1") {
  for (int k = 1; k <= 6; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    double prev = std::fabs(sf::polygamma(k, 0.25));
    for (double x : {0.5, 1.0, 2.0, 4.0, 16.0, 256.0}) {
      const auto eval = sf::polygamma_eval(k, x);
      CHECK(eval.value * sign > 0.0);
      const double mag = std::fabs(eval.value);
      CHECK(mag < prev);
      prev = mag;
    }
  }
}

TEST_CASE("domain and order errors") {
  CHECK_THROWS_AS(sf::log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(sf::log_gamma(-1.0), std::domain_error);
  CHECK_THROWS_AS(sf::digamma(-2.5), std::domain_error);
  CHECK_THROWS_AS(sf::polygamma(1, 0.0), std::domain_error);
  CHECK_THROWS_AS(sf::polygamma(-1, 1.0), std::domain_error);
  CHECK_THROWS_AS(sf::polygamma(17, 1.0), std::domain_error);
  CHECK_NOTHROW(sf::polygamma(16, 1.0));
  CHECK_THROWS_AS(sf::log_beta_fn(0.0, 1.0), std::domain_error);
}

TEST_CASE("log_beta_fn pinned values") {
  CHECK(std::fabs(sf::log_beta_fn(1.0, 1.0)) < 1e-13);
  CHECK(sf::log_beta_fn(2.0, 3.0) ==
        doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-14));
  CHECK(sf::log_beta_fn(0.5, 0.5) == doctest::Approx(std::log(kPi)).epsilon(1e-13));
}

TEST_CASE("polygamma inequality suite passes on the documented grids") {
  const auto report = sf::check_polygamma_inequalities();
  for (const auto& family : report.families) {
    INFO(family.name, " violations=", family.violations,
         " worst_margin=", family.worst_margin);
    CHECK(family.pass);
    CHECK(family.evaluated > 0);
  }
  CHECK(report.all_pass());
  CHECK(report.families.size() == 7);
}
