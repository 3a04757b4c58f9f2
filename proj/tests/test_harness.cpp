#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hankel/harness.hpp"
#include "hankel/rng.hpp"

namespace hn = hankel::harness;
namespace st = hankel::stats;
using hankel::RandomStream;

TEST_CASE("kolmogorov tail, frozen references") {
  // Classical table values of the Kolmogorov distribution.
  CHECK(st::kolmogorov_tail(1.36) == doctest::Approx(0.05).epsilon(0.02));
  CHECK(st::kolmogorov_tail(1.63) == doctest::Approx(0.01).epsilon(0.03));
  CHECK(st::kolmogorov_tail(1e-12) == 1.0);
  // High-precision references on both sides of the series switch.
  CHECK(st::kolmogorov_tail(0.5) == doctest::Approx(0.963945243665).epsilon(1e-9));
  CHECK(st::kolmogorov_tail(1.1799) ==
        doctest::Approx(0.123512049712).epsilon(1e-9));
  CHECK(st::kolmogorov_tail(1.1801) ==
        doctest::Approx(0.123395591619).epsilon(1e-9));
  CHECK(st::kolmogorov_tail(1.63) ==
        doctest::Approx(0.00984636488849).epsilon(1e-9));
}

TEST_CASE("one-sample KS: null self-test, power, size guard") {
  RandomStream rng(21u);
  std::vector<double> uniform(10000);
  for (auto& v : uniform) v = rng.uniform01();
  const auto ks = st::ks_test(uniform, [](double x) { return x; });
  CHECK(ks.p_value > 0.001);

  // A unit shift must be rejected decisively.
  std::vector<double> shifted(1000);
  for (auto& v : shifted) v = rng.normal() + 1.0;
  const auto power = st::ks_test(shifted, st::normal_cdf);
  CHECK(power.p_value < 0.001);

  CHECK_THROWS_AS(st::ks_test({1.0, 2.0}, [](double x) { return x; }),
                  std::invalid_argument);
}

TEST_CASE("two-sample KS basics") {
  RandomStream rng(22u);
  std::vector<double> a(400);
  for (auto& v : a) v = rng.normal();
  std::vector<double> b(a);
  const auto same = st::ks_two_sample(a, b);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == doctest::Approx(1.0));
  for (auto& v : b) v = rng.normal() + 1.0;
  CHECK(st::ks_two_sample(a, b).p_value < 0.001);
}

TEST_CASE("incomplete beta against closed forms") {
  // I_x(1, 1) = x; I_x(2, 1) = x^2; symmetry I_x(a,b) = 1 - I_{1-x}(b,a).
  for (double x : {0.1, 0.5, 0.9}) {
    CHECK(st::incomplete_beta(1, 1, x) == doctest::Approx(x).epsilon(1e-12));
    CHECK(st::incomplete_beta(2, 1, x) == doctest::Approx(x * x).epsilon(1e-12));
    CHECK(st::incomplete_beta(2.5, 1.5, x) ==
          doctest::Approx(1.0 - st::incomplete_beta(1.5, 2.5, 1.0 - x))
              .epsilon(1e-12));
  }
}

TEST_CASE("experiment kinds round-trip through their names") {
  using hn::ExperimentKind;
  for (auto kind : {ExperimentKind::clt, ExperimentKind::lln,
                    ExperimentKind::decomposition, ExperimentKind::bartlett,
                    ExperimentKind::oracle, ExperimentKind::modgauss,
                    ExperimentKind::product_formula, ExperimentKind::cumulant_bounds,
                    ExperimentKind::ldp_closed_form, ExperimentKind::polygamma}) {
    const auto parsed = hn::parse_kind(hn::kind_name(kind));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == kind);
  }
  CHECK(!hn::parse_kind("nope").has_value());
  CHECK(*hn::parse_kind("ldp-trend") == ExperimentKind::ldp_closed_form);
}

TEST_CASE("deterministic reports: identical runs and worker invariance") {
  hn::ExperimentConfig config;
  config.kind = hn::ExperimentKind::decomposition;
  config.replications = 800;
  config.seed = 33;

  config.workers = 1;
  const auto a = hn::run_decomposition(config);
  const auto b = hn::run_decomposition(config);
  config.workers = 4;
  const auto c = hn::run_decomposition(config);
  CHECK(a.to_jsonl(false) == b.to_jsonl(false));
  CHECK(a.to_jsonl(false) == c.to_jsonl(false));

  hn::ExperimentConfig clt;
  clt.kind = hn::ExperimentKind::clt;
  clt.n = 20;
  clt.p_n = 5;
  clt.replications = 300;
  clt.seed = 34;
  clt.workers = 1;
  const auto d = hn::run_clt(clt);
  clt.workers = 3;
  const auto e = hn::run_clt(clt);
  CHECK(d.to_jsonl(false) == e.to_jsonl(false));
  // Timing records differ in general; everything else is pinned.
  CHECK(d.to_jsonl(true).find("wall_ms") != std::string::npos);
  CHECK(d.to_jsonl(false).find("wall_ms") == std::string::npos);
}

TEST_CASE("pass flags recomputable from the recorded numbers") {
  hn::ExperimentConfig config;
  config.kind = hn::ExperimentKind::oracle;
  config.replications = 300;
  config.seed = 35;
  const auto report = hn::run_oracle(config);
  for (const auto& s : report.stats) {
    if (s.note == "pass iff p_value > reference")
      CHECK(s.pass == (s.p_value > s.reference));
    else if (s.note == "pass iff |empirical - reference| <= 4 se")
      CHECK(s.pass == (std::fabs(s.empirical - s.reference) <= 4.0 * s.se));
  }
}

TEST_CASE("scaled variance approaches the kernel value along the ladder") {
  double prev = 1e9;
  for (const auto& [n, p] : {std::pair{50, 10}, {100, 20}, {200, 40}}) {
    const hankel::hankelproc::ProcessParams params{n, p, {}};
    const double k2 = hankel::hankelproc::exact_cumulant(2, params, 1.0, 1.0);
    const double gap = std::fabs(k2 / n / 0.5 - 1.0);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("deterministic experiments pass quickly") {
  CHECK(hn::run_polygamma({hn::ExperimentKind::polygamma}).passed());
  CHECK(hn::run_ldp_closed_form({hn::ExperimentKind::ldp_closed_form}).passed());
  hn::ExperimentConfig lln;
  lln.kind = hn::ExperimentKind::lln;
  lln.replications = 400;
  lln.n = 40;
  lln.p_n = 8;
  CHECK(hn::run_lln(lln).passed());
}

TEST_CASE("CSV writer format and determinism") {
  const std::vector<hankel::hankelproc::GridPoint> grid = {{0.5, 1.0}, {1.0, 1.0}};
  const std::vector<std::vector<double>> values = {{-1.25, -2.5},
                                                   {-0.3333333333333333, -4.0}};
  std::ostringstream first, second;
  hn::write_path_csv(first, grid, values);
  hn::write_path_csv(second, grid, values);
  CHECK(first.str() == second.str());
  CHECK(first.str().rfind("replication,s,t,value\n", 0) == 0);
  CHECK(first.str().find("0,0.5,1,-1.25") != std::string::npos);
  CHECK(first.str().find("1,0.5,1,-0.33333333333333331") != std::string::npos);
}

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<int> hits(1000, 0);
  hn::parallel_for(hits.size(), 5, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}
