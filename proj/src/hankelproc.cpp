#include "hankel/hankelproc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hankel/errors.hpp"
#include "hankel/jacobi.hpp"
#include "hankel/momentspace.hpp"
#include "hankel/quadrature.hpp"
#include "hankel/stats.hpp"

namespace hankel::hankelproc {
namespace {

int floor_index(double x, int scale) {
  return static_cast<int>(std::floor(x * scale));
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Calls fn(wa, wb, shapes) once per independent beta term of H(s, t), with
// the exponents wa on X and wb on 1 - X.  Zero-weight terms are dropped.
template <class Fn>
void for_each_term(const BetaLayout& layout, int nt, int ps, Fn&& fn) {
  for (int i = 1; i <= nt; ++i) {
    const double w = static_cast<double>(nt - i);
    const int even = 2 * i;
    const int odd = 2 * i - 1;
    for (int j = 0; j < ps; ++j) {
      fn(w + 1.0, w, layout.p_shape(even, j));
      fn(w + 1.0, w + 1.0, layout.p_shape(odd, j));
    }
    for (int j = 1; j < ps; ++j) {
      if (w > 0.0) fn(w, 0.0, layout.r_shape(even, j));
      fn(w + 1.0, 0.0, layout.r_shape(odd, j));
    }
  }
}

}  // namespace

void validate(const ProcessParams& params) {
  if (params.n < 1 || params.p_n < 1)
    throw std::domain_error("ProcessParams: n and p_n must be >= 1");
  for (const auto& g : params.grid)
    if (g.s < 0.0 || g.s > 1.0 || g.t < 0.0 || g.t > 1.0)
      throw std::domain_error("ProcessParams: grid values must lie in [0, 1]");
}

BetaLayout::BetaLayout(int n, int p_n) : n_(n), p_(p_n) {
  if (n < 1 || p_n < 1)
    throw std::domain_error("BetaLayout: n and p_n must be >= 1");
}

double BetaLayout::level(int i) const {
  if (i < 1 || i > 2 * n_) throw std::out_of_range("BetaLayout: index i");
  return 0.5 * (p_ + 1) * (2 * n_ - i + 2);
}

logbeta::BetaParams BetaLayout::p_shape(int i, int j) const {
  if (j < 0 || j >= p_) throw std::out_of_range("BetaLayout: index j");
  const double e = level(i);
  return {e - 0.5 * j, e};
}

logbeta::BetaParams BetaLayout::r_shape(int i, int j) const {
  if (j < 1 || j >= p_) throw std::out_of_range("BetaLayout: index j");
  const double e = level(i);
  return {e - 0.5 * j, 0.5 * j};
}

BetaLayout beta_layout(int n, int p_n) { return BetaLayout(n, p_n); }

BetaPool draw_beta_pool(RandomStream& rng, int n, int p_n) {
  const BetaLayout layout(n, p_n);
  BetaPool pool;
  pool.n = n;
  pool.p_n = p_n;
  pool.p_draws.resize(2 * n);
  pool.r_draws.resize(2 * n);
  for (int i = 1; i <= 2 * n; ++i) {
    auto& p_row = pool.p_draws[i - 1];
    auto& r_row = pool.r_draws[i - 1];
    p_row.resize(p_n);
    r_row.resize(p_n - 1);
    for (int j = 0; j < p_n; ++j) {
      const auto sh = layout.p_shape(i, j);
      p_row[j] = rng.beta(sh.a, sh.b, &pool.redraws);
    }
    for (int j = 1; j < p_n; ++j) {
      const auto sh = layout.r_shape(i, j);
      r_row[j - 1] = rng.beta(sh.a, sh.b, &pool.redraws);
    }
  }
  return pool;
}

std::vector<double> evaluate_path(const BetaPool& pool,
                                  const std::vector<GridPoint>& grid) {
  const int n = pool.n;
  const int p_n = pool.p_n;
  // Prefix sums over j of log p, log(1-p), log r per index i.
  std::vector<std::vector<double>> lp(2 * n), lq(2 * n), lr(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    lp[i].assign(p_n + 1, 0.0);
    lq[i].assign(p_n + 1, 0.0);
    lr[i].assign(p_n + 1, 0.0);
    for (int j = 0; j < p_n; ++j) {
      lp[i][j + 1] = lp[i][j] + std::log(pool.p_draws[i][j]);
      lq[i][j + 1] = lq[i][j] + std::log1p(-pool.p_draws[i][j]);
    }
    lr[i][1] = 0.0;  // the r range starts at j = 1
    for (int j = 1; j < p_n; ++j)
      lr[i][j + 1] = lr[i][j] + std::log(pool.r_draws[i][j - 1]);
  }

  std::vector<double> out;
  out.reserve(grid.size());
  for (const auto& g : grid) {
    const int nt = floor_index(g.t, n);
    const int ps = floor_index(g.s, p_n);
    if (nt == 0 || ps == 0) {
      out.push_back(0.0);
      continue;
    }
    double h = 0.0;
    for (int i = 1; i <= nt; ++i) {
      const double w = static_cast<double>(nt - i);
      const int even = 2 * i - 1;  // row of index 2i
      const int odd = 2 * i - 2;   // row of index 2i - 1
      h += (w + 1.0) * lp[even][ps] + w * lq[even][ps] + w * lr[even][ps];
      h += (w + 1.0) * (lp[odd][ps] + lq[odd][ps] + lr[odd][ps]);
    }
    out.push_back(h);
  }
  return out;
}

ProcessPath sample_path(RandomStream& rng, const ProcessParams& params) {
  validate(params);
  const BetaPool pool = draw_beta_pool(rng, params.n, params.p_n);
  ProcessPath path;
  path.values = evaluate_path(pool, params.grid);
  path.redraws = pool.redraws;
  return path;
}

double exact_mean(const ProcessParams& params, double s, double t) {
  return exact_cumulant(1, params, s, t);
}

double exact_cumulant(int m, const ProcessParams& params, double s, double t) {
  validate(params);
  if (m < 1) throw std::domain_error("exact_cumulant: order must be >= 1");
  const int nt = floor_index(t, params.n);
  const int ps = floor_index(s, params.p_n);
  if (nt == 0 || ps == 0) return 0.0;
  const BetaLayout layout(params.n, params.p_n);
  double total = 0.0;
  for_each_term(layout, nt, ps,
                [&](double wa, double wb, const logbeta::BetaParams& sh) {
                  total += logbeta::weighted_log_beta_cumulant(m, wa, wb, sh);
                });
  return total;
}

double center_log_det(const ProcessParams& params, double s, double t) {
  validate(params);
  const int nt = floor_index(t, params.n);
  const int ps = floor_index(s, params.p_n);
  if (nt == 0 || ps == 0) return 0.0;
  return -std::log(2.0) * ps *
         (2.0 * static_cast<double>(nt) * nt + static_cast<double>(nt));
}

StripInfo cgf_strip(const ProcessParams& params, double s, double t) {
  validate(params);
  const int nt = floor_index(t, params.n);
  const int ps = floor_index(s, params.p_n);
  StripInfo info;
  info.z_min = -std::numeric_limits<double>::infinity();
  if (nt == 0 || ps == 0) {
    info.binding_term = "degenerate (H = 0)";
    return info;
  }
  const BetaLayout layout(params.n, params.p_n);
  for_each_term(layout, nt, ps,
                [&](double wa, double wb, const logbeta::BetaParams& sh) {
                  if (wa > 0.0 && -sh.a / wa > info.z_min) {
                    info.z_min = -sh.a / wa;
                    info.binding_term = "first shape " + std::to_string(sh.a) +
                                        " with weight " + std::to_string(wa);
                  }
                  if (wb > 0.0 && -sh.b / wb > info.z_min) {
                    info.z_min = -sh.b / wb;
                    info.binding_term = "second shape " + std::to_string(sh.b) +
                                        " with weight " + std::to_string(wb);
                  }
                });
  return info;
}

double exact_cgf(double z, const ProcessParams& params, double s, double t) {
  validate(params);
  const int nt = floor_index(t, params.n);
  const int ps = floor_index(s, params.p_n);
  if (nt == 0 || ps == 0 || z == 0.0) return 0.0;
  const StripInfo strip = cgf_strip(params, s, t);
  if (z <= strip.z_min)
    throw strip_error("exact_cgf: z outside the admissible strip", strip.z_min,
                      strip.binding_term);
  const BetaLayout layout(params.n, params.p_n);
  double total = 0.0;
  for_each_term(layout, nt, ps,
                [&](double wa, double wb, const logbeta::BetaParams& sh) {
                  total += logbeta::weighted_log_beta_cgf(z, wa, wb, sh);
                });
  return total;
}

CumulantBoundReport cumulant_bound_check(int m, const ProcessParams& params,
                                         double s, double t, double slack) {
  validate(params);
  if (m < 1) throw std::domain_error("cumulant_bound_check: order must be >= 1");
  const int n = params.n;
  const int p_n = params.p_n;
  const int nt = floor_index(t, n);
  const int ps = floor_index(s, p_n);
  const BetaLayout layout(n, p_n);

  CumulantBoundReport report;
  report.m = m;
  report.s = s;
  report.t = t;

  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double crude_s = 2.0 * factorial(m + 1) * n * std::pow(p_n, 2 - m);
  const double crude_t = 12.0 * std::pow(4.0, m) * factorial(m + 1) * n *
                         std::pow(p_n, 2 - m);
  const double fine_t = 6.0 * std::pow(4.0, m) * factorial(m + 1) *
                        std::pow(p_n, -m) *
                        (static_cast<double>(n) * p_n +
                         (std::log(static_cast<double>(n)) + 1.0) * p_n * p_n);

  // Group cumulants.  The first cumulant of the p-groups carries the
  // deterministic barycenter part -log(2) * sum of exponents, which the
  // group bound does not cover; at m = 1 the bound applies to the group
  // centered by it (see center_log_det).
  double k_r_even = 0.0, k_r_odd = 0.0, k_p_even = 0.0, k_p_odd = 0.0;
  double center_even = 0.0, center_odd = 0.0;
  for (int i = 1; i <= nt; ++i) {
    const double w = static_cast<double>(nt - i);
    for (int j = 0; j < ps; ++j) {
      k_p_even += logbeta::weighted_log_beta_cumulant(m, w + 1.0, w,
                                                      layout.p_shape(2 * i, j));
      k_p_odd += logbeta::weighted_log_beta_cumulant(m, w + 1.0, w + 1.0,
                                                     layout.p_shape(2 * i - 1, j));
    }
    center_even -= std::log(2.0) * ps * (2.0 * w + 1.0);
    center_odd -= std::log(2.0) * ps * (2.0 * w + 2.0);
    for (int j = 1; j < ps; ++j) {
      if (w > 0.0)
        k_r_even += std::pow(w, m) *
                    logbeta::log_beta_cumulant(m, layout.r_shape(2 * i, j));
      k_r_odd += std::pow(w + 1.0, m) *
                 logbeta::log_beta_cumulant(m, layout.r_shape(2 * i - 1, j));
    }
  }
  if (m == 1) {
    k_p_even -= center_even;
    k_p_odd -= center_odd;
  }

  // Sandwich normalizer n * floor(p_n s - 1) floor(p_n s) / (p_n+1)^m * (m-1)!/4.
  const double normalizer = static_cast<double>(n) * (ps - 1.0) * ps /
                            std::pow(p_n + 1.0, m) * factorial(m - 1) / 4.0;
  const double t_shift = std::max(0.0, t - 2.0 / n);
  const double upper_int = quad::integrate(
      [&](double x) { return std::pow((t - x) / (1.0 - x), m); }, 0.0, t, 1e-12);
  const double lower_even_int = quad::integrate(
      [&](double x) { return std::pow((t - 2.0 / n - x) / (1.0 - x), m); }, 0.0,
      t_shift, 1e-12);
  const double lower_odd_int = quad::integrate(
      [&](double x) {
        return std::pow((t - 1.0 / n - x) / (1.0 + 1.0 / n - x), m);
      },
      0.0, t_shift, 1e-12);

  const auto fill_sandwich = [&](SandwichCheck& check, double kappa,
                                 double lower_int, double upper_extra) {
    check.kappa = kappa;
    check.crude_bound = crude_s;
    check.crude_pass = std::fabs(kappa) <= crude_s + slack;
    if (nt == 0 || ps <= 1) {
      check.empty = true;
      check.normalized = 0.0;
      check.sandwich_pass = true;
      return;
    }
    check.normalized = sign * kappa / normalizer;
    check.lower = lower_int;
    check.upper = (1.0 + static_cast<double>(m) / p_n) * (upper_int + upper_extra);
    check.sandwich_pass = check.normalized >= check.lower - slack &&
                          check.normalized <= check.upper + slack;
  };
  fill_sandwich(report.r_even, k_r_even, lower_even_int, 0.0);
  fill_sandwich(report.r_odd, k_r_odd, lower_odd_int, 1.0 / n);

  const auto fill_mixed = [&](MixedCheck& check, double kappa) {
    check.kappa = kappa;
    check.bound_fine = fine_t;
    check.bound_crude = crude_t;
    check.pass = std::fabs(kappa) <= fine_t + slack &&
                 std::fabs(kappa) <= crude_t + slack;
  };
  fill_mixed(report.p_even, k_p_even);
  fill_mixed(report.p_odd, k_p_odd);
  return report;
}

OracleReport small_instance_oracle(std::uint64_t seed, int n, int p, int reps,
                                   double s, double t, double alpha) {
  if (n < 1 || n > 3 || p < 1 || p > 3)
    throw std::domain_error("small_instance_oracle: desk scale is n, p <= 3");
  if (reps < 50)
    throw std::domain_error("small_instance_oracle: needs at least 50 replications");
  const int nt = floor_index(t, n);
  const int ps = floor_index(s, p);
  if (nt == 0 || ps == 0)
    throw std::domain_error("small_instance_oracle: degenerate grid point");

  const BetaLayout layout(n, p);
  OracleReport report;
  report.n = n;
  report.p = p;
  report.reps = reps;
  report.s = s;
  report.t = t;

  std::vector<double> direct;
  std::vector<double> fast;
  direct.reserve(reps);
  fast.reserve(reps);
  jacobi::SampleDiagnostics diag;

  for (int rep = 0; rep < reps; ++rep) {
    // Matrix route: ensemble canonical moments -> subblocks -> moments ->
    // dense block Hankel log determinant.
    RandomStream rng = RandomStream::child(seed, 2 * static_cast<std::uint64_t>(rep));
    for (;;) {
      try {
        momentspace::CanonicalSequence canon;
        canon.p = ps;
        canon.canon.reserve(2 * nt);
        for (int i = 1; i <= 2 * nt; ++i) {
          const double level = layout.level(i);
          const jacobi::Matrix u =
              jacobi::sample_jbe(rng, {p, level, level}, &diag);
          canon.canon.push_back(u.topLeftCorner(ps, ps));
        }
        const momentspace::MomentSequence seq =
            momentspace::canonical_to_moments(canon);
        direct.push_back(
            momentspace::log_det_spd(momentspace::build_lower_hankel(seq, 2 * nt)));
        break;
      } catch (const boundary_error&) {
        ++report.rejected;
      }
    }
    // Beta-product route.
    RandomStream rng2 =
        RandomStream::child(seed, 2 * static_cast<std::uint64_t>(rep) + 1);
    const BetaPool pool = draw_beta_pool(rng2, n, p);
    fast.push_back(evaluate_path(pool, {{s, t}})[0]);
    report.redraws += pool.redraws;
  }
  report.rejected += diag.rejected;
  report.redraws += diag.redraws;

  const auto ks = stats::ks_two_sample(direct, fast);
  report.ks_statistic = ks.statistic;
  report.ks_p_value = ks.p_value;
  report.ks_pass = ks.p_value > alpha;

  report.exact_mean_value = exact_mean({n, p, {}}, s, t);
  const auto md = stats::sample_moments(direct);
  const auto mf = stats::sample_moments(fast);
  report.mean_direct = md.mean;
  report.se_direct = md.se_mean;
  report.mean_fast = mf.mean;
  report.se_fast = mf.se_mean;
  report.mean_direct_pass =
      std::fabs(md.mean - report.exact_mean_value) <= 4.0 * md.se_mean;
  report.mean_fast_pass =
      std::fabs(mf.mean - report.exact_mean_value) <= 4.0 * mf.se_mean;
  return report;
}

}  // namespace hankel::hankelproc
