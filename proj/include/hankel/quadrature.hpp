#pragma once

#include <cmath>

namespace hankel::quad {

struct PanelResult {
  double value = 0.0;
  double error = 0.0;
};

// One Gauss7/Kronrod15 panel on [a, b].  Endpoints are never evaluated, so
// integrands with removable or integrable endpoint behaviour are safe.
template <class F>
PanelResult gk15(F&& f, double a, double b) {
  // Node / Gauss weight / Kronrod weight, positive half.
  static const double nw[8][3] = {
      {0.000000000000000, 0.417959183673469, 0.209482141084728},
      {0.405845151377397, 0.381830050505119, 0.190350578064785},
      {0.741531185599394, 0.279705391489277, 0.140653259715525},
      {0.949107912342759, 0.129484966168870, 0.063092092629979},
      {0.207784955007898, 0.0, 0.204432940075298},
      {0.586087235467691, 0.0, 0.169004726639267},
      {0.864864423359769, 0.0, 0.104790010322250},
      {0.991455371120813, 0.0, 0.022935322010529},
  };

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double y0 = f(mid);
  double g7 = nw[0][1] * y0;
  double k15 = nw[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * nw[i][0];
    const double yi = f(mid + dx) + f(mid - dx);
    g7 += nw[i][1] * yi;
    k15 += nw[i][2] * yi;
  }
  g7 *= half;
  k15 *= half;

  const double diff = 200.0 * std::fabs(k15 - g7);
  return PanelResult{k15, diff * std::sqrt(diff)};
}

namespace detail {

template <class F>
double integrate_rec(F& f, double a, double b, double tol, int depth,
                     const PanelResult& whole) {
  if (whole.error <= tol || depth <= 0 || (b - a) <= 1e-300 * std::fabs(b))
    return whole.value;
  const double mid = 0.5 * (a + b);
  const PanelResult left = gk15(f, a, mid);
  const PanelResult right = gk15(f, mid, b);
  return integrate_rec(f, a, mid, 0.5 * tol, depth - 1, left) +
         integrate_rec(f, mid, b, 0.5 * tol, depth - 1, right);
}

}  // namespace detail

// Adaptive bisection to the requested absolute tolerance.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12,
                 int max_depth = 48) {
  if (a == b) return 0.0;
  return detail::integrate_rec(f, a, b, abs_tol, max_depth, gk15(f, a, b));
}

}  // namespace hankel::quad
