#pragma once

// Brute-force reference implementations used only to freeze expected values
// in tests.  They share no code with the library: quadrature is tanh-sinh
// instead of Gauss-Kronrod, differentiation is Richardson-extrapolated.

#include <cmath>
#include <functional>
#include <limits>

namespace oracle {

// Tanh-sinh quadrature over (a, b).  Node offsets from each endpoint are
// computed directly so integrable endpoint singularities keep full precision.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, int level = 10) {
  const double c = 0.5 * (a + b);
  const double s = 0.5 * (b - a);
  const double umax = 4.0;
  const long n = 1L << level;
  const double h = umax / static_cast<double>(n);
  const double piover2 = 1.57079632679489661923;

  double sum = f(c) * piover2;  // u = 0 node, weight cosh(0)/cosh^2(0).
  for (long k = 1; k <= n; ++k) {
    const double u = h * static_cast<double>(k);
    const double sh = std::sinh(u);
    const double ch = std::cosh(u);
    const double g = piover2 * sh;
    const double em = std::exp(-2.0 * g);
    const double one_minus_tanh = 2.0 * em / (1.0 + em);  // 1 - tanh(g)
    const double sech2 = 4.0 * em / ((1.0 + em) * (1.0 + em));
    const double w = piover2 * ch * sech2;
    if (w == 0.0) continue;
    const double off = s * one_minus_tanh;
    if (off == 0.0) continue;
    const double lo = a + off;
    const double hi = b - off;
    sum += w * (f(lo) + f(hi));
  }
  return sum * h * s;
}

// Semi-infinite integral via x = a + u/(1-u) folded onto (0,1).
inline double integrate_to_inf(const std::function<double(double)>& f,
                               double a, int level = 10) {
  auto mapped = [&f, a](double u) {
    const double omu = 1.0 - u;
    if (omu <= 0.0) return 0.0;
    const double x = a + u / omu;
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    return fx / (omu * omu);
  };
  return integrate(mapped, 0.0, 1.0, level);
}

// Richardson-extrapolated central differences (4 refinement rounds).
inline double derivative(const std::function<double(double)>& f, double x) {
  const double h0 = 1e-2 * std::max(1.0, std::abs(x));
  double table[5][5];
  for (int i = 0; i < 5; ++i) {
    const double h = h0 / static_cast<double>(1 << i);
    table[i][0] = (f(x + h) - f(x - h)) / (2.0 * h);
  }
  for (int j = 1; j < 5; ++j) {
    const double fac = std::pow(4.0, j);
    for (int i = j; i < 5; ++i) {
      table[i][j] = (fac * table[i][j - 1] - table[i - 1][j - 1]) / (fac - 1.0);
    }
  }
  return table[4][4];
}

}  // namespace oracle
