#pragma once

// Central finite differences over the 2d real coordinates of a chart.
// Value types only need V - V, V + V and double * V, so the same stencils
// differentiate matrices and coefficient-form fields alike.

#include <algorithm>
#include <utility>

#include "bck/core.hpp"

namespace bck::fd {

/// Real axis a (0..2d-1) in C^d belongs to complex axis a / 2.
inline double axis_step(const FdOptions& opts, double base, int a) {
  return base * opts.axis_scale(a / 2);
}

template <class F>
auto central(const F& f, const ChartPoint& z, const Vector& u, double h, const Domain& dom) {
  const ChartPoint zp = z.shifted(h * u);
  const ChartPoint zm = z.shifted(-h * u);
  dom.require(zp, "finite-difference stencil");
  dom.require(zm, "finite-difference stencil");
  auto fp = f(zp);
  auto fm = f(zm);
  return decltype(fp)((1.0 / (2.0 * h)) * (fp - fm));
}

/// d f / d x_a at z, where x_a runs along real_axis(d, a).
template <class F>
auto real_partial(const F& f, const ChartPoint& z, int a, double step, bool richardson,
                  const Domain& dom) {
  const Vector u = real_axis(z.dim(), a);
  auto d1 = central(f, z, u, step, dom);
  if (!richardson) return d1;
  auto d2 = central(f, z, u, 2.0 * step, dom);
  return decltype(d1)((4.0 / 3.0) * d1 - (1.0 / 3.0) * d2);
}

template <class F>
auto second_difference(const F& f, const ChartPoint& z, int a, int b, double s,
                       const Domain& dom) {
  const int d = z.dim();
  const Vector ua = real_axis(d, a);
  if (a == b) {
    const ChartPoint zp = z.shifted(s * ua);
    const ChartPoint zm = z.shifted(-s * ua);
    dom.require(zp, "finite-difference stencil");
    dom.require(zm, "finite-difference stencil");
    auto fp = f(zp);
    auto f0 = f(z);
    auto fm = f(zm);
    return decltype(fp)((1.0 / (s * s)) * (fp - 2.0 * f0 + fm));
  }
  const Vector ub = real_axis(d, b);
  const ChartPoint zpp = z.shifted(s * (ua + ub));
  const ChartPoint zpm = z.shifted(s * (ua - ub));
  const ChartPoint zmp = z.shifted(s * (-ua + ub));
  const ChartPoint zmm = z.shifted(-s * (ua + ub));
  for (const ChartPoint* p : {&zpp, &zpm, &zmp, &zmm}) dom.require(*p, "finite-difference stencil");
  auto fpp = f(zpp);
  auto fpm = f(zpm);
  auto fmp = f(zmp);
  auto fmm = f(zmm);
  return decltype(fpp)((1.0 / (4.0 * s * s)) * (fpp - fpm - fmp + fmm));
}

/// d^2 f / d x_a d x_b at z.
template <class F>
auto real_second_partial(const F& f, const ChartPoint& z, int a, int b, double step,
                         bool richardson, const Domain& dom) {
  auto d1 = second_difference(f, z, a, b, step, dom);
  if (!richardson) return d1;
  auto d2 = second_difference(f, z, a, b, 2.0 * step, dom);
  return decltype(d1)((4.0 / 3.0) * d1 - (1.0 / 3.0) * d2);
}

/// Wirtinger pair for complex axis j: (d/dz_j f, d/dzbar_j f).
template <class F>
auto wirtinger(const F& f, const ChartPoint& z, int j, const FdOptions& opts, const Domain& dom) {
  const double hx = axis_step(opts, opts.first_step, 2 * j);
  auto dx = real_partial(f, z, 2 * j, hx, opts.richardson, dom);
  auto dy = real_partial(f, z, 2 * j + 1, hx, opts.richardson, dom);
  using V = decltype(dx);
  return std::pair<V, V>{V(0.5 * (dx - kI * dy)), V(0.5 * (dx + kI * dy))};
}

/// Mixed Wirtinger derivative d/dzbar_k d/dz_j f, built from real second partials
/// with the second-order step.
template <class F>
auto dbar_d(const F& f, const ChartPoint& z, int k, int j, const FdOptions& opts,
            const Domain& dom) {
  const double s = opts.second_step * std::max(opts.axis_scale(k), opts.axis_scale(j));
  auto xx = real_second_partial(f, z, 2 * k, 2 * j, s, opts.richardson, dom);
  auto xy = real_second_partial(f, z, 2 * k, 2 * j + 1, s, opts.richardson, dom);
  auto yx = real_second_partial(f, z, 2 * k + 1, 2 * j, s, opts.richardson, dom);
  auto yy = real_second_partial(f, z, 2 * k + 1, 2 * j + 1, s, opts.richardson, dom);
  using V = decltype(xx);
  return V(0.25 * (xx - kI * xy + kI * yx + yy));
}

/// Copy of the options whose first-order step is the nested (outer) step.
inline FdOptions outer_layer(const FdOptions& opts) {
  FdOptions out = opts;
  out.first_step = opts.second_step;
  return out;
}

}  // namespace bck::fd
