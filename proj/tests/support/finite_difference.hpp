// Central finite differences with one Richardson step, used as an
// independent oracle for jet derivatives.
#pragma once

#include <array>
#include <functional>

#include "biharm/jet.hpp"

namespace biharm::testing {

using RealFunction = std::function<double(double, double, double)>;

namespace detail {

// Stencil weights of the O(h^2) central difference for derivative order n.
inline const std::array<std::pair<int, double>, 4>& stencil(int n, int& count) {
  static const std::array<std::pair<int, double>, 4> d0 = {{{0, 1.0}}};
  static const std::array<std::pair<int, double>, 4> d1 = {{{1, 0.5}, {-1, -0.5}}};
  static const std::array<std::pair<int, double>, 4> d2 = {{{1, 1.0}, {0, -2.0}, {-1, 1.0}}};
  static const std::array<std::pair<int, double>, 4> d3 = {
      {{2, 0.5}, {1, -1.0}, {-1, 1.0}, {-2, -0.5}}};
  switch (n) {
    case 0: count = 1; return d0;
    case 1: count = 2; return d1;
    case 2: count = 3; return d2;
    default: count = 4; return d3;
  }
}

inline double difference(const RealFunction& f, const Point3& p, const MultiIndex& a, double h) {
  int ni = 0, nj = 0, nk = 0;
  const auto& si = stencil(a.i, ni);
  const auto& sj = stencil(a.j, nj);
  const auto& sk = stencil(a.k, nk);
  double sum = 0.0;
  for (int i = 0; i < ni; ++i)
    for (int j = 0; j < nj; ++j)
      for (int k = 0; k < nk; ++k) {
        const double w = si[i].second * sj[j].second * sk[k].second;
        sum += w * f(p.x + si[i].first * h, p.y + sj[j].first * h, p.z + sk[k].first * h);
      }
  double scale = 1.0;
  for (int d = 0; d < a.degree(); ++d) scale *= h;
  return sum / scale;
}

}  // namespace detail

/// Partial derivative d^alpha f(p) from Richardson-extrapolated central differences.
inline double richardson_derivative(const RealFunction& f, const Point3& p, const MultiIndex& a) {
  static constexpr double steps[4] = {0.0, 1e-4, 1e-3, 5e-3};
  const double h = steps[a.degree() < 4 ? a.degree() : 3];
  if (a.degree() == 0) return f(p.x, p.y, p.z);
  const double coarse = detail::difference(f, p, a, h);
  const double fine = detail::difference(f, p, a, h / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace biharm::testing
