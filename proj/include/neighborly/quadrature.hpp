#pragma once

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace neighborly {

struct QuadratureOptions {
  double relative_tolerance = 1e-13;
  int max_depth = 30;
};

/// Adaptive Gauss-Legendre: a 20-point rule on [a, b], bisected until the
/// whole-interval estimate and the sum of the two halves agree to the
/// relative tolerance.
template <typename Real, typename F>
Real adaptive_gauss_legendre(const F& f, const Real& a, const Real& b, const QuadratureOptions& opts = {}) {
  using Rule = boost::math::quadrature::gauss<Real, 20>;
  auto recurse = [&](auto&& self, const Real& lo, const Real& hi, const Real& whole, int depth) -> Real {
    using std::abs;
    const Real mid = (lo + hi) / 2;
    const Real left = Rule::integrate(f, lo, mid);
    const Real right = Rule::integrate(f, mid, hi);
    const Real halves = left + right;
    const Real diff = abs(Real(halves - whole));
    if (diff <= Real(opts.relative_tolerance) * abs(halves) || diff == 0) return halves;
    if (depth >= opts.max_depth) throw std::runtime_error("adaptive_gauss_legendre: did not converge");
    return self(self, lo, mid, left, depth + 1) + self(self, mid, hi, right, depth + 1);
  };
  if (a == b) return Real(0);
  return recurse(recurse, a, b, Rule::integrate(f, a, b), 0);
}

}  // namespace neighborly
