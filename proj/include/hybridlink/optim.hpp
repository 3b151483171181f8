#pragma once

#include <cmath>
#include <functional>
#include <optional>

namespace hybridlink {

// Golden-section maximization on [a, b]; ties broken toward smaller x by the
// strict comparison direction.
inline double golden_section_max(const std::function<double(double)>& f, double a, double b,
                                 double tol = 1e-6, int max_iter = 200) {
  const double gr = (1.0 + std::sqrt(5.0)) / 2.0;
  double c = b - (b - a) / gr;
  double d = a + (b - a) / gr;
  for (int i = 0; i < max_iter && std::abs(b - a) > tol; ++i) {
    if (f(c) >= f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - (b - a) / gr;
    d = a + (b - a) / gr;
  }
  return (a + b) / 2.0;
}

// Root of f on [lo, hi] assuming f(lo) and f(hi) bracket zero.
inline std::optional<double> bisect(const std::function<double(double)>& f, double lo,
                                    double hi, double tol = 1e-9, int max_iter = 200) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace hybridlink
