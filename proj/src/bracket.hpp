#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>
#include <fmt/format.h>

#include "dicke/errors.hpp"

namespace dicke::detail {

// Root of f on [lo, hi] given f(lo) and f(hi) of opposite sign.
template <class F>
double solve_bracket(F f, double lo, double hi, double flo, double fhi, const char* what,
                     int bits = 52, std::uintmax_t max_iter = 200) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw ConvergenceError(fmt::format("{}: no sign change on [{:.17g}, {:.17g}] (f = {:.3g}, {:.3g})",
                                       what, lo, hi, flo, fhi));
  }
  std::uintmax_t iters = max_iter;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(bits), iters);
  if (iters >= max_iter) {
    throw ConvergenceError(fmt::format("{}: bracket [{:.17g}, {:.17g}] not resolved in {} iterations",
                                       what, a, b, max_iter));
  }
  const double fa = f(a);
  const double fb = f(b);
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

template <class F>
double solve_bracket(F f, double lo, double hi, const char* what, int bits = 52) {
  return solve_bracket(f, lo, hi, f(lo), f(hi), what, bits);
}

}  // namespace dicke::detail
