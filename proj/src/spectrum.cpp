#include "dicke/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "bracket.hpp"
#include "dicke/errors.hpp"
#include "dicke/matsubara.hpp"
#include "dicke/thermo.hpp"

namespace dicke {

double dispersion_residual(double E, const ModelParams& params, double beta, double pole_eps) {
  if (!(E >= 0.0)) throw std::invalid_argument("dispersion energy must be >= 0");
  return dispersion_expanded(E, params, beta, pole_eps);
}

std::vector<double> SpectrumResult::energies() const {
  std::vector<double> out;
  for (const ModeRoot& r : roots) out.push_back(r.energy);
  return out;
}

SpectrumResult collective_modes(const ModelParams& params, double beta, SpectrumOptions options) {
  if (!(params.g1() + params.g2() > 0.0)) {
    throw std::invalid_argument("collective modes need g1 + g2 > 0");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and > 0");
  if (options.samples < 2) throw std::invalid_argument("need at least 2 samples per interval");
  const double pole_eps = options.pole_eps < 0.0 ? default_pole_eps(params) : options.pole_eps;

  const double W = params.Omega();
  const double w0 = params.omega0();
  const double scale = std::max(W, w0);
  const NumeratorCoefficients q = dispersion_numerator_coefficients(params, beta);
  auto Q = [&](double E) { return dispersion_numerator(E, params, beta); };

  SpectrumResult result{params, beta};
  auto at_pole = [&](double E) {
    const double d = std::min(std::abs(E - W), std::abs(E - w0));
    return d < std::max(pole_eps, options.dedup * scale);
  };

  if (std::abs(q.q0) < options.zero_tolerance) {
    const double t = tanh_factor(params, beta);
    const double u = t / (w0 * W);
    const double sum2 = (params.g1() + params.g2()) * (params.g1() + params.g2());
    const double diff2 = (params.g1() - params.g2()) * (params.g1() - params.g2());
    ModeRoot zero{0.0, q.q0, {-scale / options.samples, scale / options.samples}};
    zero.label = std::abs(sum2 * u - 1.0) <= std::abs(diff2 * u - 1.0) ? "goldstone" : "secondary branch";
    if (std::abs(q.q1) * scale * scale < 1e-9) zero.multiplicity = 2;
    result.roots.push_back(zero);
  }

  const double lo = std::min(W, w0);
  const double hi = std::max(W, w0);
  std::vector<Bracket> intervals{{0.0, lo}};
  if (hi > lo) intervals.push_back({lo, hi});
  intervals.push_back({hi, 3.0 * (W + w0)});

  std::vector<ModeRoot> found;
  for (const Bracket& iv : intervals) {
    IntervalScan scan{iv};
    const double h = (iv.hi - iv.lo) / options.samples;
    double e_prev = iv.lo;
    double q_prev = Q(e_prev);
    for (int k = 1; k <= options.samples; ++k) {
      const double e = (k == options.samples) ? iv.hi : iv.lo + k * h;
      const double qe = Q(e);
      if (q_prev == 0.0 && e_prev > 0.0) {
        found.push_back({e_prev, 0.0, {std::max(0.0, e_prev - h), e}});
        ++scan.roots;
      } else if ((q_prev < 0.0 && qe > 0.0) || (q_prev > 0.0 && qe < 0.0)) {
        const double r = detail::solve_bracket(Q, e_prev, e, q_prev, qe, "dispersion root");
        found.push_back({r, Q(r), {e_prev, e}});
        ++scan.roots;
      }
      e_prev = e;
      q_prev = qe;
    }
    if (q_prev == 0.0) {
      found.push_back({e_prev, 0.0, {e_prev - h, e_prev + h}});
      ++scan.roots;
    }
    if (scan.roots == 0) scan.note = "no root in bracket";
    result.intervals.push_back(scan);
  }

  std::sort(found.begin(), found.end(),
            [](const ModeRoot& a, const ModeRoot& b) { return a.energy < b.energy; });
  for (ModeRoot& r : found) {
    const bool duplicate = std::any_of(result.roots.begin(), result.roots.end(), [&](const ModeRoot& k) {
      return std::abs(k.energy - r.energy) < options.dedup;
    });
    if (duplicate) continue;
    r.label = "mode";
    result.roots.push_back(r);
  }
  for (ModeRoot& r : result.roots) r.at_pole = r.energy > 0.0 && at_pole(r.energy);
  std::sort(result.roots.begin(), result.roots.end(),
            [](const ModeRoot& a, const ModeRoot& b) { return a.energy < b.energy; });
  return result;
}

double goldstone_residual(const ModelParams& params) {
  const auto beta_c = critical_beta(params);
  if (!beta_c) {
    throw DomainError(fmt::format("no finite critical temperature: (g1+g2)^2 = {:.17g} <= omega0*Omega = {:.17g}",
                                  (params.g1() + params.g2()) * (params.g1() + params.g2()),
                                  params.omega0() * params.Omega()));
  }
  return dispersion_residual(0.0, params, *beta_c);
}

}  // namespace dicke
