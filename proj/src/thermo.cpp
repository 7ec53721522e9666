#include "dicke/thermo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "bracket.hpp"
#include "dicke/errors.hpp"

namespace dicke {

namespace {

double coupling_sum_squared(const ModelParams& p) {
  const double g = p.g1() + p.g2();
  return g * g;
}

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be finite and > 0");
  }
}

}  // namespace

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Normal: return "normal";
    case Phase::Critical: return "critical";
    case Phase::Superradiant: return "superradiant";
  }
  return "unknown";
}

double convergence_bound(const ModelParams& params, double beta) {
  require_beta(beta);
  return coupling_sum_squared(params) / (params.Omega() * params.omega0()) *
         std::tanh(0.25 * beta * params.Omega());
}

Phase classify_bound(double bound) {
  if (std::abs(bound - 1.0) < kCriticalTolerance) return Phase::Critical;
  return bound < 1.0 ? Phase::Normal : Phase::Superradiant;
}

std::optional<double> critical_beta(const ModelParams& params) {
  const double G = coupling_sum_squared(params);
  const double ratio = params.Omega() * params.omega0() / G;
  if (!(ratio < 1.0)) return std::nullopt;
  return 4.0 / params.Omega() * std::atanh(ratio);
}

std::optional<double> critical_beta_from_sums(const ModelParams& params, SumOptions options) {
  auto excess = [&](double beta) {
    const KernelSums k = a0_c0_sum(0, params, beta, options);
    return k.a0.value + 2.0 * k.c0.value - 1.0;
  };
  const double ceiling = 1e8 / params.Omega();
  double lo = 1e-6 / params.Omega();
  double flo = excess(lo);
  if (flo >= 0.0) {
    throw ConvergenceError(fmt::format("bound already >= 1 at beta = {:.3g}", lo));
  }
  double hi = 1.0 / params.Omega();
  double fhi = excess(hi);
  while (fhi <= 0.0) {
    if (hi >= ceiling) return std::nullopt;
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = excess(hi);
  }
  return detail::solve_bracket(excess, lo, hi, flo, fhi, "critical beta from finite sums", 48);
}

double quantum_critical_gap(const ModelParams& params) {
  return params.g1() + params.g2() - std::sqrt(params.omega0() * params.Omega());
}

SeriesEstimate log_partition_ratio(const ModelParams& params, double beta, SumOptions options) {
  require_beta(beta);
  if (options.cutoff < 10) throw std::invalid_argument("cutoff must be >= 10");
  const double bound = convergence_bound(params, beta);
  if (!(bound < 1.0 - kCriticalTolerance)) {
    throw DomainError(fmt::format(
        "log partition ratio needs the normal phase; a0(0)+2c0(0) = {:.17g} at beta = {:.17g}",
        bound, beta));
  }
  const double a_zero = kernel_a(0, params, beta).real();
  const double c_zero = kernel_c(0, params, beta);
  const double zero_arg = (1.0 - a_zero) * (1.0 - a_zero) - 4.0 * c_zero * c_zero;
  const double zero_term = -0.5 * std::log(zero_arg);

  auto term = [&](long n) {
    const std::complex<double> a = kernel_a(n, params, beta);
    const double c = kernel_c(n, params, beta);
    const double arg = std::norm(1.0 - a) - 4.0 * c * c;
    if (!(arg > 0.0)) {
      throw DomainError(fmt::format("Gaussian weight not positive at Matsubara index {}", n));
    }
    return std::log(arg);
  };
  auto partial = [&](long M) {
    double s = 0.5 * term(M);
    for (long n = M - 1; n >= 1; --n) s += term(n);
    return zero_term - s;
  };
  const double scale = std::max(params.Omega(), params.omega0());
  const long need = static_cast<long>(std::min(std::ceil(16.0 * beta * scale / (2.0 * std::numbers::pi)), 1e7));
  return richardson(partial, std::max(options.cutoff, need), {1, 3, 5}, options.tolerance);
}

double static_potential(double rho, const ModelParams& params, double beta, SumOptions options) {
  require_beta(beta);
  if (rho < 0.0) throw std::invalid_argument("photon density must be >= 0");
  const double half = 0.5 * params.Omega();
  const double gap = std::sqrt(half * half + coupling_sum_squared(params) * rho);
  return -beta * params.omega0() * rho + log_ratio_sum(gap, half, beta, options).value;
}

double static_potential_slope(double rho, const ModelParams& params, double beta,
                              SumOptions options) {
  require_beta(beta);
  if (rho < 0.0) throw std::invalid_argument("photon density must be >= 0");
  const double G = coupling_sum_squared(params);
  const double half = 0.5 * params.Omega();
  const double gap = std::sqrt(half * half + G * rho);
  return -beta * params.omega0() + G * lorentzian_sum(gap, beta, options).value;
}

OrderParameter solve_order_parameter(const ModelParams& params, double beta, SumOptions options) {
  OrderParameter out;
  const double bound = convergence_bound(params, beta);
  if (bound <= 1.0 + kCriticalTolerance) return out;

  const double G = coupling_sum_squared(params);
  const double half = 0.5 * params.Omega();
  // sum_p 1/(p^2+E^2) < beta/(2E), so the slope is negative once E > G/(2 omega0).
  const double gap_hi = 1.01 * G / (2.0 * params.omega0());
  const double rho_hi = (gap_hi * gap_hi - half * half) / G;
  auto slope = [&](double rho) { return static_potential_slope(rho, params, beta, options); };
  const double s_lo = slope(0.0);
  const double s_hi = slope(rho_hi);
  out.bracket_lo = 0.0;
  out.bracket_hi = rho_hi;
  out.rho = detail::solve_bracket(slope, 0.0, rho_hi, s_lo, s_hi, "order parameter maximizer");
  out.gap = std::sqrt(half * half + G * out.rho);
  out.slope_residual = slope(out.rho);
  return out;
}

double order_parameter(const ModelParams& params, double beta, SumOptions options) {
  return solve_order_parameter(params, beta, options).rho;
}

PhasePoint evaluate_phase_point(const ModelParams& params, double beta, SumOptions options) {
  PhasePoint pt{params, beta};
  pt.bound = convergence_bound(params, beta);
  pt.phase = classify_bound(pt.bound);
  pt.beta_c = critical_beta(params);
  pt.a0 = kernel_a(0, params, beta).real();
  pt.c0 = kernel_c(0, params, beta);
  if (pt.phase == Phase::Superradiant) pt.rho = order_parameter(params, beta, options);
  return pt;
}

std::vector<PhasePoint> phase_scan(const std::vector<ModelParams>& params_grid,
                                   const std::vector<double>& beta_grid, int workers,
                                   SumOptions options) {
  if (params_grid.empty() || beta_grid.empty()) {
    throw std::invalid_argument("phase scan grids must be non-empty");
  }
  const std::size_t total = params_grid.size() * beta_grid.size();
  std::vector<PhasePoint> rows;
  rows.reserve(total);
  for (const ModelParams& p : params_grid) {
    for (double beta : beta_grid) rows.push_back(PhasePoint{p, beta});
  }

  auto evaluate = [&](std::size_t i) {
    try {
      rows[i] = evaluate_phase_point(rows[i].params, rows[i].beta, options);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  };

  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), total);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < total; ++i) evaluate(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < total; i = next++) evaluate(i);
    });
  }
  pool.clear();
  return rows;
}

}  // namespace dicke
