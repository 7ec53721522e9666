#pragma once

// Phase structure of the generalized Dicke model in the N -> infinity limit:
// transition temperature, convergence bound, Gaussian partition ratio and
// the condensate order parameter.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/matsubara.hpp"
#include "dicke/operators.hpp"

namespace dicke {

enum class Phase { Normal, Critical, Superradiant };

std::string_view to_string(Phase phase);

inline constexpr double kCriticalTolerance = 1e-9;

// (g1+g2)^2 / (Omega omega0) * tanh(beta Omega / 4); the value of a0(0) + 2 c0(0).
double convergence_bound(const ModelParams& params, double beta);

Phase classify_bound(double bound);

// (4 / Omega) atanh(Omega omega0 / (g1+g2)^2) when (g1+g2)^2 > omega0 Omega.
std::optional<double> critical_beta(const ModelParams& params);

// Root in beta of the finite-sum a0(0) + 2 c0(0) = 1, found without the closed form.
std::optional<double> critical_beta_from_sums(const ModelParams& params, SumOptions options = {});

// (g1 + g2) - sqrt(omega0 Omega).
double quantum_critical_gap(const ModelParams& params);

// ln(Z/Z0) = -1/2 ln[(1-a(0))^2 - 4c(0)^2] - sum_{n>=1} ln[|1-a(w_n)|^2 - 4c(w_n)^2].
// Throws DomainError unless convergence_bound < 1 - kCriticalTolerance.
SeriesEstimate log_partition_ratio(const ModelParams& params, double beta, SumOptions options = {});

// Per-atom static potential at photon density rho:
//   Phi(rho) = -beta omega0 rho + sum_p ln((p^2 + Omega^2/4 + G rho) / (p^2 + Omega^2/4)),
// with G = (g1+g2)^2 and p the fermionic frequencies.
double static_potential(double rho, const ModelParams& params, double beta, SumOptions options = {});
double static_potential_slope(double rho, const ModelParams& params, double beta,
                              SumOptions options = {});

struct OrderParameter {
  double rho = 0.0;           // photons per atom, pi x^2 / (beta omega0 N)
  double gap = 0.0;           // sqrt(Omega^2/4 + G rho)
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double slope_residual = 0.0;
};

OrderParameter solve_order_parameter(const ModelParams& params, double beta, SumOptions options = {});
double order_parameter(const ModelParams& params, double beta, SumOptions options = {});

struct PhasePoint {
  ModelParams params;
  double beta;
  double bound = 0.0;
  Phase phase = Phase::Normal;
  std::optional<double> beta_c;
  double rho = 0.0;
  double a0 = 0.0;            // a(0)
  double c0 = 0.0;            // c(0)
  std::string error;          // non-empty when evaluation of this node failed
};

PhasePoint evaluate_phase_point(const ModelParams& params, double beta, SumOptions options = {});

// Row-major over (params_grid, beta_grid). workers <= 0 selects one per hardware thread.
std::vector<PhasePoint> phase_scan(const std::vector<ModelParams>& params_grid,
                                   const std::vector<double>& beta_grid, int workers = 1,
                                   SumOptions options = {});

}  // namespace dicke
