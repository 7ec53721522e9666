#pragma once

// Matsubara grids, frequency sums with tail control, and the coupling
// kernels a(omega), c(omega) of the generalized Dicke model together with
// their continuation to real energies.
//
// Throughout, t = tanh(beta * Omega / 4).

#include <complex>
#include <functional>
#include <vector>

#include "dicke/operators.hpp"

namespace dicke {

enum class Statistics { Bosonic, Fermionic };

// Bosonic: omega_n = 2 pi n / beta, n in [-M, M].
// Fermionic: p_n = (2n + 1) pi / beta, n in [-M, M - 1] (symmetric under n -> -n-1).
struct MatsubaraGrid {
  double beta;
  Statistics statistics;
  long cutoff;

  MatsubaraGrid(double beta, Statistics statistics, long cutoff);

  double frequency(long n) const;
  long first_index() const { return -cutoff; }
  long last_index() const { return statistics == Statistics::Bosonic ? cutoff : cutoff - 1; }
  std::vector<double> frequencies() const;
};

struct SumOptions {
  long cutoff = 64;
  double tolerance = 1e-10;
};

struct SeriesEstimate {
  double value = 0.0;               // extrapolated estimate of the infinite sum
  double partial_sum = 0.0;         // plain truncated sum at the largest cutoff used
  double tail_bound = 0.0;          // |value - partial_sum|
  double extrapolation_error = 0.0; // spread between the last two extrapolation levels
  long cutoff = 0;                  // largest cutoff used
  bool converged = false;           // extrapolation_error within tolerance
};

// Richardson table over cutoffs M, 2M, 4M, ... given the truncation error
// exponents of the sequence (error ~ sum_k c_k M^{-exponents[k]}).
SeriesEstimate richardson(const std::function<double(long)>& partial, long base_cutoff,
                          const std::vector<int>& exponents, double tolerance);

// sum over all fermionic p_n of 1/(p_n^2 + x^2).
SeriesEstimate lorentzian_sum(double x, double beta, SumOptions options = {});
// (beta / (2x)) tanh(beta x / 2).
double lorentzian_sum_exact(double x, double beta);

// sum over all fermionic p_n of ln((p_n^2 + e^2) / (p_n^2 + f^2)).
SeriesEstimate log_ratio_sum(double e, double f, double beta, SumOptions options = {});

// sum over fermionic q, with p = q + omega_m, of
// 1 / sqrt((Omega^2/4 + q^2)(Omega^2/4 + p^2)).
SeriesEstimate pair_product_sum(long m, double Omega, double beta, SumOptions options = {});

struct KernelSums {
  SeriesEstimate a0;
  SeriesEstimate c0;
};

KernelSums a0_c0_sum(long m, const ModelParams& params, double beta, SumOptions options = {});

double tanh_factor(const ModelParams& params, double beta);

std::complex<double> kernel_a(long m, const ModelParams& params, double beta);
double kernel_c(long m, const ModelParams& params, double beta);

struct ContinuedKernels {
  double a_plus;                // a(E)
  double a_minus;               // a(-E)
  std::complex<double> c;       // principal branch of the square root
};

// Default pole epsilon: 1e-9 * max(Omega, omega0).
double default_pole_eps(const ModelParams& params);

// Throws PoleProximityError if E is within pole_eps of +-Omega or +-omega0.
// A negative pole_eps selects the default.
ContinuedKernels continue_kernels(double E, const ModelParams& params, double beta,
                                  double pole_eps = -1.0);

// (1 - a(E))(1 - a(-E)) - (2c(E))^2.
double dispersion_factored(double E, const ModelParams& params, double beta,
                           double pole_eps = -1.0);

// The same quantity written as 1 - {three-bracket expansion}; rational in E.
double dispersion_expanded(double E, const ModelParams& params, double beta,
                           double pole_eps = -1.0);

// Q(E^2) / (omega0^2 Omega^2), where Q is the pole-free numerator:
// dispersion_expanded = Q / ((omega0^2 - E^2)(Omega^2 - E^2)).
double dispersion_numerator(double E, const ModelParams& params, double beta);

// Coefficients of Q(s)/(omega0^2 Omega^2) = q0 + q1 s + q2 s^2, s = E^2.
struct NumeratorCoefficients {
  double q0, q1, q2;
};
NumeratorCoefficients dispersion_numerator_coefficients(const ModelParams& params, double beta);

}  // namespace dicke
