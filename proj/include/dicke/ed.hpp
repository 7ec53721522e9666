#pragma once

// Exact-diagonalization oracle for small atom numbers.

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dicke/operators.hpp"

namespace dicke {

struct EDResult {
  std::vector<double> eigenvalues;             // ascending
  double Z = 0.0;                              // sum exp(-beta * eigenvalue)
  double log_Z = 0.0;
  std::map<std::string, double> observables;   // thermal expectations
  int n_max_used = -1;
  double truncation_error_estimate = 0.0;      // thermal population of |n_max>
};

using NamedObservable = std::pair<std::string, HermitianOperator>;

// Dense eigendecomposition with Boltzmann weights shifted by the ground energy.
// When n_max >= 0 the Hilbert space is read as (register) x (Fock 0..n_max)
// and the population of the top Fock level is reported.
EDResult thermal_solve(const HermitianOperator& H, double beta,
                       const std::vector<NamedObservable>& observables = {}, int n_max = -1,
                       DimensionGuard guard = {});

// Permutation-symmetric sectors of the generalized Dicke model. Sector j has
// multiplicity C(N, N/2 - j) - C(N, N/2 - j - 1) and basis |j, m> x |n> with
// index (m + j) * (n_max + 1) + n.
struct SpinSector {
  double j;
  long multiplicity;
};
std::vector<SpinSector> spin_sectors(int atoms);

HermitianOperator build_sector_hamiltonian(const ModelParams& params, int atoms, double j, int n_max);

struct CollectiveThermal {
  double log_Z = 0.0;
  double photons = 0.0;                        // <b^dag b>
  double top_level_population = 0.0;           // population of |n_max>
};

CollectiveThermal collective_thermal(const ModelParams& params, int atoms, int n_max, double beta);

struct TruncationPolicy {
  std::vector<int> ladder{8, 16, 32, 64, 128};
  double tolerance = 1e-6;
};

// Lower rung of the first consecutive ladder pair whose <b^dag b> differs by
// less than target_tol. Cached per (params, N, beta, ladder, tol). Throws
// ConvergenceError when the ladder is exhausted.
int truncation_convergence(const ModelParams& params, int atoms, double beta, double target_tol,
                           const std::vector<int>& ladder = TruncationPolicy{}.ladder);

struct PhotonDensityRow {
  int atoms;
  int n_max;
  double density;                              // <b^dag b> / N
  double truncation_error;
};

std::vector<PhotonDensityRow> photon_density_curve(const ModelParams& params, double beta,
                                                   const std::vector<int>& atom_counts,
                                                   TruncationPolicy policy = {}, int max_atoms = 8);

}  // namespace dicke
