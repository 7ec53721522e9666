#pragma once

// Auxiliary-fermion representation of the atoms. Each atom i carries two
// fermion modes, alpha_i (upper level) and beta_i (lower level), flattened
// as mode 2i and 2i+1. The per-site local index is n_alpha + 2*n_beta, so
// the four site states are |0,0>=0, |1,0>=1, |0,1>=2, |1,1>=3. The full
// space is (site N-1) ... (site 0) little-endian in base 4, tensored with the
// Fock space exactly as in operators.hpp:
//   index = (sum_i local_i * 4^i) * (n_max + 1) + n

#include <complex>
#include <vector>

#include "dicke/operators.hpp"

namespace dicke {

struct FermionSpace {
  int atoms;
  int n_max;

  Eigen::Index register_dimension() const { return Eigen::Index{1} << (2 * atoms); }
  Eigen::Index dimension() const { return register_dimension() * (n_max + 1); }
};

struct FermionGuard {
  int max_atoms = 3;
  Eigen::Index max_dimension = 4096;
};

// Jordan-Wigner annihilator of flattened mode `mode` on the fermion register
// only (no Fock factor).
Matrix fermion_annihilator(int atoms, int mode);

// sum_i (alpha_i^dag alpha_i + beta_i^dag beta_i), on the full space.
HermitianOperator fermion_number_operator(FermionSpace space);

// Diagonal 0/1 projector onto n_alpha,i + n_beta,i = 1 for every site.
HermitianOperator physical_projector(FermionSpace space);

// Indices of the physical states, in ascending order. Each maps to the spin
// basis state whose register bit i is n_alpha,i.
std::vector<Eigen::Index> physical_indices(FermionSpace space);

// Generalized Dicke Hamiltonian with sigma^z -> a^dag a - b^dag b and
// sigma^+ -> a^dag b on every site.
HermitianOperator build_fermion_dicke(const ModelParams& params, int atoms, int n_max,
                                      FermionGuard guard = {});

struct TraceIdentity {
  Complex phased_trace;       // i^N Tr exp(-beta H_F - i pi N_hat / 2), full space
  double physical_trace;      // Tr over the physical subspace of exp(-beta H_F)
  Complex unphysical_trace;   // i^N times the phased trace restricted to unphysical states
  double residual;            // |phased - physical| / |physical|
};

TraceIdentity evaluate_trace_identity(const ModelParams& params, int atoms, int n_max, double beta,
                                      FermionGuard guard = {});

double verify_trace_identity(const ModelParams& params, int atoms, int n_max, double beta,
                             FermionGuard guard = {});

// 1 / (i (2 pi / beta)(n + 1/2) - epsilon - i pi / (2 beta)).
Complex pf_green_function(long n, double epsilon, double beta);

}  // namespace dicke
