#pragma once

// Finite-dimensional operator algebra for one bosonic mode coupled to N
// two-level atoms, and the Hamiltonian builders of the spin-boson family.
//
// Basis convention (shared by every builder in the library):
//   |reg, n>  ->  index = reg * (n_max + 1) + n
// where `reg` is the qubit register read little-endian (bit j is atom j,
// bit value 1 = upper level, sigma^z = +1) and n = 0..n_max is the Fock
// occupation. Energies are measured from the per-atom midpoint, so a free
// atom contributes (Omega/2) sigma^z.

#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace dicke {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// omega0: mode frequency, Omega: atomic gap, g1: rotating coupling,
// g2: counter-rotating coupling. Units with hbar = k_B = 1.
class ModelParams {
 public:
  ModelParams(double omega0, double Omega, double g1, double g2);

  double omega0() const { return omega0_; }
  double Omega() const { return Omega_; }
  double g1() const { return g1_; }
  double g2() const { return g2_; }

  // Copy with one field replaced; `name` is one of omega0, Omega, g1, g2.
  ModelParams with(std::string_view name, double value) const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double omega0_;
  double Omega_;
  double g1_;
  double g2_;
};

struct BosonSpace {
  int n_max;
  Eigen::Index dimension() const { return n_max + 1; }
};

struct QubitRegister {
  int atoms;
  Eigen::Index dimension() const { return Eigen::Index{1} << atoms; }
};

struct DimensionGuard {
  Eigen::Index max_dimension = 4096;
};

// Dense operator checked to equal its conjugate transpose (1e-12 absolute,
// elementwise) at construction.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m, double tolerance = 1e-12);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dimension() const { return m_.rows(); }

 private:
  Matrix m_;
};

struct BosonOps {
  Matrix annihilator;
  Matrix creator;
};

struct SpinOps {
  Matrix sz;
  Matrix splus;
  Matrix sminus;
};

BosonOps make_boson_ops(BosonSpace space);
SpinOps make_spin_ops(QubitRegister reg, int site);

// A (x) I_fock and I_reg (x) B on the full tensor-product space.
Matrix embed_register_op(const Matrix& reg_op, int n_max);
Matrix embed_boson_op(const Matrix& fock_op, int atoms);

Matrix commutator(const Matrix& a, const Matrix& b);

enum class HamiltonianKind {
  GeneralizedDicke,
  DickeRWA,
  JaynesCummings,
  TwoPhotonJC,
  IntensityDependentJC,
  IntensityDependentDicke,
};

std::string_view to_string(HamiltonianKind kind);

// Single-coupling kinds (everything except GeneralizedDicke) take their
// coupling constant g from params.g1(); g2 is ignored for them.
HermitianOperator build_hamiltonian(HamiltonianKind kind, const ModelParams& params,
                                    int atoms, int n_max, DimensionGuard guard = {});

// exp[i pi (b^dag b + sum_j (sigma^z_j + 1)/2)], diagonal in the product basis.
HermitianOperator parity_operator(int atoms, int n_max, DimensionGuard guard = {});

// b^dag b + sum_j (sigma^z_j + 1)/2.
HermitianOperator excitation_number_operator(int atoms, int n_max, DimensionGuard guard = {});

HermitianOperator photon_number_operator(int atoms, int n_max, DimensionGuard guard = {});

}  // namespace dicke
