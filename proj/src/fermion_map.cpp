#include "dicke/fermion_map.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

void check_space(FermionSpace space, FermionGuard guard) {
  if (space.atoms < 1) throw std::invalid_argument("atom count must be >= 1");
  if (space.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (space.atoms > guard.max_atoms) {
    throw DimensionError("fermion map limited to " + std::to_string(guard.max_atoms) +
                         " atoms, got " + std::to_string(space.atoms));
  }
  if (space.dimension() > guard.max_dimension) {
    throw DimensionError("fermion space dimension " + std::to_string(space.dimension()) +
                         " exceeds limit " + std::to_string(guard.max_dimension));
  }
}

bool is_physical_register(Eigen::Index reg, int atoms) {
  for (int i = 0; i < atoms; ++i) {
    const auto local = (reg >> (2 * i)) & 3;
    if (local != 1 && local != 2) return false;
  }
  return true;
}

}  // namespace

Matrix fermion_annihilator(int atoms, int mode) {
  if (atoms < 1 || atoms > 15) throw std::invalid_argument("fermion register needs 1..15 atoms");
  if (mode < 0 || mode >= 2 * atoms) {
    throw std::invalid_argument("fermion mode " + std::to_string(mode) + " out of range");
  }
  const Eigen::Index d = Eigen::Index{1} << (2 * atoms);
  const Eigen::Index bit = Eigen::Index{1} << mode;
  Matrix c = Matrix::Zero(d, d);
  for (Eigen::Index s = 0; s < d; ++s) {
    if (!(s & bit)) continue;
    const int below = std::popcount(static_cast<unsigned long long>(s & (bit - 1)));
    c(s ^ bit, s) = (below % 2 == 0) ? 1.0 : -1.0;
  }
  return c;
}

HermitianOperator fermion_number_operator(FermionSpace space) {
  check_space(space, {.max_atoms = 15, .max_dimension = space.dimension()});
  const Eigen::Index fock = space.n_max + 1;
  Matrix m = Matrix::Zero(space.dimension(), space.dimension());
  for (Eigen::Index i = 0; i < space.dimension(); ++i) {
    m(i, i) = std::popcount(static_cast<unsigned long long>(i / fock));
  }
  return HermitianOperator(std::move(m));
}

std::vector<Eigen::Index> physical_indices(FermionSpace space) {
  const Eigen::Index fock = space.n_max + 1;
  std::vector<Eigen::Index> out;
  for (Eigen::Index reg = 0; reg < space.register_dimension(); ++reg) {
    if (!is_physical_register(reg, space.atoms)) continue;
    for (Eigen::Index n = 0; n < fock; ++n) out.push_back(reg * fock + n);
  }
  return out;
}

HermitianOperator physical_projector(FermionSpace space) {
  check_space(space, {.max_atoms = 15, .max_dimension = space.dimension()});
  Matrix m = Matrix::Zero(space.dimension(), space.dimension());
  for (Eigen::Index i : physical_indices(space)) m(i, i) = 1.0;
  return HermitianOperator(std::move(m));
}

HermitianOperator build_fermion_dicke(const ModelParams& params, int atoms, int n_max,
                                      FermionGuard guard) {
  const FermionSpace space{atoms, n_max};
  if (n_max < 2) throw std::invalid_argument("n_max must be >= 2 for Hamiltonian builders");
  check_space(space, guard);

  const Eigen::Index fock = n_max + 1;
  const Eigen::Index regs = space.register_dimension();
  const BosonOps bos = make_boson_ops({n_max});
  const Matrix id_fock = Matrix::Identity(fock, fock);
  const Matrix id_reg = Matrix::Identity(regs, regs);
  const double scale = 1.0 / std::sqrt(static_cast<double>(atoms));

  Matrix sz_sum = Matrix::Zero(regs, regs);
  Matrix lower_sum = Matrix::Zero(regs, regs);  // sum_i beta_i^dag alpha_i
  for (int i = 0; i < atoms; ++i) {
    const Matrix a = fermion_annihilator(atoms, 2 * i);
    const Matrix b = fermion_annihilator(atoms, 2 * i + 1);
    sz_sum += a.adjoint() * a - b.adjoint() * b;
    lower_sum += b.adjoint() * a;
  }
  const Matrix raise_sum = lower_sum.adjoint();

  Matrix h = params.omega0() * Eigen::kroneckerProduct(id_reg, Matrix(bos.creator * bos.annihilator)).eval();
  h += 0.5 * params.Omega() * Eigen::kroneckerProduct(sz_sum, id_fock).eval();
  h += params.g1() * scale *
       (Eigen::kroneckerProduct(raise_sum, bos.annihilator).eval() +
        Eigen::kroneckerProduct(lower_sum, bos.creator).eval());
  h += params.g2() * scale *
       (Eigen::kroneckerProduct(raise_sum, bos.creator).eval() +
        Eigen::kroneckerProduct(lower_sum, bos.annihilator).eval());
  return HermitianOperator(std::move(h));
}

TraceIdentity evaluate_trace_identity(const ModelParams& params, int atoms, int n_max, double beta,
                                      FermionGuard guard) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be > 0");
  const FermionSpace space{atoms, n_max};
  const HermitianOperator h = build_fermion_dicke(params, atoms, n_max, guard);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw ConvergenceError("eigensolver failed on H_F");

  const Eigen::VectorXd& evals = solver.eigenvalues();
  const double shift = evals.minCoeff();
  const Eigen::VectorXd weights = (-beta * (evals.array() - shift)).exp();
  const Matrix& v = solver.eigenvectors();
  // Diagonal of exp(-beta (H - shift)) in the occupation basis.
  const Eigen::VectorXd diag = (v.cwiseAbs2() * weights).eval();

  const Eigen::Index fock = n_max + 1;
  const Complex i_pow_n = std::pow(Complex(0.0, 1.0), atoms);
  Complex phased{0.0, 0.0};
  Complex unphysical{0.0, 0.0};
  double physical = 0.0;
  for (Eigen::Index k = 0; k < space.dimension(); ++k) {
    const Eigen::Index reg = k / fock;
    const int occupation = std::popcount(static_cast<unsigned long long>(reg));
    const Complex phase = std::polar(1.0, -0.5 * std::numbers::pi * occupation);
    const Complex term = diag(k) * phase;
    phased += term;
    if (is_physical_register(reg, atoms)) {
      physical += diag(k);
    } else {
      unphysical += term;
    }
  }
  const double rescale = std::exp(-beta * shift);
  TraceIdentity out;
  out.phased_trace = i_pow_n * phased * rescale;
  out.physical_trace = physical * rescale;
  out.unphysical_trace = i_pow_n * unphysical * rescale;
  out.residual = std::abs(i_pow_n * phased - physical) / std::abs(physical);
  return out;
}

double verify_trace_identity(const ModelParams& params, int atoms, int n_max, double beta,
                             FermionGuard guard) {
  return evaluate_trace_identity(params, atoms, n_max, beta, guard).residual;
}

Complex pf_green_function(long n, double epsilon, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  const double p = 2.0 * std::numbers::pi / beta * (static_cast<double>(n) + 0.5);
  return 1.0 / Complex(-epsilon, p - std::numbers::pi / (2.0 * beta));
}

}  // namespace dicke
