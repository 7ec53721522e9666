#include "dicke/operators.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

Eigen::Index checked_dimension(int atoms, int n_max, DimensionGuard guard) {
  if (atoms < 1) throw std::invalid_argument("atom count must be >= 1");
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (atoms > 30) throw DimensionError("atom count too large for a dense register");
  const Eigen::Index dim = (Eigen::Index{1} << atoms) * (n_max + 1);
  if (dim > guard.max_dimension) {
    throw DimensionError("dimension 2^" + std::to_string(atoms) + "*(" + std::to_string(n_max) +
                         "+1) = " + std::to_string(dim) + " exceeds limit " +
                         std::to_string(guard.max_dimension));
  }
  return dim;
}

// Adds `amp` at (to, from) and its conjugate at (from, to).
void add_hermitian_pair(Matrix& h, Eigen::Index to, Eigen::Index from, double amp) {
  h(to, from) += amp;
  h(from, to) += amp;
}

}  // namespace

ModelParams::ModelParams(double omega0, double Omega, double g1, double g2)
    : omega0_(omega0), Omega_(Omega), g1_(g1), g2_(g2) {
  require_finite(omega0, "omega0");
  require_finite(Omega, "Omega");
  require_finite(g1, "g1");
  require_finite(g2, "g2");
  if (omega0 <= 0.0) throw std::invalid_argument("omega0 must be > 0");
  if (Omega <= 0.0) throw std::invalid_argument("Omega must be > 0");
  if (g1 < 0.0) throw std::invalid_argument("g1 must be >= 0");
  if (g2 < 0.0) throw std::invalid_argument("g2 must be >= 0");
}

ModelParams ModelParams::with(std::string_view name, double value) const {
  if (name == "omega0") return {value, Omega_, g1_, g2_};
  if (name == "Omega") return {omega0_, value, g1_, g2_};
  if (name == "g1") return {omega0_, Omega_, value, g2_};
  if (name == "g2") return {omega0_, Omega_, g1_, value};
  throw std::invalid_argument("unknown model parameter '" + std::string(name) + "'");
}

HermitianOperator::HermitianOperator(Matrix m, double tolerance) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw NotHermitianError("operator matrix must be square and non-empty");
  }
  const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tolerance) {
    throw NotHermitianError("matrix deviates from its adjoint by " + std::to_string(dev));
  }
}

BosonOps make_boson_ops(BosonSpace space) {
  if (space.n_max < 1) {
    throw std::invalid_argument("boson space needs n_max >= 1");
  }
  const Eigen::Index d = space.dimension();
  Matrix b = Matrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    b(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  Matrix bdag = b.adjoint();
  return {std::move(b), std::move(bdag)};
}

SpinOps make_spin_ops(QubitRegister reg, int site) {
  if (reg.atoms < 1 || reg.atoms > 30) throw std::invalid_argument("register needs 1..30 atoms");
  if (site < 0 || site >= reg.atoms) {
    throw std::invalid_argument("site index " + std::to_string(site) + " out of range [0, " +
                                std::to_string(reg.atoms) + ")");
  }
  const Eigen::Index d = reg.dimension();
  const Eigen::Index bit = Eigen::Index{1} << site;
  SpinOps ops{Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
  for (Eigen::Index s = 0; s < d; ++s) {
    const bool up = (s & bit) != 0;
    ops.sz(s, s) = up ? 1.0 : -1.0;
    if (!up) ops.splus(s | bit, s) = 1.0;
  }
  ops.sminus = ops.splus.adjoint();
  return ops;
}

Matrix embed_register_op(const Matrix& reg_op, int n_max) {
  return Eigen::kroneckerProduct(reg_op, Matrix::Identity(n_max + 1, n_max + 1)).eval();
}

Matrix embed_boson_op(const Matrix& fock_op, int atoms) {
  const Eigen::Index d = Eigen::Index{1} << atoms;
  return Eigen::kroneckerProduct(Matrix::Identity(d, d), fock_op).eval();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

std::string_view to_string(HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::GeneralizedDicke: return "generalized-dicke";
    case HamiltonianKind::DickeRWA: return "dicke-rwa";
    case HamiltonianKind::JaynesCummings: return "jaynes-cummings";
    case HamiltonianKind::TwoPhotonJC: return "two-photon-jc";
    case HamiltonianKind::IntensityDependentJC: return "intensity-dependent-jc";
    case HamiltonianKind::IntensityDependentDicke: return "intensity-dependent-dicke";
  }
  return "unknown";
}

HermitianOperator build_hamiltonian(HamiltonianKind kind, const ModelParams& params, int atoms,
                                    int n_max, DimensionGuard guard) {
  const bool single_atom_kind = kind == HamiltonianKind::JaynesCummings ||
                                kind == HamiltonianKind::TwoPhotonJC ||
                                kind == HamiltonianKind::IntensityDependentJC;
  if (single_atom_kind && atoms != 1) {
    throw std::invalid_argument(std::string(to_string(kind)) + " is defined for a single atom");
  }
  if (n_max < 2) throw std::invalid_argument("n_max must be >= 2 for Hamiltonian builders");
  const Eigen::Index dim = checked_dimension(atoms, n_max, guard);
  const Eigen::Index fock = n_max + 1;
  const Eigen::Index registers = Eigen::Index{1} << atoms;
  const double scale = single_atom_kind ? 1.0 : 1.0 / std::sqrt(static_cast<double>(atoms));

  // Coupling of each raising process sigma^+ paired with a given boson factor:
  //   rotating        b sigma^+        : n -> n-1, amplitude sqrt(n)
  //   counter-rotating b^dag sigma^+   : n -> n+1, amplitude sqrt(n+1)
  //   two-photon      b^2 sigma^+      : n -> n-2, amplitude sqrt(n(n-1))
  //   intensity       b sqrt(n) sigma^+: n -> n-1, amplitude n
  double g_rot = 0.0;
  double g_counter = 0.0;
  double g_two_photon = 0.0;
  double g_intensity = 0.0;
  switch (kind) {
    case HamiltonianKind::GeneralizedDicke:
      g_rot = params.g1();
      g_counter = params.g2();
      break;
    case HamiltonianKind::DickeRWA:
    case HamiltonianKind::JaynesCummings:
      g_rot = params.g1();
      break;
    case HamiltonianKind::TwoPhotonJC:
      g_two_photon = params.g1();
      break;
    case HamiltonianKind::IntensityDependentJC:
    case HamiltonianKind::IntensityDependentDicke:
      g_intensity = params.g1();
      break;
  }
  g_rot *= scale;
  g_counter *= scale;
  g_two_photon *= scale;
  g_intensity *= scale;

  Matrix h = Matrix::Zero(dim, dim);
  for (Eigen::Index reg = 0; reg < registers; ++reg) {
    const int ups = std::popcount(static_cast<unsigned long long>(reg));
    const double atomic = 0.5 * params.Omega() * (2.0 * ups - atoms);
    for (Eigen::Index n = 0; n < fock; ++n) {
      const Eigen::Index from = reg * fock + n;
      h(from, from) = params.omega0() * static_cast<double>(n) + atomic;
      for (int site = 0; site < atoms; ++site) {
        const Eigen::Index bit = Eigen::Index{1} << site;
        if (reg & bit) continue;
        const Eigen::Index up = (reg | bit) * fock;
        const double dn = static_cast<double>(n);
        if (g_rot != 0.0 && n >= 1) add_hermitian_pair(h, up + n - 1, from, g_rot * std::sqrt(dn));
        if (g_counter != 0.0 && n + 1 < fock) {
          add_hermitian_pair(h, up + n + 1, from, g_counter * std::sqrt(dn + 1.0));
        }
        if (g_two_photon != 0.0 && n >= 2) {
          add_hermitian_pair(h, up + n - 2, from, g_two_photon * std::sqrt(dn * (dn - 1.0)));
        }
        if (g_intensity != 0.0 && n >= 1) add_hermitian_pair(h, up + n - 1, from, g_intensity * dn);
      }
    }
  }
  return HermitianOperator(std::move(h));
}

namespace {

template <class DiagonalFn>
HermitianOperator diagonal_operator(int atoms, int n_max, DimensionGuard guard, DiagonalFn fn) {
  const Eigen::Index dim = checked_dimension(atoms, n_max, guard);
  const Eigen::Index fock = n_max + 1;
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto reg = static_cast<unsigned long long>(i / fock);
    m(i, i) = fn(std::popcount(reg), static_cast<int>(i % fock));
  }
  return HermitianOperator(std::move(m));
}

}  // namespace

HermitianOperator parity_operator(int atoms, int n_max, DimensionGuard guard) {
  return diagonal_operator(atoms, n_max, guard,
                           [](int ups, int n) { return ((ups + n) % 2 == 0) ? 1.0 : -1.0; });
}

HermitianOperator excitation_number_operator(int atoms, int n_max, DimensionGuard guard) {
  return diagonal_operator(atoms, n_max, guard,
                           [](int ups, int n) { return static_cast<double>(ups + n); });
}

HermitianOperator photon_number_operator(int atoms, int n_max, DimensionGuard guard) {
  return diagonal_operator(atoms, n_max, guard, [](int, int n) { return static_cast<double>(n); });
}

}  // namespace dicke
