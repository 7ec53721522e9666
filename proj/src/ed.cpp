#include "dicke/ed.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and > 0");
}

}  // namespace

EDResult thermal_solve(const HermitianOperator& H, double beta,
                       const std::vector<NamedObservable>& observables, int n_max,
                       DimensionGuard guard) {
  require_beta(beta);
  const Eigen::Index dim = H.dimension();
  if (dim > guard.max_dimension) {
    throw DimensionError(fmt::format("dimension {} exceeds limit {}", dim, guard.max_dimension));
  }
  if (n_max >= 0 && dim % (n_max + 1) != 0) {
    throw std::invalid_argument("Hilbert space dimension is not a multiple of n_max + 1");
  }
  for (const auto& [name, op] : observables) {
    if (op.dimension() != dim) throw DimensionError("observable '" + name + "' has wrong dimension");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(H.matrix());
  if (solver.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver failed");
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const Matrix& v = solver.eigenvectors();

  const double ground = evals(0);
  const Eigen::VectorXd weights = (-beta * (evals.array() - ground)).exp();
  const double z_shifted = weights.sum();

  EDResult out;
  out.eigenvalues.assign(evals.data(), evals.data() + evals.size());
  out.log_Z = std::log(z_shifted) - beta * ground;
  out.Z = std::exp(out.log_Z);
  for (const auto& [name, op] : observables) {
    const Eigen::VectorXd diag = (v.adjoint() * op.matrix() * v).diagonal().real();
    out.observables[name] = weights.dot(diag) / z_shifted;
  }
  if (n_max >= 0) {
    out.n_max_used = n_max;
    const Eigen::Index fock = n_max + 1;
    double top = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (k % fock != n_max) continue;
      top += weights.dot(v.row(k).cwiseAbs2().transpose());
    }
    out.truncation_error_estimate = top / z_shifted;
  }
  return out;
}

std::vector<SpinSector> spin_sectors(int atoms) {
  if (atoms < 1) throw std::invalid_argument("atom count must be >= 1");
  std::vector<SpinSector> out;
  for (int k = 0; 2 * k <= atoms; ++k) {
    out.push_back({0.5 * atoms - k, binomial(atoms, k) - binomial(atoms, k - 1)});
  }
  return out;
}

HermitianOperator build_sector_hamiltonian(const ModelParams& params, int atoms, double j, int n_max) {
  if (atoms < 1) throw std::invalid_argument("atom count must be >= 1");
  if (n_max < 2) throw std::invalid_argument("n_max must be >= 2");
  const int states = static_cast<int>(std::lround(2.0 * j)) + 1;
  const Eigen::Index fock = n_max + 1;
  const Eigen::Index dim = states * fock;
  const double scale = 1.0 / std::sqrt(static_cast<double>(atoms));
  const double g1 = params.g1() * scale;
  const double g2 = params.g2() * scale;

  Matrix h = Matrix::Zero(dim, dim);
  for (int s = 0; s < states; ++s) {
    const double m = s - j;
    const double raise = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    for (Eigen::Index n = 0; n < fock; ++n) {
      const Eigen::Index from = s * fock + n;
      h(from, from) = params.omega0() * static_cast<double>(n) + params.Omega() * m;
      if (s + 1 >= states) continue;
      const Eigen::Index up = (s + 1) * fock;
      const double dn = static_cast<double>(n);
      if (n >= 1) {
        h(up + n - 1, from) += g1 * raise * std::sqrt(dn);
        h(from, up + n - 1) += g1 * raise * std::sqrt(dn);
      }
      if (n + 1 < fock) {
        h(up + n + 1, from) += g2 * raise * std::sqrt(dn + 1.0);
        h(from, up + n + 1) += g2 * raise * std::sqrt(dn + 1.0);
      }
    }
  }
  return HermitianOperator(std::move(h));
}

CollectiveThermal collective_thermal(const ModelParams& params, int atoms, int n_max, double beta) {
  require_beta(beta);
  struct Solved {
    long multiplicity;
    Eigen::VectorXd evals;
    Eigen::VectorXd photons;
    Eigen::VectorXd top;
  };
  std::vector<Solved> solved;
  double ground = std::numeric_limits<double>::infinity();
  const Eigen::Index fock = n_max + 1;
  for (const SpinSector& sector : spin_sectors(atoms)) {
    const HermitianOperator h = build_sector_hamiltonian(params, atoms, sector.j, n_max);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) throw ConvergenceError("sector eigensolver failed");
    const Matrix& v = solver.eigenvectors();
    const Eigen::Index dim = h.dimension();
    Eigen::VectorXd number(dim);
    for (Eigen::Index k = 0; k < dim; ++k) number(k) = static_cast<double>(k % fock);
    Solved s{sector.multiplicity, solver.eigenvalues(), Eigen::VectorXd::Zero(dim),
             Eigen::VectorXd::Zero(dim)};
    const Eigen::MatrixXd prob = v.cwiseAbs2();
    s.photons = prob.transpose() * number;
    for (Eigen::Index k = n_max; k < dim; k += fock) s.top += prob.row(k).transpose();
    ground = std::min(ground, s.evals(0));
    solved.push_back(std::move(s));
  }
  double z = 0.0;
  double photons = 0.0;
  double top = 0.0;
  for (const Solved& s : solved) {
    const Eigen::VectorXd w = (-beta * (s.evals.array() - ground)).exp();
    const double mult = static_cast<double>(s.multiplicity);
    z += mult * w.sum();
    photons += mult * w.dot(s.photons);
    top += mult * w.dot(s.top);
  }
  return {std::log(z) - beta * ground, photons / z, top / z};
}

int truncation_convergence(const ModelParams& params, int atoms, double beta, double target_tol,
                           const std::vector<int>& ladder) {
  if (!(target_tol > 0.0)) throw std::invalid_argument("target tolerance must be > 0");
  if (ladder.empty()) throw std::invalid_argument("truncation ladder is empty");
  if (std::isinf(target_tol)) return ladder.front();

  using Key = std::tuple<double, double, double, double, int, double, double, std::vector<int>>;
  static std::mutex mutex;
  static std::map<Key, int> cache;
  const Key key{params.omega0(), params.Omega(), params.g1(), params.g2(), atoms, beta, target_tol, ladder};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  double previous = collective_thermal(params, atoms, ladder.front(), beta).photons;
  for (std::size_t k = 1; k < ladder.size(); ++k) {
    const double current = collective_thermal(params, atoms, ladder[k], beta).photons;
    if (std::abs(current - previous) < target_tol) {
      std::lock_guard lock(mutex);
      cache.emplace(key, ladder[k - 1]);
      return ladder[k - 1];
    }
    previous = current;
  }
  throw ConvergenceError(fmt::format(
      "photon number not converged to {:.3g} up to n_max = {} (N = {}, beta = {:.17g})", target_tol,
      ladder.back(), atoms, beta));
}

std::vector<PhotonDensityRow> photon_density_curve(const ModelParams& params, double beta,
                                                   const std::vector<int>& atom_counts,
                                                   TruncationPolicy policy, int max_atoms) {
  if (atom_counts.empty()) throw std::invalid_argument("atom list is empty");
  std::vector<PhotonDensityRow> rows;
  for (int atoms : atom_counts) {
    if (atoms < 1 || atoms > max_atoms) {
      throw DimensionError(fmt::format("atom count {} outside [1, {}]", atoms, max_atoms));
    }
    const int n_max = truncation_convergence(params, atoms, beta, policy.tolerance, policy.ladder);
    const CollectiveThermal th = collective_thermal(params, atoms, n_max, beta);
    rows.push_back({atoms, n_max, th.photons / atoms, th.top_level_population});
  }
  return rows;
}

}  // namespace dicke
