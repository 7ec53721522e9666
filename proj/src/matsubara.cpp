#include "dicke/matsubara.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

constexpr double kPi = std::numbers::pi;

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be finite and > 0");
  }
}

void require_cutoff(long cutoff) {
  if (cutoff < 10) throw std::invalid_argument("cutoff must be >= 10");
}

double fermionic(long n, double beta) { return (2.0 * static_cast<double>(n) + 1.0) * kPi / beta; }

long scaled_cutoff(long cutoff, double beta, double scale) {
  const double need = std::ceil(16.0 * beta * scale / (2.0 * kPi));
  return std::max(cutoff, static_cast<long>(std::min(need, 1e8)));
}

// sum_{n=0}^{M-1} f(p_n) + midpoint-rule tail (1/h)[int_a^inf f + (h^2/24) f'(a)],
// doubled for the negative half of the fermionic grid.
template <class F, class Integral, class Derivative>
double even_sum_with_tail(long M, double beta, F f, Integral tail_integral, Derivative df) {
  const double h = 2.0 * kPi / beta;
  const double a = static_cast<double>(M) * h;
  double head = 0.0;
  for (long n = M - 1; n >= 0; --n) head += f(fermionic(n, beta));
  const double tail = (tail_integral(a) + h * h / 24.0 * df(a)) / h;
  return 2.0 * (head + tail);
}

}  // namespace

MatsubaraGrid::MatsubaraGrid(double beta_, Statistics statistics_, long cutoff_)
    : beta(beta_), statistics(statistics_), cutoff(cutoff_) {
  require_beta(beta);
  if (cutoff < 1) throw std::invalid_argument("grid cutoff must be >= 1");
}

double MatsubaraGrid::frequency(long n) const {
  if (n < first_index() || n > last_index()) {
    throw std::out_of_range("Matsubara index " + std::to_string(n) + " outside grid");
  }
  return statistics == Statistics::Bosonic ? 2.0 * kPi * static_cast<double>(n) / beta
                                           : fermionic(n, beta);
}

std::vector<double> MatsubaraGrid::frequencies() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(last_index() - first_index() + 1));
  for (long n = first_index(); n <= last_index(); ++n) out.push_back(frequency(n));
  return out;
}

SeriesEstimate richardson(const std::function<double(long)>& partial, long base_cutoff,
                          const std::vector<int>& exponents, double tolerance) {
  const std::size_t levels = exponents.size() + 1;
  std::vector<std::vector<double>> table(levels);
  long M = base_cutoff;
  for (std::size_t k = 0; k < levels; ++k, M *= 2) table[k].push_back(partial(M));
  for (std::size_t j = 1; j < levels; ++j) {
    const double r = std::ldexp(1.0, exponents[j - 1]);
    for (std::size_t k = 0; k + j < levels; ++k) {
      table[k].push_back((r * table[k + 1][j - 1] - table[k][j - 1]) / (r - 1.0));
    }
  }
  SeriesEstimate est;
  est.value = table[0][levels - 1];
  est.partial_sum = table[levels - 1][0];
  est.tail_bound = std::abs(est.value - est.partial_sum);
  est.extrapolation_error =
      levels > 1 ? std::abs(est.value - table[1][levels - 2]) : std::abs(est.value);
  est.cutoff = base_cutoff << (levels - 1);
  est.converged = est.extrapolation_error <= tolerance * std::max(1.0, std::abs(est.value));
  return est;
}

SeriesEstimate lorentzian_sum(double x, double beta, SumOptions options) {
  require_beta(beta);
  require_cutoff(options.cutoff);
  if (!(x > 0.0)) throw std::invalid_argument("lorentzian width must be > 0");
  const double x2 = x * x;
  auto partial = [&](long M) {
    return even_sum_with_tail(
        M, beta, [&](double p) { return 1.0 / (p * p + x2); },
        [&](double a) { return std::atan(x / a) / x; },
        [&](double a) { return -2.0 * a / ((a * a + x2) * (a * a + x2)); });
  };
  return richardson(partial, options.cutoff, {5, 7}, options.tolerance);
}

double lorentzian_sum_exact(double x, double beta) {
  return beta / (2.0 * x) * std::tanh(0.5 * beta * x);
}

SeriesEstimate log_ratio_sum(double e, double f, double beta, SumOptions options) {
  require_beta(beta);
  require_cutoff(options.cutoff);
  if (e < 0.0 || f < 0.0) throw std::invalid_argument("log-ratio energies must be >= 0");
  const double e2 = e * e;
  const double f2 = f * f;
  auto partial = [&](long M) {
    return even_sum_with_tail(
        M, beta, [&](double p) { return std::log1p((e2 - f2) / (p * p + f2)); },
        [&](double a) {
          return 2.0 * e * std::atan(e / a) - 2.0 * f * std::atan(f / a) -
                 a * std::log1p((e2 - f2) / (a * a + f2));
        },
        [&](double a) { return 2.0 * a / (a * a + e2) - 2.0 * a / (a * a + f2); });
  };
  return richardson(partial, options.cutoff, {5, 7}, options.tolerance);
}

SeriesEstimate pair_product_sum(long m, double Omega, double beta, SumOptions options) {
  require_beta(beta);
  require_cutoff(options.cutoff);
  if (!(Omega > 0.0)) throw std::invalid_argument("Omega must be > 0");
  if (m == 0) return lorentzian_sum(0.5 * Omega, beta, options);

  const double w = 2.0 * kPi * static_cast<double>(m) / beta;
  const double q0 = 0.25 * Omega * Omega;
  auto f = [&](double q) { return 1.0 / std::sqrt((q0 + q * q) * (q0 + (q + w) * (q + w))); };
  auto partial = [&](long M) {
    double s = 0.0;
    for (long n = M - 1; n >= 0; --n) s += f(fermionic(n, beta)) + f(fermionic(-n - 1, beta));
    return s;
  };
  const long base = std::max(scaled_cutoff(options.cutoff, beta, 0.5 * Omega), 16 * std::labs(m));
  return richardson(partial, base, {1, 3, 5}, options.tolerance);
}

KernelSums a0_c0_sum(long m, const ModelParams& params, double beta, SumOptions options) {
  const SeriesEstimate pair = pair_product_sum(m, params.Omega(), beta, options);
  const double w = 2.0 * kPi * static_cast<double>(m) / beta;
  const double w0 = params.omega0();
  const double a_pref =
      (params.g1() * params.g1() + params.g2() * params.g2()) / (beta * std::sqrt(w0 * w0 + w * w));
  const double c_pref = w0 * params.g1() * params.g2() / (beta * (w0 * w0 + w * w));
  auto scaled = [&](double k) {
    SeriesEstimate s = pair;
    s.value *= k;
    s.partial_sum *= k;
    s.tail_bound *= std::abs(k);
    s.extrapolation_error *= std::abs(k);
    s.converged = s.extrapolation_error <= options.tolerance * std::max(1.0, std::abs(s.value));
    return s;
  };
  return {scaled(a_pref), scaled(c_pref)};
}

double tanh_factor(const ModelParams& params, double beta) {
  require_beta(beta);
  return std::tanh(0.25 * beta * params.Omega());
}

std::complex<double> kernel_a(long m, const ModelParams& params, double beta) {
  const double t = tanh_factor(params, beta);
  const double w = 2.0 * kPi * static_cast<double>(m) / beta;
  const std::complex<double> iw(0.0, w);
  const double g1s = params.g1() * params.g1();
  const double g2s = params.g2() * params.g2();
  return (g1s / (params.Omega() - iw) + g2s / (params.Omega() + iw)) / (params.omega0() - iw) * t;
}

double kernel_c(long m, const ModelParams& params, double beta) {
  const double t = tanh_factor(params, beta);
  const double w = 2.0 * kPi * static_cast<double>(m) / beta;
  const double W = params.Omega();
  const double w0 = params.omega0();
  return params.g1() * params.g2() * W / (std::sqrt(w0 * w0 + w * w) * (W * W + w * w)) * t;
}

double default_pole_eps(const ModelParams& params) {
  return 1e-9 * std::max(params.Omega(), params.omega0());
}

ContinuedKernels continue_kernels(double E, const ModelParams& params, double beta,
                                  double pole_eps) {
  if (!std::isfinite(E)) throw std::invalid_argument("energy must be finite");
  if (pole_eps < 0.0) pole_eps = default_pole_eps(params);
  const double W = params.Omega();
  const double w0 = params.omega0();
  const double distance = std::min({std::abs(std::abs(E) - W), std::abs(std::abs(E) - w0)});
  if (distance < pole_eps) {
    throw PoleProximityError("energy " + std::to_string(E) + " lies within " +
                             std::to_string(pole_eps) + " of a kernel pole");
  }
  const double t = tanh_factor(params, beta);
  const double g1s = params.g1() * params.g1();
  const double g2s = params.g2() * params.g2();
  ContinuedKernels k;
  k.a_plus = (g1s / (W - E) + g2s / (W + E)) / (w0 - E) * t;
  k.a_minus = (g1s / (W + E) + g2s / (W - E)) / (w0 + E) * t;
  k.c = params.g1() * params.g2() * W * t /
        (std::sqrt(std::complex<double>(w0 * w0 - E * E, 0.0)) * (W * W - E * E));
  return k;
}

double dispersion_factored(double E, const ModelParams& params, double beta, double pole_eps) {
  const ContinuedKernels k = continue_kernels(E, params, beta, pole_eps);
  const std::complex<double> two_c = 2.0 * k.c;
  return (1.0 - k.a_plus) * (1.0 - k.a_minus) - (two_c * two_c).real();
}

double dispersion_expanded(double E, const ModelParams& params, double beta, double pole_eps) {
  const ContinuedKernels k = continue_kernels(E, params, beta, pole_eps);
  const double t = tanh_factor(params, beta);
  const double W = params.Omega();
  const double w0 = params.omega0();
  const double g1s = params.g1() * params.g1();
  const double g2s = params.g2() * params.g2();
  const double dw0 = w0 * w0 - E * E;
  const double dW = W * W - E * E;
  const double quartic = -t * t * (g1s * g1s + g2s * g2s) / (dw0 * dW);
  const double mixed = -t * t * g1s * g2s / dw0 *
                       (1.0 / ((W - E) * (W - E)) + 1.0 / ((W + E) * (W + E)) -
                        4.0 * W * W / (dW * dW));
  return 1.0 - (quartic + mixed + k.a_plus + k.a_minus);
}

NumeratorCoefficients dispersion_numerator_coefficients(const ModelParams& params, double beta) {
  const double t = tanh_factor(params, beta);
  const double W = params.Omega();
  const double w0 = params.omega0();
  const double g1s = params.g1() * params.g1();
  const double g2s = params.g2() * params.g2();
  const double norm = w0 * w0 * W * W;
  const double diff = g1s - g2s;
  return {1.0 - 2.0 * t * (g1s + g2s) / (w0 * W) + t * t * diff * diff / norm,
          -(W * W + w0 * w0 + 2.0 * t * diff) / norm, 1.0 / norm};
}

double dispersion_numerator(double E, const ModelParams& params, double beta) {
  const NumeratorCoefficients q = dispersion_numerator_coefficients(params, beta);
  const double s = E * E;
  return q.q0 + s * (q.q1 + s * q.q2);
}

}  // namespace dicke
