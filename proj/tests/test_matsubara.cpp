#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dicke/errors.hpp"
#include "dicke/matsubara.hpp"
#include "support/generators.hpp"

using namespace dicke;
using testgen::rel_diff;

namespace {

constexpr double kPi = std::numbers::pi;

// Plain summation over 2M fermionic terms plus the leading 1/q^2 tail on both sides.
double brute_pair_sum(long m, double Omega, double beta, long M) {
  const double w = 2.0 * kPi * m / beta;
  const double q0 = 0.25 * Omega * Omega;
  double s = 0.0;
  for (long n = M - 1; n >= -M; --n) {
    const double q = (2.0 * n + 1.0) * kPi / beta;
    s += 1.0 / std::sqrt((q0 + q * q) * (q0 + (q + w) * (q + w)));
  }
  return s + 2.0 * beta * beta / (4.0 * kPi * kPi * M);
}

}  // namespace

TEST_CASE("grid frequencies and symmetry") {
  const MatsubaraGrid f(2.0, Statistics::Fermionic, 5);
  CHECK(f.first_index() == -5);
  CHECK(f.last_index() == 4);
  for (long n = -5; n <= 4; ++n) CHECK(f.frequency(n) == doctest::Approx(-f.frequency(-n - 1)));
  CHECK(f.frequency(0) == doctest::Approx(kPi / 2.0));
  const MatsubaraGrid b(2.0, Statistics::Bosonic, 5);
  CHECK(b.frequencies().size() == 11);
  for (long n = -5; n <= 5; ++n) CHECK(b.frequency(n) == doctest::Approx(-b.frequency(-n)));
  CHECK(b.frequency(0) == 0.0);
  CHECK_THROWS_AS(b.frequency(6), std::out_of_range);
  CHECK_THROWS_AS(MatsubaraGrid(0.0, Statistics::Bosonic, 5), std::invalid_argument);
}

TEST_CASE("fermionic lorentzian sum equals the tanh closed form") {
  testgen::Gen gen(31);
  for (int trial = 0; trial < 40; ++trial) {
    const double x = gen.uniform(0.05, 5.0);
    const double beta = std::exp(gen.uniform(std::log(0.05), std::log(1e4)));
    const SeriesEstimate s = lorentzian_sum(x, beta);
    CHECK(rel_diff(s.value, lorentzian_sum_exact(x, beta)) < 1e-10);
    CHECK(s.converged);
  }
  CHECK(rel_diff(lorentzian_sum(0.5, 1e6).value, lorentzian_sum_exact(0.5, 1e6)) < 1e-10);
  CHECK_THROWS_AS(lorentzian_sum(0.5, 1.0, {.cutoff = 5}), std::invalid_argument);
}

TEST_CASE("log-ratio sum equals the cosh closed form") {
  testgen::Gen gen(32);
  for (int trial = 0; trial < 40; ++trial) {
    const double e = gen.uniform(0.0, 4.0);
    const double f = gen.uniform(0.05, 4.0);
    const double beta = std::exp(gen.uniform(std::log(0.1), std::log(500.0)));
    const double exact = 2.0 * (std::log(std::cosh(0.5 * beta * e)) - std::log(std::cosh(0.5 * beta * f)));
    CHECK(std::abs(log_ratio_sum(e, f, beta).value - exact) < 1e-10 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("static kernel sums at zero frequency") {
  const KernelSums k = a0_c0_sum(0, ModelParams(1.0, 1.0, 1.0, 0.0), 4.0);
  CHECK(k.a0.value == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
  CHECK(k.c0.value == 0.0);
  CHECK(std::tanh(1.0) == doctest::Approx(0.76159).epsilon(1e-5));

  testgen::Gen gen(33);
  for (int trial = 0; trial < 30; ++trial) {
    const ModelParams p = gen.params();
    const double beta = gen.uniform(0.1, 30.0);
    const KernelSums s = a0_c0_sum(0, p, beta);
    const double g = p.g1() + p.g2();
    const double exact = g * g / (p.Omega() * p.omega0()) * std::tanh(0.25 * beta * p.Omega());
    CHECK(std::abs(s.a0.value + 2.0 * s.c0.value - exact) < 1e-8 * std::max(1.0, exact));
    CHECK(rel_diff(s.a0.value, (p.g1() * p.g1() + p.g2() * p.g2()) / (p.Omega() * p.omega0()) *
                                   std::tanh(0.25 * beta * p.Omega())) < 1e-10);
  }
}

TEST_CASE("finite-frequency pair sums") {
  testgen::Gen gen(34);
  for (int trial = 0; trial < 8; ++trial) {
    const double W = gen.uniform(0.3, 3.0);
    const double beta = gen.uniform(0.5, 10.0);
    const long m = gen.integer(1, 12);
    const SeriesEstimate s = pair_product_sum(m, W, beta);
    CHECK(rel_diff(s.value, brute_pair_sum(m, W, beta, 400000)) < 1e-8);
    CHECK(s.converged);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const ModelParams p = gen.params().with("g2", 0.0);
    const KernelSums k = a0_c0_sum(gen.integer(-5, 5), p, gen.uniform(0.5, 5.0));
    CHECK(k.c0.value == 0.0);
  }
}

TEST_CASE("raw partial sums approach the limit like 1/M") {
  const double W = 1.0;
  const double beta = 2.0;
  const SeriesEstimate ref = pair_product_sum(3, W, beta, {.cutoff = 2000});
  const SeriesEstimate coarse = pair_product_sum(3, W, beta, {.cutoff = 400});
  const SeriesEstimate fine = pair_product_sum(3, W, beta, {.cutoff = 800});
  const double ratio = std::abs(coarse.partial_sum - ref.value) / std::abs(fine.partial_sum - ref.value);
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::abs(fine.value - ref.value) < 1e-12 * ref.value);
}

TEST_CASE("pair-sum kernels decay with frequency") {
  const ModelParams p(1.0, 1.0, 0.8, 0.5);
  const double beta = 3.0;
  double previous = INFINITY;
  double envelope_early = 0.0;
  for (long m = 1; m <= 64; m *= 2) {
    const KernelSums k = a0_c0_sum(m, p, beta);
    const double v = k.a0.value + 2.0 * k.c0.value;
    CHECK(v < previous);
    previous = v;
    const double w = 2.0 * kPi * m / beta;
    const double envelope = v * w * w / std::log(w + 1.0);
    if (m == 2) envelope_early = envelope;
    if (m >= 4) CHECK(envelope < 1.5 * envelope_early);
  }
}

TEST_CASE("closed-form kernels") {
  testgen::Gen gen(35);
  for (int trial = 0; trial < 30; ++trial) {
    const ModelParams p = gen.params();
    const double beta = gen.uniform(0.1, 20.0);
    const double t = std::tanh(0.25 * beta * p.Omega());
    const std::complex<double> a0 = kernel_a(0, p, beta);
    CHECK(a0.imag() == 0.0);
    CHECK(rel_diff(a0.real(), (p.g1() * p.g1() + p.g2() * p.g2()) / (p.Omega() * p.omega0()) * t) < 1e-14);
    CHECK(rel_diff(kernel_c(0, p, beta), p.g1() * p.g2() / (p.omega0() * p.Omega()) * t) < 1e-14);
    double prev_c = kernel_c(0, p, beta);
    for (long m = 1; m < 10; ++m) {
      CHECK(std::abs(kernel_a(-m, p, beta) - std::conj(kernel_a(m, p, beta))) < 1e-15);
      CHECK(kernel_c(-m, p, beta) == kernel_c(m, p, beta));
      const double c = kernel_c(m, p, beta);
      CHECK(c >= 0.0);
      CHECK(c <= prev_c);
      prev_c = c;
    }
  }
  const ModelParams critical(1.3, 0.7, std::sqrt(1.3 * 0.7), 0.0);
  CHECK(kernel_a(0, critical, 400.0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(kernel_c(3, ModelParams(1, 1, 0.0, 0.7), 2.0) == 0.0);
}

TEST_CASE("continuation to real energies") {
  testgen::Gen gen(36);
  for (int trial = 0; trial < 200; ++trial) {
    const ModelParams p = gen.params();
    const double beta = gen.uniform(0.2, 20.0);
    const double E = gen.uniform(0.0, 3.0 * (p.Omega() + p.omega0()));
    const double gap = std::min(std::abs(E - p.Omega()), std::abs(E - p.omega0()));
    if (gap < 1e-2) continue;
    const double f = dispersion_factored(E, p, beta);
    const double x = dispersion_expanded(E, p, beta);
    CHECK(std::abs(f - x) < 1e-10 * std::max(1.0, std::abs(x)));
    const double norm = (p.omega0() * p.omega0() - E * E) * (p.Omega() * p.Omega() - E * E) /
                        (p.omega0() * p.omega0() * p.Omega() * p.Omega());
    CHECK(std::abs(dispersion_numerator(E, p, beta) / norm - x) < 1e-9 * std::max(1.0, std::abs(x)));
  }

  const ModelParams p(1.2, 0.8, 0.5, 0.3);
  const ContinuedKernels k = continue_kernels(0.0, p, 2.0);
  CHECK(k.a_plus == doctest::Approx(kernel_a(0, p, 2.0).real()));
  CHECK(k.a_minus == doctest::Approx(kernel_a(0, p, 2.0).real()));
  CHECK(k.c.real() == doctest::Approx(kernel_c(0, p, 2.0)));
  CHECK(continue_kernels(0.5, p.with("g2", 0.0), 2.0).c == std::complex<double>(0.0));

  CHECK_THROWS_AS(continue_kernels(0.8, p, 2.0), PoleProximityError);
  CHECK_THROWS_AS(continue_kernels(-1.2, p, 2.0), PoleProximityError);
  CHECK_THROWS_AS(continue_kernels(1.2 + 1e-10, p, 2.0), PoleProximityError);
  CHECK_NOTHROW(continue_kernels(1.2 + 1e-6, p, 2.0));
  CHECK_THROWS_AS(continue_kernels(1.2 + 1e-6, p, 2.0, 1e-5), PoleProximityError);
}

TEST_CASE("decoupled dispersion is identically one") {
  const ModelParams p(1.0, 2.0, 0.0, 0.0);
  for (double E : {0.0, 0.3, 1.5, 2.5, 7.0}) {
    CHECK(dispersion_expanded(E, p, 3.0) == 1.0);
    CHECK(dispersion_factored(E, p, 3.0) == 1.0);
  }
}
