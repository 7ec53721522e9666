#include <doctest.h>

#include <cmath>

#include "dicke/errors.hpp"
#include "dicke/thermo.hpp"
#include "support/generators.hpp"

using namespace dicke;
using testgen::rel_diff;

namespace {

// Photon density from the resummed saddle condition tanh(beta E / 2) = 2 E omega0 / G,
// solved by plain bisection on E in (Omega/2, G / (2 omega0)].
double gap_equation_rho(const ModelParams& p, double beta) {
  const double G = (p.g1() + p.g2()) * (p.g1() + p.g2());
  auto f = [&](double E) { return std::tanh(0.5 * beta * E) - 2.0 * E * p.omega0() / G; };
  double lo = 0.5 * p.Omega();
  double hi = G / (2.0 * p.omega0());
  if (f(lo) <= 0.0) return 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  const double E = 0.5 * (lo + hi);
  return (E * E - 0.25 * p.Omega() * p.Omega()) / G;
}

}  // namespace

TEST_CASE("critical inverse temperature closed form") {
  CHECK(*critical_beta(ModelParams(1.0, 1.0, 1.2, 0.0)) == doctest::Approx(3.42596).epsilon(1e-5));
  CHECK(*critical_beta(ModelParams(2.0, 1.0, 0.0, 2.0)) == doctest::Approx(2.19722).epsilon(1e-5));
  CHECK(!critical_beta(ModelParams(1.0, 1.0, 0.5, 0.4)));
  CHECK(!critical_beta(ModelParams(1.0, 1.0, 0.5, 0.5)));
}

TEST_CASE("quantum critical gap classifies the ground phase") {
  CHECK(quantum_critical_gap(ModelParams(1.0, 1.0, 0.5, 0.5)) == 0.0);
  CHECK(quantum_critical_gap(ModelParams(1.0, 1.0, 1.2, 0.0)) == doctest::Approx(0.2));
  testgen::Gen gen(41);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams p = gen.params();
    CHECK((quantum_critical_gap(p) > 0.0) == critical_beta(p).has_value());
  }
}

TEST_CASE("convergence bound") {
  const ModelParams p(1.0, 1.0, 1.2, 0.0);
  CHECK(convergence_bound(p, 1.0) == doctest::Approx(1.44 * std::tanh(0.25)).epsilon(1e-14));
  CHECK(convergence_bound(p, 1.0) == doctest::Approx(0.3526829).epsilon(1e-7));
  CHECK(convergence_bound(p, 1e4) == doctest::Approx(1.44));
  testgen::Gen gen(42);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParams q = gen.supercritical();
    CHECK(convergence_bound(q, *critical_beta(q)) == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(classify_bound(0.5) == Phase::Normal);
  CHECK(classify_bound(1.0 + 1e-10) == Phase::Critical);
  CHECK(classify_bound(1.1) == Phase::Superradiant);
}

TEST_CASE("finite-sum transition root matches the closed form") {
  testgen::Gen gen(43);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParams p = gen.supercritical();
    const auto numeric = critical_beta_from_sums(p);
    REQUIRE(numeric.has_value());
    CHECK(rel_diff(*numeric, *critical_beta(p)) < 1e-8);
  }
  CHECK(!critical_beta_from_sums(ModelParams(1.0, 1.0, 0.4, 0.3)).has_value());
}

TEST_CASE("log partition ratio") {
  CHECK(log_partition_ratio(ModelParams(1.0, 1.0, 0.0, 0.0), 2.0).value == 0.0);
  CHECK_THROWS_AS(log_partition_ratio(ModelParams(1.0, 1.0, 1.2, 0.0), 5.0), DomainError);

  const ModelParams p(1.0, 1.0, 1.2, 0.0);
  const double bc = *critical_beta(p);
  CHECK_THROWS_AS(log_partition_ratio(p, bc), DomainError);
  double previous = -INFINITY;
  for (double f : {0.5, 0.8, 0.95, 0.99, 0.999, 0.9999}) {
    const double v = log_partition_ratio(p, f * bc).value;
    CHECK(v > previous);
    previous = v;
  }
  CHECK(previous > 3.0);

  testgen::Gen gen(44);
  for (int trial = 0; trial < 10; ++trial) {
    const ModelParams q = gen.params(0.3, 3.0, 1.0);
    const auto bcq = critical_beta(q);
    const double beta = bcq ? 0.8 * *bcq : gen.uniform(0.2, 10.0);
    const double base = log_partition_ratio(q, beta, {.cutoff = 64}).value;
    const double doubled = log_partition_ratio(q, beta, {.cutoff = 128}).value;
    CHECK(std::abs(base - doubled) < 1e-7 * std::max(std::abs(base), 1e-3));
  }
}

TEST_CASE("order parameter vanishes in the normal phase") {
  testgen::Gen gen(45);
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParams p = gen.params();
    const double beta = gen.uniform(0.1, 50.0);
    if (convergence_bound(p, beta) <= 1.0) CHECK(order_parameter(p, beta) == 0.0);
  }
}

TEST_CASE("order parameter matches the resummed gap equation") {
  const ModelParams anchor(1.0, 1.0, 0.9, 0.6);
  CHECK(rel_diff(order_parameter(anchor, 10.0), gap_equation_rho(anchor, 10.0)) < 1e-8);
  testgen::Gen gen(46);
  for (int trial = 0; trial < 15; ++trial) {
    const ModelParams p = gen.supercritical();
    const double beta = *critical_beta(p) * gen.uniform(1.05, 8.0);
    const double oracle = gap_equation_rho(p, beta);
    REQUIRE(oracle > 0.0);
    CHECK(rel_diff(order_parameter(p, beta), oracle) < 1e-8);
  }
}

TEST_CASE("order parameter onset and monotonicity") {
  const ModelParams p(1.0, 1.0, 0.9, 0.6);
  const double bc = *critical_beta(p);
  CHECK(order_parameter(p, 0.999 * bc) == 0.0);
  CHECK(order_parameter(p, bc) == 0.0);
  const double far = order_parameter(p, 2.0 * bc);
  CHECK(far > 0.0);
  CHECK(order_parameter(p, bc * (1.0 + 1e-4)) < 1e-2 * far);
  double previous = 0.0;
  for (double f = 1.001; f < 20.0; f *= 1.3) {
    const double rho = order_parameter(p, f * bc);
    CHECK(rho >= previous);
    previous = rho;
  }
}

TEST_CASE("saddle is a maximum of the static potential") {
  const ModelParams p(1.3, 0.7, 0.5, 0.9);
  const double beta = 2.0 * *critical_beta(p);
  const double rho = order_parameter(p, beta);
  const double phi = static_potential(rho, p, beta);
  for (double d : {1e-3, 1e-2, 1e-1}) {
    CHECK(static_potential(rho * (1.0 + d), p, beta) < phi);
    CHECK(static_potential(rho * (1.0 - d), p, beta) < phi);
  }
  CHECK(phi > static_potential(0.0, p, beta));
  CHECK(static_potential(0.0, p, beta) == 0.0);
}

TEST_CASE("coupling swap symmetry") {
  testgen::Gen gen(47);
  for (int trial = 0; trial < 10; ++trial) {
    const ModelParams p = gen.supercritical();
    const ModelParams q(p.omega0(), p.Omega(), p.g2(), p.g1());
    const double beta = gen.uniform(0.5, 3.0) * *critical_beta(p);
    CHECK(convergence_bound(p, beta) == doctest::Approx(convergence_bound(q, beta)).epsilon(1e-14));
    CHECK(*critical_beta(p) == doctest::Approx(*critical_beta(q)).epsilon(1e-14));
    CHECK(order_parameter(p, beta) == doctest::Approx(order_parameter(q, beta)).epsilon(1e-12));
    const double ap = kernel_a(0, p, beta).real(), cp = kernel_c(0, p, beta);
    const double aq = kernel_a(0, q, beta).real(), cq = kernel_c(0, q, beta);
    CHECK((1 - ap - 2 * cp) * (1 - ap + 2 * cp) == doctest::Approx((1 - aq - 2 * cq) * (1 - aq + 2 * cq)));
  }
}

TEST_CASE("phase scan") {
  const ModelParams p(1.0, 1.0, 1.2, 0.0);
  const PhasePoint single = evaluate_phase_point(p, 5.0);
  const auto one = phase_scan({p}, {5.0});
  REQUIRE(one.size() == 1);
  CHECK(one[0].bound == single.bound);
  CHECK(one[0].rho == single.rho);
  CHECK(one[0].phase == Phase::Superradiant);
  CHECK(one[0].rho > 0.0);
  CHECK(one[0].beta_c.has_value());

  std::vector<double> betas;
  for (int k = 1; k <= 40; ++k) betas.push_back(0.2 * k);
  const auto sweep = phase_scan({p}, betas, 3);
  int flips = 0;
  for (std::size_t i = 1; i < sweep.size(); ++i) flips += sweep[i].phase != sweep[i - 1].phase;
  CHECK(flips == 1);
  for (const PhasePoint& pt : sweep) CHECK((pt.rho > 0.0) == (pt.phase == Phase::Superradiant));

  std::vector<ModelParams> couplings;
  for (int k = 0; k <= 30; ++k) couplings.push_back(ModelParams(1.0, 4.0, 0.5 + 0.1 * k, 0.0));
  const auto zero_t = phase_scan(couplings, {4000.0}, 4);
  for (const PhasePoint& pt : zero_t) {
    const double g = pt.params.g1();
    if (g < 2.0 - 1e-9) CHECK(pt.phase == Phase::Normal);
    if (g > 2.0 + 1e-9) CHECK(pt.phase == Phase::Superradiant);
  }

  const auto serial = phase_scan(couplings, {3.0, 30.0}, 1);
  const auto parallel = phase_scan(couplings, {3.0, 30.0}, 8);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].params == parallel[i].params);
    CHECK(serial[i].beta == parallel[i].beta);
    CHECK(serial[i].rho == parallel[i].rho);
  }

  const auto flagged = phase_scan({p}, {1.0, -1.0, 2.0});
  CHECK(flagged[0].error.empty());
  CHECK(!flagged[1].error.empty());
  CHECK(flagged[2].error.empty());
  CHECK_THROWS_AS(phase_scan({}, {1.0}), std::invalid_argument);
}
