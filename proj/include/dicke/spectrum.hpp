#pragma once

// Collective bosonic modes: real roots E >= 0 of the continued dispersion
// relation (1 - a(E))(1 - a(-E)) - (2c(E))^2 = 0.

#include <string>
#include <vector>

#include "dicke/operators.hpp"

namespace dicke {

// The dispersion relation in its expanded three-bracket form. Requires E >= 0
// and E at least pole_eps away from Omega and omega0 (negative = default eps).
double dispersion_residual(double E, const ModelParams& params, double beta, double pole_eps = -1.0);

struct SpectrumOptions {
  double pole_eps = -1.0;       // negative selects default_pole_eps(params)
  int samples = 64;             // sign samples per pole-separated interval
  double dedup = 1e-8;
  double zero_tolerance = 1e-10;
};

struct Bracket {
  double lo;
  double hi;
};

struct ModeRoot {
  double energy;
  double residual;              // pole-free numerator Q(E^2)/(omega0^2 Omega^2) at the root
  Bracket bracket;
  int multiplicity = 1;         // multiplicity as a root in E^2
  std::string label;            // "goldstone", "secondary branch" or "mode"
  bool at_pole = false;         // coincides with Omega or omega0
};

struct IntervalScan {
  Bracket interval;
  int roots = 0;
  std::string note;             // "no root in bracket" when empty
};

struct SpectrumResult {
  ModelParams params;
  double beta;
  std::vector<ModeRoot> roots;
  std::vector<IntervalScan> intervals;

  std::vector<double> energies() const;
};

SpectrumResult collective_modes(const ModelParams& params, double beta, SpectrumOptions options = {});

// dispersion_residual(0, params, critical_beta(params)); DomainError without a finite beta_c.
double goldstone_residual(const ModelParams& params);

}  // namespace dicke
