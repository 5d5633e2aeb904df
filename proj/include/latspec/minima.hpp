#pragma once

#include <vector>

#include "latspec/lattice.hpp"

namespace latspec {

struct SuccessiveMinima {
  std::vector<double> values;               // nondecreasing mu_1..mu_d
  std::vector<Eigen::VectorXd> witnesses;   // witness lattice vectors
};

struct InvariantReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double ratio = 0.0;
};

// Volume of the unit ball in dimension d: pi^{d/2} / Gamma(d/2 + 1).
double volume_unit_ball(int d);

// Exact successive minima by ball enumeration after LLL preconditioning,
// with witness vectors of increasing span rank. Requires d <= 12.
SuccessiveMinima successive_minima(const Lattice& L);

// mu_1, the injectivity radius of the associated flat torus.
double injectivity_radius_torus(const Lattice& L);

// Minkowski's second theorem with the classical constants:
//   (2^d / d!) |Gamma| <= omega_d prod mu_j <= 2^d |Gamma|.
InvariantReport check_minkowski(const Lattice& L);

// Banaszczyk transference: 1 <= mu_j(Gamma) mu_{d-j+1}(Gamma*) <= d, one
// report per j.
std::vector<InvariantReport> check_transference(const Lattice& L);

}  // namespace latspec
