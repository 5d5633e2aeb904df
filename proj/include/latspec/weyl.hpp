#pragma once

#include <variant>
#include <vector>

#include "latspec/spectra.hpp"

namespace latspec {

struct WeylScanRow {
  double lam = 0.0;
  std::int64_t count = 0;
  double main_term = 0.0;
  double remainder = 0.0;
  double bound = 0.0;   // lam^{d/2 - d/(d+1)} inj^{-2d/(d+1)}
  double ratio = 0.0;   // |remainder| / bound
};

struct WeylScanReport {
  std::vector<WeylScanRow> rows;
  double fitted_C = 0.0;  // max ratio over rows
  double inj = 0.0;
};

// N(lam) - omega_d/(2 pi)^d lam^{d/2}, strict counting; lam >= 2 pi.
double torus_remainder(const Lattice& L, double lam);

// |remainder| / (lam^{d/2 - d/(d+1)} inj^{-2d/(d+1)}), unit-volume tori only.
double torus_bound_ratio(const Lattice& L, double lam);

// |N(lam;K) - lam/(4 pi)| / (lam^{1/3} inj^{-2/3}), for ab = 2.
double klein_bound_ratio(const KleinBottle& K, double lam);

WeylScanReport weyl_scan(const Lattice& L, const std::vector<double>& lam_grid);
WeylScanReport weyl_scan(const KleinBottle& K, const std::vector<double>& lam_grid);

// Geometric grid with `points` entries from lam_min to lam_max inclusive.
std::vector<double> geometric_grid(double lam_min, double lam_max, int points);

// Counting discrepancy |N(lambda_2k; T_k) - omega_1/(2 pi)^d lambda_2k^{d/2}|
// for the torus T_k whose dual lattice is Theta_2k. Equals 2d - 1 with
// non-strict counting and 1 with strict counting.
double theta_discrepancy(int k, int d, bool strict = false);

}  // namespace latspec
