#include "latspec/weyl.hpp"

#include <cmath>

#include "latspec/families.hpp"
#include "latspec/minima.hpp"

namespace latspec {

namespace {

void check_lam_range(double lam) {
  if (!(lam >= 2.0 * M_PI))
    throw Error(ErrorCode::BadArguments, "lam must be >= 2 pi");
}

double weyl_main_term(int d, double lam) {
  return volume_unit_ball(d) / std::pow(2.0 * M_PI, d) * std::pow(lam, d / 2.0);
}

}  // namespace

double torus_remainder(const Lattice& L, double lam) {
  check_lam_range(lam);
  return static_cast<double>(torus_counting(L, lam, true)) -
         weyl_main_term(L.dim(), lam);
}

double torus_bound_ratio(const Lattice& L, double lam) {
  if (!nearly_equal(L.det(), 1.0))
    throw Error(ErrorCode::NotUnitVolume, "torus_bound_ratio needs det = 1");
  check_lam_range(lam);
  const int d = L.dim();
  double inj = injectivity_radius_torus(L);
  double bound = std::pow(lam, d / 2.0 - static_cast<double>(d) / (d + 1)) *
                 std::pow(inj, -2.0 * d / (d + 1));
  return std::abs(torus_remainder(L, lam)) / bound;
}

double klein_bound_ratio(const KleinBottle& K, double lam) {
  if (!K.unit_volume())
    throw Error(ErrorCode::NotUnitVolume, "klein_bound_ratio needs ab = 2");
  check_lam_range(lam);
  double inj = klein_injectivity(K);
  double bound = std::pow(lam, 1.0 / 3.0) * std::pow(inj, -2.0 / 3.0);
  double rem = static_cast<double>(klein_counting(K, lam, true)) -
               lam / (4.0 * M_PI);
  return std::abs(rem) / bound;
}

std::vector<double> geometric_grid(double lam_min, double lam_max, int points) {
  if (points < 1 || !(lam_min > 0.0) || !(lam_max >= lam_min))
    throw Error(ErrorCode::EmptyGrid, "invalid lam grid");
  std::vector<double> grid;
  if (points == 1) return {lam_min};
  double r = std::pow(lam_max / lam_min, 1.0 / (points - 1));
  double v = lam_min;
  for (int i = 0; i < points; ++i) {
    grid.push_back(v);
    v *= r;
  }
  grid.back() = lam_max;
  return grid;
}

namespace {

template <typename CountFn>
WeylScanReport scan_impl(int d, double inj, const std::vector<double>& grid,
                         CountFn&& count) {
  if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "empty lam grid");
  WeylScanReport report;
  report.inj = inj;
  for (double lam : grid) {
    WeylScanRow row;
    row.lam = lam;
    row.count = count(lam);
    row.main_term = weyl_main_term(d, lam);
    row.remainder = static_cast<double>(row.count) - row.main_term;
    row.bound = std::pow(lam, d / 2.0 - static_cast<double>(d) / (d + 1)) *
                std::pow(inj, -2.0 * d / (d + 1));
    row.ratio = std::abs(row.remainder) / row.bound;
    report.fitted_C = std::max(report.fitted_C, row.ratio);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace

WeylScanReport weyl_scan(const Lattice& L, const std::vector<double>& lam_grid) {
  if (!nearly_equal(L.det(), 1.0))
    throw Error(ErrorCode::NotUnitVolume, "weyl scan needs det = 1");
  double inj = injectivity_radius_torus(L);
  return scan_impl(L.dim(), inj, lam_grid,
                   [&](double lam) { return torus_counting(L, lam, true); });
}

WeylScanReport weyl_scan(const KleinBottle& K, const std::vector<double>& lam_grid) {
  if (!K.unit_volume())
    throw Error(ErrorCode::NotUnitVolume, "weyl scan needs ab = 2");
  // d = 2 with the Klein main term lam / (4 pi) = omega_2/(2 pi)^2 lam.
  return scan_impl(2, klein_injectivity(K), lam_grid,
                   [&](double lam) { return klein_counting(K, lam, true); });
}

double theta_discrepancy(int k, int d, bool strict) {
  if (k < 1 || d < 2 || d > 10)
    throw Error(ErrorCode::BadArguments, "need k >= 1 and 2 <= d <= 10");
  Lattice theta = theta_lattice(k, d);
  double lam_2k = 4.0 * M_PI * M_PI * std::pow(k, 2.0 / d);
  // N(lam; T_k) with dual(T_k) = Theta_2k counts Theta_2k in the ball of
  // radius sqrt(lam)/(2 pi) = k^{1/d}.
  std::int64_t n = count_in_ball(theta, std::sqrt(lam_2k) / (2.0 * M_PI), !strict);
  double main = 2.0 / std::pow(2.0 * M_PI, d) * std::pow(lam_2k, d / 2.0);
  return std::abs(static_cast<double>(n) - main);
}

}  // namespace latspec
