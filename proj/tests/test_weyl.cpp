#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "latspec/families.hpp"
#include "latspec/minima.hpp"
#include "latspec/weyl.hpp"

using namespace latspec;

TEST_CASE("square torus remainder at 4 pi^2") {
  double r = torus_remainder(Lattice::identity(2), 4.0 * M_PI * M_PI);
  CHECK(r == doctest::Approx(1.0 - M_PI));  // ~ -2.1416
}

TEST_CASE("Gauss-circle-scale remainder decay") {
  double lam = 1e4;
  double r = torus_remainder(Lattice::identity(2), lam);
  CHECK(std::abs(r) / lam < 0.05);
}

TEST_CASE("lam below 2 pi is rejected") {
  CHECK_THROWS_AS(torus_remainder(Lattice::identity(2), 1.0), Error);
}

TEST_CASE("bound ratio for the square torus") {
  double ratio = torus_bound_ratio(Lattice::identity(2), 4.0 * M_PI * M_PI);
  CHECK(ratio ==
        doctest::Approx((M_PI - 1.0) / std::cbrt(4.0 * M_PI * M_PI)));  // ~0.627
}

TEST_CASE("bound ratio requires unit volume") {
  try {
    torus_bound_ratio(Lattice::identity(2).scaled(2.0), 100.0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnitVolume);
  }
}

TEST_CASE("bound ratio is orthogonally invariant") {
  double th = 0.7;
  Eigen::MatrixXd rot(2, 2);
  rot << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
  Lattice hex = moduli_lattice(ModuliPoint2D{0.5, std::sqrt(3.0) / 2.0});
  Lattice rotated(hex.basis() * rot);
  for (double lam : {50.0, 300.0})
    CHECK(torus_bound_ratio(hex, lam) ==
          doctest::Approx(torus_bound_ratio(rotated, lam)).epsilon(1e-9));
}

TEST_CASE("Klein bound ratio is finite and positive") {
  KleinBottle K(std::sqrt(2.0), std::sqrt(2.0));
  double r = klein_bound_ratio(K, 4.0 * M_PI * M_PI);
  CHECK(std::isfinite(r));
  CHECK(r > 0.0);
  WeylScanReport rep = weyl_scan(K, geometric_grid(2.0 * M_PI, 1e4, 30));
  CHECK(std::isfinite(rep.fitted_C));
  CHECK(rep.inj == doctest::Approx(std::pow(2.0, -0.5)));
}

TEST_CASE("square-torus scan has a stable fitted constant") {
  WeylScanReport rep =
      weyl_scan(Lattice::identity(2), geometric_grid(2.0 * M_PI, 1e5, 50));
  REQUIRE(rep.rows.size() == 50);
  CHECK(std::isfinite(rep.fitted_C));
  double max_fine = 0.0;
  for (std::size_t i = rep.rows.size() / 2; i < rep.rows.size(); ++i)
    max_fine = std::max(max_fine, rep.rows[i].ratio);
  CHECK(max_fine <= rep.fitted_C + 1e-12);
}

TEST_CASE("empty scan grid is an error") {
  CHECK_THROWS_AS(weyl_scan(Lattice::identity(2), {}), Error);
}

TEST_CASE("theta discrepancy equals 2d - 1 (non-strict), 1 (strict)") {
  CHECK(theta_discrepancy(3, 2) == doctest::Approx(3.0));
  CHECK(theta_discrepancy(5, 3) == doctest::Approx(5.0));
  for (int d = 2; d <= 5; ++d)
    for (int k : {1, 2, 7, 20}) {
      CHECK(theta_discrepancy(k, d, false) == doctest::Approx(2.0 * d - 1.0));
      CHECK(theta_discrepancy(k, d, true) == doctest::Approx(1.0));
    }
}

TEST_CASE("homothety of the counting function") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    Lattice L = testutil::random_lattice(rng, 2);
    double mu = 1.6;
    for (double lam : {30.0, 200.0})
      CHECK(torus_counting(L.scaled(mu), lam / (mu * mu), true) ==
            torus_counting(L, lam, true));
  }
}

TEST_CASE("theta family injectivity relation") {
  for (int k : {1, 2, 5, 12}) {
    for (int d : {2, 3}) {
      Lattice dualside = dual(theta_lattice(k, d));
      double mu1 = successive_minima(dualside).values[0];
      CHECK(mu1 == doctest::Approx(std::pow(k, -1.0 / d)).epsilon(1e-9));
      double lam2k = 4.0 * M_PI * M_PI * std::pow(k, 2.0 / d);
      CHECK(2.0 * M_PI / std::sqrt(lam2k) ==
            doctest::Approx(std::pow(k, -1.0 / d)).epsilon(1e-9));
    }
  }
}
