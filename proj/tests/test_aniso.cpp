#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "latspec/aniso.hpp"
#include "latspec/enumerate.hpp"
#include "latspec/families.hpp"

using namespace latspec;

namespace {

Decomposition axis_dec(const std::vector<double>& rates,
                       std::optional<Classification> cls = std::nullopt) {
  int d = static_cast<int>(rates.size());
  std::vector<Block> blocks(d);
  for (int j = 0; j < d; ++j) {
    blocks[j].basis = Eigen::MatrixXd::Identity(d, d).col(j);
    blocks[j].rate = rates[j];
  }
  return Decomposition::make(std::move(blocks), std::move(cls));
}

}  // namespace

TEST_CASE("apply_T scales block components by inverse rates") {
  Eigen::VectorXd x(2);
  x << 1.0, 1.0;
  Eigen::VectorXd same = apply_T(axis_dec({1.0, 1.0}), x);
  CHECK((same - x).norm() < 1e-12);
  Eigen::VectorXd y = apply_T(axis_dec({0.5, 1.0 / 3.0}), x);
  CHECK(y(0) == doctest::Approx(2.0));
  CHECK(y(1) == doctest::Approx(3.0));
}

TEST_CASE("det of T_eps inverse equals the rate product") {
  std::mt19937 rng(81);
  std::uniform_real_distribution<double> ur(0.2, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> rates = {ur(rng), ur(rng), ur(rng)};
    std::sort(rates.begin(), rates.end());
    Decomposition dec = axis_dec(rates);
    CHECK(T_inverse_matrix(dec).determinant() ==
          doctest::Approx(dec.rate_det()).epsilon(1e-12));
  }
}

TEST_CASE("zero rates are rejected in apply_T and n_eps") {
  Decomposition dec = axis_dec({0.0, 1.0});
  Eigen::VectorXd x = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(apply_T(dec, x), Error);
  CHECK_THROWS_AS(n_eps(dec, Ball{1.0, {}}, Lattice::identity(2)), Error);
}

TEST_CASE("n_eps on Z^2 matches hand counts") {
  Lattice z2 = Lattice::identity(2);
  CHECK(n_eps(axis_dec({0.2, 0.2}), Ball{1.0, {}}, z2) == 81);
  // Ellipse m^2/25 + n^2 <= 1: eleven points on the n = 0 axis plus (0, +-1).
  CHECK(n_eps(axis_dec({0.2, 1.0}), Ball{1.0, {}}, z2) == 13);
  Eigen::VectorXd y(2);
  y << 0.5, 0.5;
  CHECK(n_eps(axis_dec({1.0, 1.0}), Ball{1.0, {}}, z2, y) == 4);
}

TEST_CASE("n_eps agrees with box brute force") {
  std::mt19937 rng(82);
  std::uniform_real_distribution<double> ur(0.3, 1.5);
  for (int trial = 0; trial < 30; ++trial) {
    int d = 2 + trial % 2;
    Lattice L = testutil::random_integer_lattice(rng, d, 3);
    std::vector<double> rates(d);
    for (double& r : rates) r = ur(rng);
    std::sort(rates.begin(), rates.end());
    Decomposition dec = axis_dec(rates);
    // Transformed lattice T_eps^{-1} Gamma for the oracle.
    Lattice transformed(L.basis() * T_inverse_matrix(dec));
    Lattice red = lll_reduce(transformed);
    double shortest = red.basis().rowwise().norm().minCoeff();
    int box = static_cast<int>(std::ceil(1.0 / std::max(shortest, 1e-6))) + d + 1;
    CHECK(n_eps(dec, Ball{1.0, {}}, L) == testutil::box_count(red, 1.0, true, box));
  }
}

TEST_CASE("main term with W = {0}") {
  Classification cls;
  cls.V = {0, 1};
  Lattice z2 = Lattice::identity(2);
  CHECK(main_term(axis_dec({0.2, 0.2}, cls), Ball{1.0, {}}, z2) ==
        doctest::Approx(25.0 * M_PI));
  CHECK(main_term(axis_dec({0.2, 1.0}, cls), Ball{1.0, {}}, z2) ==
        doctest::Approx(5.0 * M_PI));
}

TEST_CASE("main term with a nontrivial W slice sum") {
  // W = second axis, rate 0 there; Gamma_W = Z so only gamma = 0 slices B_1.
  Classification cls;
  cls.V = {1};
  cls.W = {0};
  std::vector<Block> blocks(2);
  blocks[0].basis = Eigen::MatrixXd::Identity(2, 2).col(1);
  blocks[0].rate = 0.0;
  blocks[1].basis = Eigen::MatrixXd::Identity(2, 2).col(0);
  blocks[1].rate = 0.25;
  Decomposition dec = Decomposition::make(blocks, cls);
  double got = main_term(dec, Ball{1.0, {}}, Lattice::identity(2));
  // |eps|^{-1} |Gamma_W| / |Gamma| * omega_1 (R^2 - 0)^{1/2} with the zero
  // rate excluded from |eps|: 4 * 1 * 2.
  CHECK(got == doctest::Approx(8.0));
}

TEST_CASE("missing classification is an error") {
  Decomposition dec = axis_dec({0.5, 0.5});
  CHECK_THROWS_AS(main_term(dec, Ball{1.0, {}}, Lattice::identity(2)), Error);
  CHECK_THROWS_AS(predicted_remainder(dec), Error);
}

TEST_CASE("predicted remainder exponents") {
  Classification cls2;
  cls2.V = {0, 1};
  double s = 0.1;
  CHECK(predicted_remainder(axis_dec({s, s}, cls2)) ==
        doctest::Approx(std::pow(s, -2.0) * std::pow(s, 4.0 / 3.0)));
  Classification cls3;
  cls3.V = {0, 1, 2};
  CHECK(predicted_remainder(axis_dec({s, s, s}, cls3)) ==
        doctest::Approx(std::pow(s, -3.0) * std::pow(s, 6.0 / 4.0)));
}

TEST_CASE("lattice_to_Teps on diagonal lattices") {
  TepsResult id = lattice_to_Teps(Lattice::identity(3));
  for (double r : id.rates) CHECK(r == doctest::Approx(1.0));
  CHECK((id.rotation.transpose() * id.rotation).isIdentity(1e-9));

  TepsResult t4 = lattice_to_Teps(theta_lattice(2, 2));
  REQUIRE(t4.rates.size() == 2);
  CHECK(t4.rates[0] == doctest::Approx(std::pow(2.0, -0.5)));
  CHECK(t4.rates[1] == doctest::Approx(std::pow(2.0, 0.5)));
}

TEST_CASE("Teps count equality on random lattices") {
  std::mt19937 rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + trial % 3;
    Lattice L = testutil::random_lattice(rng, d);
    TepsResult t = lattice_to_Teps(L);
    CHECK(count_in_ball(L, 1.0, true) ==
          n_eps(t.decomposition, Ball{1.0, {}}, Lattice::identity(d)));
  }
}

TEST_CASE("succmin bounds chain") {
  CHECK(check_succmin_bounds(Lattice::identity(4)).satisfied);
  CHECK(check_succmin_bounds(theta_lattice(2, 2)).satisfied);
  std::mt19937 rng(84);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 2 + trial % 4;
    CHECK(check_succmin_bounds(testutil::random_lattice(rng, d)).satisfied);
  }
}

TEST_CASE("isotropic remainder scan on Z^2 shrinks relative to the main term") {
  Classification cls;
  cls.V = {0, 1};
  Decomposition tmpl = axis_dec({1.0, 1.0}, cls);
  RateSchedule schedule{{1.0, 1.0}, {1.0, 1.0}};
  std::vector<double> scales;
  for (double s = 0.5; s >= 1.0 / 64.0 - 1e-12; s /= 2.0) scales.push_back(s);
  AnisoReport rep = remainder_exponent_scan(tmpl, schedule,
                                            Lattice::identity(2), Ball{1.0, {}},
                                            scales);
  REQUIRE(rep.rows.size() == scales.size());
  double first = std::abs(rep.rows.front().remainder) / rep.rows.front().main;
  double last = std::abs(rep.rows.back().remainder) / rep.rows.back().main;
  CHECK(last < first);
  CHECK(last < 0.05);
  for (const AnisoRow& r : rep.rows)
    CHECK(std::abs(r.remainder) <= rep.fitted_C * r.predicted + 1e-12);
  CHECK(rep.exponent == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("anisotropic scan with one frozen axis stays bounded") {
  Classification cls;
  cls.V = {0, 1};
  Decomposition tmpl = axis_dec({1.0, 1.0}, cls);
  RateSchedule schedule{{1.0, 0.5}, {1.0, 0.0}};  // eps = (s, 1/2)
  std::vector<double> scales;
  for (double s = 0.5; s >= 1.0 / 64.0 - 1e-12; s /= 2.0) scales.push_back(s);
  AnisoReport rep = remainder_exponent_scan(tmpl, schedule,
                                            Lattice::identity(2), Ball{1.0, {}},
                                            scales);
  double max_all = 0.0, max_fine = 0.0;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    double ratio = std::abs(rep.rows[i].remainder) / rep.rows[i].predicted;
    max_all = std::max(max_all, ratio);
    if (i >= rep.rows.size() / 2) max_fine = std::max(max_fine, ratio);
  }
  CHECK(std::isfinite(rep.fitted_C));
  CHECK(max_fine <= 2.0 * max_all);
}

TEST_CASE("empty scale grid is an error") {
  Classification cls;
  cls.V = {0, 1};
  Decomposition tmpl = axis_dec({1.0, 1.0}, cls);
  RateSchedule schedule{{1.0, 1.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(remainder_exponent_scan(tmpl, schedule, Lattice::identity(2),
                                          Ball{1.0, {}}, {}),
                  Error);
}
