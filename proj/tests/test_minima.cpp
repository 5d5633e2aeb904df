#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "latspec/families.hpp"
#include "latspec/minima.hpp"

using namespace latspec;

namespace {

// Exhaustive successive minima over integer coordinates in [-box, box]^d.
std::vector<double> brute_minima(const Lattice& L, int box) {
  const int d = L.dim();
  std::vector<std::pair<double, Eigen::VectorXd>> vecs;
  std::vector<int> u(d, -box);
  for (;;) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      x += u[i] * L.basis().row(i).transpose();
      zero = zero && u[i] == 0;
    }
    if (!zero) vecs.emplace_back(x.norm(), x);
    int i = 0;
    while (i < d && u[i] == box) u[i++] = -box;
    if (i == d) break;
    ++u[i];
  }
  std::sort(vecs.begin(), vecs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> mins;
  Eigen::MatrixXd span(d, 0);
  for (const auto& [n, x] : vecs) {
    Eigen::MatrixXd cand(d, span.cols() + 1);
    cand << span, x;
    if (Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(cand).rank() >
        span.cols()) {
      span = cand;
      mins.push_back(n);
      if (static_cast<int>(mins.size()) == d) break;
    }
  }
  return mins;
}

}  // namespace

TEST_CASE("successive minima of Z^d are all one") {
  for (int d : {2, 3, 5}) {
    SuccessiveMinima sm = successive_minima(Lattice::identity(d));
    REQUIRE(static_cast<int>(sm.values.size()) == d);
    for (double v : sm.values) CHECK(v == doctest::Approx(1.0));
  }
}

TEST_CASE("successive minima of Theta_4") {
  SuccessiveMinima sm = successive_minima(theta_lattice(2, 2));
  CHECK(sm.values[0] == doctest::Approx(std::pow(2.0, -0.5)));
  CHECK(sm.values[1] == doctest::Approx(std::pow(2.0, 0.5)));
}

TEST_CASE("successive minima match brute force on random 3D integer lattices") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    Lattice L = lll_reduce(testutil::random_integer_lattice(rng, 3, 4));
    SuccessiveMinima sm = successive_minima(L);
    std::vector<double> want = brute_minima(L, 20);
    REQUIRE(want.size() == 3);
    for (int j = 0; j < 3; ++j)
      CHECK(sm.values[j] == doctest::Approx(want[j]).epsilon(1e-9));
  }
}

TEST_CASE("witnesses embed to their stated norms and are independent") {
  std::mt19937 rng(32);
  Lattice L = testutil::random_lattice(rng, 4);
  SuccessiveMinima sm = successive_minima(L);
  Eigen::MatrixXd W(4, 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(sm.witnesses[j].norm() == doctest::Approx(sm.values[j]).epsilon(1e-9));
    W.col(j) = sm.witnesses[j];
  }
  CHECK(std::abs(W.determinant()) > 1e-9);
}

TEST_CASE("injectivity radius") {
  CHECK(injectivity_radius_torus(Lattice::identity(2)) == doctest::Approx(1.0));
  CHECK(injectivity_radius_torus(theta_lattice(2, 2)) ==
        doctest::Approx(std::pow(2.0, -0.5)));
  CHECK(injectivity_radius_torus(dual(theta_lattice(2, 2))) ==
        doctest::Approx(std::pow(2.0, -0.5)));
}

TEST_CASE("Minkowski second theorem constants") {
  InvariantReport z2 = check_minkowski(Lattice::identity(2));
  CHECK(z2.satisfied);
  CHECK(z2.ratio == doctest::Approx(M_PI));
  InvariantReport t4 = check_minkowski(theta_lattice(2, 2));
  CHECK(t4.satisfied);
  CHECK(t4.ratio == doctest::Approx(M_PI));
}

TEST_CASE("transference products for self-dual and Theta_4") {
  for (const InvariantReport& r : check_transference(Lattice::identity(3))) {
    CHECK(r.satisfied);
    CHECK(r.lhs == doctest::Approx(1.0));
  }
  std::vector<InvariantReport> t4 = check_transference(theta_lattice(2, 2));
  CHECK(t4[0].lhs == doctest::Approx(1.0));
  CHECK(t4[0].satisfied);
}

TEST_CASE("Minkowski and transference hold on random lattices") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + trial % 5;
    Lattice L = testutil::random_lattice(rng, d, 3.0);
    CHECK(check_minkowski(L).satisfied);
    for (const InvariantReport& r : check_transference(L)) CHECK(r.satisfied);
  }
}

TEST_CASE("minima scale linearly") {
  std::mt19937 rng(41);
  Lattice L = testutil::random_lattice(rng, 3);
  SuccessiveMinima a = successive_minima(L);
  SuccessiveMinima b = successive_minima(L.scaled(2.5));
  for (int j = 0; j < 3; ++j)
    CHECK(b.values[j] == doctest::Approx(2.5 * a.values[j]).epsilon(1e-9));
}

TEST_CASE("unit ball volumes") {
  CHECK(volume_unit_ball(1) == doctest::Approx(2.0));
  CHECK(volume_unit_ball(2) == doctest::Approx(M_PI));
  CHECK(volume_unit_ball(10) > 2.0);
  CHECK(volume_unit_ball(11) < 2.0);
}
