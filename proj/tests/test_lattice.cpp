#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "latspec/enumerate.hpp"
#include "latspec/lattice.hpp"

using namespace latspec;

TEST_CASE("lattice construction and determinant") {
  Lattice z2 = Lattice::identity(2);
  CHECK(z2.det() == doctest::Approx(1.0));
  CHECK(z2.gram().isIdentity(1e-12));
  CHECK(z2.integral());

  Eigen::MatrixXd sing(2, 2);
  sing << 1, 2, 2, 4;
  CHECK_THROWS_AS(Lattice{sing}, Error);
  try {
    Lattice bad(sing);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularLattice);
  }
}

TEST_CASE("dual of a diagonal lattice inverts the diagonal") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = 0.5;
  Lattice D = dual(Lattice(m));
  CHECK(D.basis()(0, 0) == doctest::Approx(0.5));
  CHECK(D.basis()(1, 1) == doctest::Approx(2.0));
  CHECK(D.basis()(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("duality is an involution up to basis change") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + trial % 3;
    Lattice L = testutil::random_lattice(rng, d);
    Lattice LL = dual(dual(L));
    CHECK(LL.det() == doctest::Approx(L.det()).epsilon(1e-9));
    OrderedPrefix a = ordered_prefix(L, 20);
    OrderedPrefix b = ordered_prefix(LL, 20);
    for (int i = 0; i <= 20; ++i)
      CHECK(a.points[i].norm == doctest::Approx(b.points[i].norm).epsilon(1e-8));
  }
}

TEST_CASE("det(dual) * det = 1") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Lattice L = testutil::random_lattice(rng, 2 + trial % 4);
    CHECK(determinant(dual(L)) * determinant(L) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("LLL keeps the identity basis trivial") {
  Lattice r = lll_reduce(Lattice::identity(3));
  for (int i = 0; i < 3; ++i)
    CHECK(r.basis().row(i).norm() == doctest::Approx(1.0));
}

TEST_CASE("LLL reduces a skew basis of Z^2") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0, 100, 1;
  Lattice r = lll_reduce(Lattice(m));
  CHECK(r.basis().row(0).norm() <= std::sqrt(2.0) + 1e-9);
  CHECK(r.basis().row(1).norm() <= std::sqrt(2.0) + 1e-9);
  CHECK(std::abs(r.det()) == doctest::Approx(1.0));
  // The reduced Gram must be integral: same lattice as Z^2.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(r.gram()(i, j) == doctest::Approx(std::round(r.gram()(i, j))));
}

TEST_CASE("LLL preserves the determinant and yields a unimodular transform") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + trial % 4;
    Lattice L = testutil::random_integer_lattice(rng, d, 6);
    LLLResult res = lll_reduce_with_transform(L);
    CHECK(std::abs(res.reduced.det()) ==
          doctest::Approx(std::abs(L.det())).epsilon(1e-10));
    Eigen::MatrixXd T = res.transform.cast<double>();
    CHECK(std::abs(T.determinant()) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((T * L.basis() - res.reduced.basis()).norm() < 1e-9);
  }
}
