#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "latspec/lattice.hpp"

namespace testutil {

// Brute-force count of lattice points u^T B with |u_i| <= box inside the
// closed (or open) ball of radius R around `center`. The box must be wide
// enough to cover the ball; callers pick it from the basis at hand.
inline std::int64_t box_count(const latspec::Lattice& L, double R,
                              const Eigen::VectorXd& center, bool closed,
                              int box) {
  const int d = L.dim();
  std::vector<int> u(d, -box);
  std::int64_t n = 0;
  for (;;) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) x += u[i] * L.basis().row(i).transpose();
    double dist = (x - center).norm();
    if (closed ? dist <= R * (1 + 1e-9) : dist < R * (1 - 1e-9)) ++n;
    int i = 0;
    while (i < d && u[i] == box) u[i++] = -box;
    if (i == d) break;
    ++u[i];
  }
  return n;
}

inline std::int64_t box_count(const latspec::Lattice& L, double R, bool closed,
                              int box) {
  return box_count(L, R, Eigen::VectorXd::Zero(L.dim()), closed, box);
}

inline latspec::Lattice random_lattice(std::mt19937& rng, int d,
                                       double span = 2.0) {
  std::uniform_real_distribution<double> u(-span, span);
  for (;;) {
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = u(rng);
    try {
      latspec::Lattice L(m);
      if (std::abs(L.det()) > 0.05) return L;
    } catch (const latspec::Error&) {
    }
  }
}

inline latspec::Lattice random_integer_lattice(std::mt19937& rng, int d,
                                               int span = 5) {
  std::uniform_int_distribution<int> u(-span, span);
  for (;;) {
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = u(rng);
    try {
      latspec::Lattice L(m);
      if (std::abs(L.det()) >= 1.0) return L;
    } catch (const latspec::Error&) {
    }
  }
}

}  // namespace testutil
