#pragma once

#include <Eigen/Dense>

#include "latspec/common.hpp"

namespace latspec {

// A full-rank lattice in R^d. Rows of `basis` are the generators, so a point
// with integer coordinates u is u^T * basis. The Gram matrix and determinant
// are cached at construction.
class Lattice {
 public:
  explicit Lattice(Eigen::MatrixXd basis);

  static Lattice identity(int d) {
    return Lattice(Eigen::MatrixXd::Identity(d, d));
  }

  int dim() const { return static_cast<int>(basis_.rows()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  double det() const { return det_; }

  // True when every basis entry is an integer that fits exactly in a double.
  bool integral() const { return integral_; }

  // Embedding of the point with integer coordinates u.
  Eigen::VectorXd embed(const Eigen::VectorXi& coords) const;

  Lattice scaled(double mu) const { return Lattice(mu * basis_); }

 private:
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd gram_;
  double det_ = 0.0;
  bool integral_ = false;
};

double determinant(const Lattice& L);

// Dual lattice: generator matrix is the inverse transpose.
Lattice dual(const Lattice& L);

// LLL reduction with parameter delta in (1/4, 1). Returns a basis of the same
// lattice. Default delta 0.99.
Lattice lll_reduce(const Lattice& L, double delta = 0.99);

// LLL with the unimodular transform: reduced.basis = T * L.basis, T integer
// with det +-1.
struct LLLResult {
  Lattice reduced;
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> transform;
};
LLLResult lll_reduce_with_transform(const Lattice& L, double delta = 0.99);

}  // namespace latspec
