#include "latspec/lattice.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace latspec {

namespace {

bool is_integral_matrix(const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double v = m(i, j);
      if (v != std::floor(v) || std::abs(v) > 9.0e15) return false;
    }
  return true;
}

// Fraction-free Gaussian elimination; exact for integer matrices with
// moderate entries (d <= 12 here).
double bareiss_det(const Eigen::MatrixXd& m) {
  int n = static_cast<int>(m.rows());
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = static_cast<long double>(m(i, j));
  long double prev = 1.0L;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0.0L) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0.0L) { piv = i; break; }
      if (piv < 0) return 0.0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return static_cast<double>(sign * a[n - 1][n - 1]);
}

}  // namespace

Lattice::Lattice(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
  if (basis_.rows() < 1 || basis_.rows() != basis_.cols())
    throw Error(ErrorCode::BadArguments, "basis must be a square d x d matrix, d >= 1");
  integral_ = is_integral_matrix(basis_);
  gram_ = basis_ * basis_.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis_);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(basis_.rows() - 1);
  if (!(smin > 0.0) || smax / smin > 1e12)
    throw Error(ErrorCode::SingularLattice, "basis is singular or too ill-conditioned");
  if (integral_) {
    det_ = std::abs(bareiss_det(basis_));
  } else {
    det_ = std::abs(basis_.partialPivLu().determinant());
  }
}

Eigen::VectorXd Lattice::embed(const Eigen::VectorXi& coords) const {
  return basis_.transpose() * coords.cast<double>();
}

double determinant(const Lattice& L) { return L.det(); }

Lattice dual(const Lattice& L) {
  return Lattice(L.basis().inverse().transpose());
}

LLLResult lll_reduce_with_transform(const Lattice& L, double delta) {
  if (!(delta > 0.25 && delta < 1.0))
    throw Error(ErrorCode::BadArguments, "LLL delta must lie in (1/4, 1)");
  const int n = L.dim();
  Eigen::MatrixXd b = L.basis();
  using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
  IMat T = IMat::Identity(n, n);

  // Gram-Schmidt data, recomputed incrementally.
  Eigen::MatrixXd bstar = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd bn = Eigen::VectorXd::Zero(n);  // |b*_i|^2
  auto gso = [&]() {
    for (int i = 0; i < n; ++i) {
      bstar.row(i) = b.row(i);
      for (int j = 0; j < i; ++j) {
        mu(i, j) = b.row(i).dot(bstar.row(j)) / bn(j);
        bstar.row(i) -= mu(i, j) * bstar.row(j);
      }
      bn(i) = bstar.row(i).squaredNorm();
    }
  };
  gso();

  int k = 1;
  long iters = 0;
  while (k < n) {
    if (++iters > 1000000)
      throw Error(ErrorCode::BadArguments, "LLL failed to terminate");
    // Size-reduce b_k against b_{k-1}..b_0.
    for (int j = k - 1; j >= 0; --j) {
      double q = std::round(mu(k, j));
      if (q != 0.0) {
        b.row(k) -= q * b.row(j);
        T.row(k) -= static_cast<long long>(q) * T.row(j);
        for (int l = 0; l < j; ++l) mu(k, l) -= q * mu(j, l);
        mu(k, j) -= q;
      }
    }
    if (bn(k) >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bn(k - 1)) {
      ++k;
    } else {
      b.row(k).swap(b.row(k - 1));
      T.row(k).swap(T.row(k - 1));
      gso();
      k = std::max(k - 1, 1);
    }
  }
  return LLLResult{Lattice(b), std::move(T)};
}

Lattice lll_reduce(const Lattice& L, double delta) {
  return lll_reduce_with_transform(L, delta).reduced;
}

}  // namespace latspec
