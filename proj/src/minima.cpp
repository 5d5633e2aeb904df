#include "latspec/minima.hpp"

#include <cmath>

#include "latspec/enumerate.hpp"

namespace latspec {

double volume_unit_ball(int d) {
  if (d < 1) throw Error(ErrorCode::BadArguments, "dimension must be >= 1");
  return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

SuccessiveMinima successive_minima(const Lattice& L) {
  if (L.dim() > kMaxDim)
    throw Error(ErrorCode::DimensionTooLarge, "successive minima need d <= 12");
  const int d = L.dim();
  Lattice red = lll_reduce(L);
  // Every minimum is attained inside the ball of radius max |b_i| of the
  // reduced basis: the basis itself already spans with those norms.
  double R = red.basis().rowwise().norm().maxCoeff();
  std::vector<LatticePoint> pts = points_in_ball(L, R, true);

  SuccessiveMinima out;
  Eigen::MatrixXd span(d, d);
  int rank = 0;
  for (const LatticePoint& p : pts) {
    if (p.norm == 0.0) continue;
    // Does p increase the span rank?
    span.col(rank) = p.embedding;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(span.leftCols(rank + 1));
    qr.setThreshold(1e-10);
    if (qr.rank() == rank + 1) {
      out.values.push_back(p.norm);
      out.witnesses.push_back(p.embedding);
      ++rank;
      if (rank == d) break;
    }
  }
  if (rank != d)
    throw Error(ErrorCode::SingularLattice, "failed to span R^d with ball points");
  return out;
}

double injectivity_radius_torus(const Lattice& L) {
  return successive_minima(L).values.front();
}

InvariantReport check_minkowski(const Lattice& L) {
  SuccessiveMinima sm = successive_minima(L);
  const int d = L.dim();
  double prod = 1.0;
  for (double mu : sm.values) prod *= mu;
  double mid = volume_unit_ball(d) * prod;
  double lo = std::pow(2.0, d) / std::tgamma(d + 1.0) * L.det();
  double hi = std::pow(2.0, d) * L.det();
  InvariantReport rep;
  rep.name = "minkowski_second_theorem";
  rep.lhs = lo;
  rep.rhs = hi;
  rep.ratio = mid / L.det();
  double slack = kRelTol * std::max(1.0, std::abs(hi));
  rep.satisfied = (mid >= lo - slack) && (mid <= hi + slack);
  return rep;
}

std::vector<InvariantReport> check_transference(const Lattice& L) {
  const int d = L.dim();
  SuccessiveMinima sm = successive_minima(L);
  SuccessiveMinima smd = successive_minima(dual(L));
  std::vector<InvariantReport> reports;
  for (int j = 1; j <= d; ++j) {
    double prod = sm.values[j - 1] * smd.values[d - j];
    InvariantReport rep;
    rep.name = "transference_j" + std::to_string(j);
    rep.lhs = 1.0;
    rep.rhs = static_cast<double>(d);
    rep.ratio = prod;
    rep.satisfied = prod >= 1.0 - kRelTol && prod <= d + kRelTol * d;
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace latspec
