#include "latspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace latspec {

namespace {
constexpr double kFourPiSq = 4.0 * M_PI * M_PI;
}

SpectrumPrefix torus_spectrum(const Lattice& L, int k) {
  OrderedPrefix prefix = ordered_prefix(dual(L), k);
  SpectrumPrefix out;
  out.eigenvalues.reserve(k + 1);
  for (const LatticePoint& p : prefix.points)
    out.eigenvalues.push_back(kFourPiSq * p.norm * p.norm);
  return out;
}

std::int64_t torus_counting(const Lattice& L, double lam, bool strict) {
  if (!(lam > 0.0)) throw Error(ErrorCode::BadArguments, "lam must be > 0");
  return count_in_ball(dual(L), std::sqrt(lam) / (2.0 * M_PI), !strict);
}

double normalized_Lambda_k(const Lattice& L, int k) {
  if (k < 1) throw Error(ErrorCode::BadArguments, "k must be >= 1");
  double nk = kth_norm(dual(L), k);
  return std::pow(L.det(), 2.0 / L.dim()) * kFourPiSq * nk * nk;
}

namespace {

// All Klein eigenvalues <= lam, with labels.
std::vector<std::tuple<double, int, int>> klein_values_up_to(
    const KleinBottle& K, double lam) {
  std::vector<std::tuple<double, int, int>> vals;
  double slack = lam * (1.0 + 2.0 * kRelTol);
  int M = static_cast<int>(K.a * std::sqrt(slack) / (2.0 * M_PI)) + 1;
  int N = static_cast<int>(K.b * std::sqrt(slack) / (2.0 * M_PI)) + 1;
  for (int m = -M; m <= M; ++m) {
    for (int n = 0; n <= N; ++n) {
      if (n == 0 && (m % 2 != 0)) continue;  // excluded glide axis points
      double v = kFourPiSq * (static_cast<double>(m) * m / (K.a * K.a) +
                              static_cast<double>(n) * n / (K.b * K.b));
      if (v <= slack) vals.emplace_back(v, m, n);
    }
  }
  std::sort(vals.begin(), vals.end());
  return vals;
}

}  // namespace

SpectrumPrefix klein_spectrum(const KleinBottle& K, int k) {
  if (k < 0) throw Error(ErrorCode::BadArguments, "k must be >= 0");
  // Half-ellipse area heuristic for the initial cutoff, grown geometrically.
  double lam = 8.0 * M_PI * (k + 2) / (K.a * K.b) + kFourPiSq / (K.a * K.a) +
               kFourPiSq / (K.b * K.b);
  std::vector<std::tuple<double, int, int>> vals;
  for (;;) {
    vals = klein_values_up_to(K, lam);
    if (static_cast<int>(vals.size()) > k) break;
    lam *= 1.5;
  }
  SpectrumPrefix out;
  for (int j = 0; j <= k; ++j) {
    out.eigenvalues.push_back(std::get<0>(vals[j]));
    out.labels.emplace_back(std::get<1>(vals[j]), std::get<2>(vals[j]));
  }
  return out;
}

std::int64_t klein_counting(const KleinBottle& K, double lam, bool strict) {
  if (!(lam > 0.0)) throw Error(ErrorCode::BadArguments, "lam must be > 0");
  std::int64_t n = 0;
  double lo = lam * (1.0 - kRelTol);
  double hi = lam * (1.0 + kRelTol);
  for (const auto& [v, m, nn] : klein_values_up_to(K, lam)) {
    (void)m;
    (void)nn;
    if (strict ? (v < lo) : (v <= hi)) ++n;
  }
  return n;
}

double klein_injectivity(const KleinBottle& K) {
  return std::min(K.a, K.b / 2.0);
}

Lattice klein_associated_lattice(const KleinBottle& K) {
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(2, 2);
  basis(0, 0) = 2.0 * M_PI / K.a;
  basis(1, 1) = 2.0 * M_PI / K.b;
  return Lattice(basis);
}

}  // namespace latspec
