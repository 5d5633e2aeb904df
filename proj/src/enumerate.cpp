#include "latspec/enumerate.hpp"

#include <algorithm>
#include <cmath>

#include "latspec/minima.hpp"

namespace latspec {

namespace {

void check_dim(const Lattice& L) {
  if (L.dim() > kMaxDim)
    throw Error(ErrorCode::DimensionTooLarge,
                "exact enumeration supports d <= 12");
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

struct Enumerator {
  int d;
  Eigen::MatrixXd U;       // upper-triangular Cholesky factor, G = U^T U
  Eigen::VectorXd w;       // target in reduced-basis coordinates
  double bound_sq;         // slacked squared radius for the tree search
  std::int64_t budget;
  std::int64_t nodes = 0;

  // visit(u, dist_sq) for every u with |U(u - w)|^2 <= bound_sq
  template <typename Visit>
  void run(Visit&& visit) {
    Eigen::VectorXi u = Eigen::VectorXi::Zero(d);
    Eigen::VectorXd partial = Eigen::VectorXd::Zero(d + 1);  // S_i, S_d = 0
    descend(d - 1, u, partial, visit);
  }

  template <typename Visit>
  void descend(int i, Eigen::VectorXi& u, Eigen::VectorXd& partial,
               Visit&& visit) {
    // t = sum_{j>i} U(i,j) (u_j - w_j)
    double t = 0.0;
    for (int j = i + 1; j < d; ++j) t += U(i, j) * (u(j) - w(j));
    double rem = bound_sq - partial(i + 1);
    if (rem < 0.0) return;
    double half = std::sqrt(rem) / U(i, i);
    double mid = w(i) - t / U(i, i);
    long lo = static_cast<long>(std::ceil(mid - half - 1e-12));
    long hi = static_cast<long>(std::floor(mid + half + 1e-12));
    for (long v = lo; v <= hi; ++v) {
      if (++nodes > budget)
        throw Error(ErrorCode::EnumerationBudgetExceeded,
                    "enumeration tree exceeded node budget");
      double term = U(i, i) * (v - w(i)) + t;
      double s = partial(i + 1) + term * term;
      if (s > bound_sq) continue;
      u(i) = v;
      if (i == 0) {
        visit(u, s);
      } else {
        partial(i) = s;
        descend(i - 1, u, partial, visit);
      }
    }
    u(i) = 0;
  }
};

// Shared driver: enumerates with radius slack and hands exact-filtered points
// (distance to center and reduced coordinates) to the sink.
template <typename Sink>
void enumerate_ball(const Lattice& L, double R, const Eigen::VectorXd& center,
                    bool closed, const EnumOptions& opts, Sink&& sink) {
  check_dim(L);
  if (R < 0.0) throw Error(ErrorCode::BadArguments, "radius must be >= 0");
  if (center.size() != L.dim())
    throw Error(ErrorCode::BadArguments, "center dimension mismatch");

  LLLResult red = lll_reduce_with_transform(L);
  const Lattice& Lr = red.reduced;

  Eigen::LLT<Eigen::MatrixXd> llt(Lr.gram());
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::SingularLattice, "Gram matrix not positive definite");

  Enumerator en;
  en.d = L.dim();
  en.U = llt.matrixL().transpose();
  en.w = Lr.basis().transpose().partialPivLu().solve(center);
  double r_slack = R * (1.0 + 2.0 * kRelTol) + 1e-300;
  en.bound_sq = r_slack * r_slack;
  en.budget = opts.budget;

  // Closed balls absorb boundary points within kRelTol; open balls exclude a
  // strictly thinner shell so that a caller-side bump of kRelTol (e.g. the
  // spectral lam*(1 + 1e-9) probe, worth kRelTol/2 in radius) pulls exact
  // boundary points inside.
  double r_closed = R * (1.0 + kRelTol);
  double r_open = R * (1.0 - 0.1 * kRelTol);
  en.run([&](const Eigen::VectorXi& u, double dist_sq) {
    double dist = std::sqrt(std::max(dist_sq, 0.0));
    if (closed ? (dist <= r_closed) : (dist < r_open)) sink(u, red, dist);
  });
}

}  // namespace

std::vector<LatticePoint> points_in_ball(const Lattice& L, double R,
                                         const Eigen::VectorXd& center,
                                         bool closed, const EnumOptions& opts) {
  std::vector<LatticePoint> out;
  enumerate_ball(L, R, center, closed, opts,
                 [&](const Eigen::VectorXi& u, const LLLResult& red, double) {
                   LatticePoint p;
                   p.coords = red.transform.transpose().cast<int>() * u;
                   p.embedding = red.reduced.basis().transpose() * u.cast<double>();
                   p.norm = p.embedding.norm();
                   out.push_back(std::move(p));
                 });
  std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return lex_less(a.embedding, b.embedding);
  });
  return out;
}

std::vector<LatticePoint> points_in_ball(const Lattice& L, double R,
                                         bool closed, const EnumOptions& opts) {
  return points_in_ball(L, R, Eigen::VectorXd::Zero(L.dim()), closed, opts);
}

std::int64_t count_in_ball(const Lattice& L, double R,
                           const Eigen::VectorXd& center, bool closed,
                           const EnumOptions& opts) {
  std::int64_t n = 0;
  enumerate_ball(L, R, center, closed, opts,
                 [&](const Eigen::VectorXi&, const LLLResult&, double) { ++n; });
  return n;
}

std::int64_t count_in_ball(const Lattice& L, double R, bool closed,
                           const EnumOptions& opts) {
  return count_in_ball(L, R, Eigen::VectorXd::Zero(L.dim()), closed, opts);
}

OrderedPrefix ordered_prefix(const Lattice& L, int k, const EnumOptions& opts) {
  check_dim(L);
  if (k < 0) throw Error(ErrorCode::BadArguments, "k must be >= 0");
  const int d = L.dim();
  // Radius guess from the expected point density, grown geometrically until
  // more than k points are inside.
  double R = std::pow((k + 2) * L.det() / volume_unit_ball(d), 1.0 / d);
  Lattice red = lll_reduce(L);
  double shortest = red.basis().rowwise().norm().minCoeff();
  R = std::max(R, shortest * 1.01);
  std::vector<LatticePoint> pts;
  for (;;) {
    pts = points_in_ball(L, R, true, opts);
    if (static_cast<int>(pts.size()) > k) break;
    R *= 1.5;
  }

  OrderedPrefix prefix;
  // Tie groups over the full enumeration, so a group is never truncated in a
  // way that changes the chosen representatives.
  std::size_t i = 0;
  while (i < pts.size() && prefix.points.size() <= static_cast<std::size_t>(k) + 0) {
    std::size_t j = i + 1;
    while (j < pts.size() && nearly_equal(pts[j].norm, pts[j - 1].norm)) ++j;
    std::sort(pts.begin() + i, pts.begin() + j,
              [](const LatticePoint& a, const LatticePoint& b) {
                return lex_less(a.embedding, b.embedding);
              });
    std::vector<int> group;
    for (std::size_t l = i; l < j && prefix.points.size() <= static_cast<std::size_t>(k); ++l) {
      group.push_back(static_cast<int>(prefix.points.size()));
      prefix.points.push_back(pts[l]);
    }
    if (!group.empty()) prefix.tie_groups.push_back(std::move(group));
    i = j;
  }
  return prefix;
}

double kth_norm(const Lattice& L, int k, const EnumOptions& opts) {
  return ordered_prefix(L, k, opts).points.at(k).norm;
}

double lambda_tilde(const Lattice& L, int k, const EnumOptions& opts) {
  if (k < 1) throw Error(ErrorCode::BadArguments, "k must be >= 1");
  return std::pow(L.det(), -1.0 / L.dim()) * kth_norm(L, k, opts);
}

}  // namespace latspec
