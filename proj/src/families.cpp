#include "latspec/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latspec/enumerate.hpp"
#include "latspec/spectra.hpp"

namespace latspec {

Lattice theta_lattice(int k, int d) {
  if (k < 1 || d < 2)
    throw Error(ErrorCode::BadArguments, "theta lattice needs k >= 1, d >= 2");
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(d, d);
  basis(0, 0) = std::pow(k, -1.0 + 1.0 / d);
  for (int i = 1; i < d; ++i) basis(i, i) = std::pow(k, 1.0 / d);
  return Lattice(basis);
}

Lattice klo_lattice(int k) {
  if (k < 1) throw Error(ErrorCode::BadArguments, "klo lattice needs k >= 1");
  double c = std::pow(k * static_cast<double>(k) - 0.25, -0.25);
  Eigen::MatrixXd basis(2, 2);
  basis << c, 0.0, c / 2.0, c * std::sqrt(k * static_cast<double>(k) - 0.25);
  return Lattice(basis);
}

Lattice moduli_lattice(const ModuliPoint2D& p) {
  if (!p.valid())
    throw Error(ErrorCode::BadArguments, "moduli point outside fundamental domain");
  double s = 1.0 / std::sqrt(p.b);
  Eigen::MatrixXd basis(2, 2);
  basis << s, 0.0, s * p.a, s * p.b;
  return Lattice(basis);
}

ExponentFit fit_loglog(const std::vector<std::pair<double, double>>& pairs,
                       double discard_fraction) {
  ExponentFit fit;
  std::vector<std::pair<double, double>> sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  std::size_t skip = static_cast<std::size_t>(discard_fraction * sorted.size());
  fit.pairs.assign(sorted.begin() + skip, sorted.end());
  const std::size_t n = fit.pairs.size();
  if (n < 2) return fit;  // degenerate regression: slope 0, r2 0
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& [k, v] : fit.pairs) {
    double x = std::log(k), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) return fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (const auto& [k, v] : fit.pairs) {
    double e = std::log(v) - (fit.slope * std::log(k) + fit.intercept);
    ss_res += e * e;
  }
  fit.r2 = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  return fit;
}

namespace {

ModuliPoint2D project_moduli(ModuliPoint2D p, double b_max) {
  p.a = std::clamp(p.a, -0.5 + 1e-9, 0.5);
  double b_lo = std::sqrt(std::max(0.0, 1.0 - p.a * p.a));
  p.b = std::clamp(p.b, b_lo, b_max);
  return p;
}

double lambda_objective(const ModuliPoint2D& p, int k) {
  return normalized_Lambda_k(moduli_lattice(p), k);
}

// Derivative-free simplex refinement, projected into the moduli domain.
// Eigenvalue crossings make the objective only piecewise smooth.
void nelder_mead(int k, double b_max, const RefineSpec& spec, ModuliPoint2D& best,
                 double& best_val,
                 std::vector<std::pair<ModuliPoint2D, double>>& trace,
                 double init_scale) {
  auto eval = [&](const ModuliPoint2D& q) {
    double v = lambda_objective(q, k);
    trace.emplace_back(q, v);
    return -v;  // minimize
  };
  struct Vertex {
    ModuliPoint2D p;
    double f;
  };
  std::vector<Vertex> vx;
  vx.push_back({best, eval(best)});
  for (int i = 0; i < 2; ++i) {
    ModuliPoint2D q = best;
    if (i == 0)
      q.a += init_scale;
    else
      q.b += init_scale;
    q = project_moduli(q, b_max);
    vx.push_back({q, eval(q)});
  }
  for (int iter = 0; iter < spec.iters; ++iter) {
    std::sort(vx.begin(), vx.end(),
              [](const Vertex& x, const Vertex& y) { return x.f < y.f; });
    double diam = std::max(
        std::hypot(vx[0].p.a - vx[1].p.a, vx[0].p.b - vx[1].p.b),
        std::hypot(vx[0].p.a - vx[2].p.a, vx[0].p.b - vx[2].p.b));
    if (diam < spec.tol) break;
    ModuliPoint2D centroid{(vx[0].p.a + vx[1].p.a) / 2.0,
                           (vx[0].p.b + vx[1].p.b) / 2.0};
    auto along = [&](double t) {
      ModuliPoint2D q{centroid.a + t * (centroid.a - vx[2].p.a),
                      centroid.b + t * (centroid.b - vx[2].p.b)};
      return project_moduli(q, b_max);
    };
    ModuliPoint2D refl = along(1.0);
    double f_refl = eval(refl);
    if (f_refl < vx[0].f) {
      ModuliPoint2D expd = along(2.0);
      double f_exp = eval(expd);
      if (f_exp < f_refl)
        vx[2] = {expd, f_exp};
      else
        vx[2] = {refl, f_refl};
    } else if (f_refl < vx[1].f) {
      vx[2] = {refl, f_refl};
    } else {
      ModuliPoint2D con = along(f_refl < vx[2].f ? 0.5 : -0.5);
      double f_con = eval(con);
      if (f_con < std::min(f_refl, vx[2].f)) {
        vx[2] = {con, f_con};
      } else {
        for (int i = 1; i < 3; ++i) {
          ModuliPoint2D q{(vx[i].p.a + vx[0].p.a) / 2.0,
                          (vx[i].p.b + vx[0].p.b) / 2.0};
          q = project_moduli(q, b_max);
          vx[i] = {q, eval(q)};
        }
      }
    }
  }
  for (const Vertex& v : vx) {
    if (-v.f > best_val) {
      best_val = -v.f;
      best = v.p;
    }
  }
}

}  // namespace

OptimizeReport optimize_torus_2d(int k, const TorusGridSpec& grid,
                                 const RefineSpec& refine) {
  if (k < 1) throw Error(ErrorCode::BadArguments, "k must be >= 1");
  if (grid.a_steps < 1 || grid.b_steps < 1)
    throw Error(ErrorCode::EmptyGrid, "grid must have at least one cell");
  double b_max = grid.b_max > 0.0 ? grid.b_max : 2.0 * k;
  double b_lo = std::sqrt(3.0) / 2.0;
  if (b_max < b_lo) throw Error(ErrorCode::EmptyGrid, "b_max below the domain");

  ModuliPoint2D best{0.0, 1.0};
  double best_val = -1.0;
  // Grid ties resolved by evaluation order: ascending a, then b.
  auto consider = [&](const ModuliPoint2D& p) {
    double v = lambda_objective(p, k);
    if (v > best_val) {
      best_val = v;
      best = p;
    }
  };

  for (int i = 0; i < grid.a_steps; ++i) {
    double a = -0.5 + (i + 1) * (1.0 / grid.a_steps);
    double lo = std::max(b_lo, std::sqrt(std::max(0.0, 1.0 - a * a)));
    for (int j = 0; j < grid.b_steps; ++j) {
      double b = b_lo + j * (b_max - b_lo) / std::max(1, grid.b_steps - 1);
      if (b < lo - 1e-12) continue;
      consider(project_moduli({a, b}, b_max));
    }
  }
  // Known candidate points, evaluated alongside the grid.
  consider({0.0, 1.0});                                // square
  consider({0.5, std::sqrt(3.0) / 2.0});               // hexagonal
  if (k % 2 == 0) {
    int k0 = k / 2;
    double b = std::sqrt(k0 * static_cast<double>(k0) - 0.25);
    if (b <= b_max) consider({0.5, b});
  }

  OptimizeReport report;
  report.k = k;
  double cell = std::max(1.0 / grid.a_steps, (b_max - b_lo) / grid.b_steps);
  nelder_mead(k, b_max, refine, best, best_val, report.trace, 0.5 * cell);
  report.argmax = best;
  report.value = best_val;

  Lattice torus = moduli_lattice(best);
  SuccessiveMinima sm = successive_minima(dual(torus));
  report.mu1 = sm.values.front();
  report.mu_d = sm.values.back();
  report.inj = injectivity_radius_torus(torus);
  return report;
}

namespace {

double klein_lambda_k(double a, int k) {
  KleinBottle K(a, 2.0 / a);
  return klein_spectrum(K, k).eigenvalues.back();
}

}  // namespace

OptimizeReport optimize_klein(int k, const KleinBracket& bracket, double tol) {
  if (!(bracket.a_min > 0.0) || !(bracket.a_max > bracket.a_min))
    throw Error(ErrorCode::EmptyBracket, "need 0 < a_min < a_max");
  if (k < 1) throw Error(ErrorCode::BadArguments, "k must be >= 1");

  OptimizeReport report;
  report.k = k;
  auto eval = [&](double a) {
    double v = klein_lambda_k(a, k);
    report.trace.emplace_back(ModuliPoint2D{a, 2.0 / a}, v);
    return v;
  };

  // Coarse log-spaced scan; the objective has many local maxima in a and
  // their spacing shrinks with k, so the sampling density grows with k.
  const int coarse = std::max(256, 64 * k);
  double best_a = bracket.a_min;
  double best_v = -1.0;
  std::vector<double> as(coarse);
  for (int i = 0; i < coarse; ++i) {
    as[i] = bracket.a_min *
            std::pow(bracket.a_max / bracket.a_min, i / double(coarse - 1));
    double v = eval(as[i]);
    if (v > best_v) {
      best_v = v;
      best_a = as[i];
    }
  }
  // Golden-section refinement between the neighbours of the best sample.
  auto it = std::lower_bound(as.begin(), as.end(), best_a);
  double lo = it == as.begin() ? bracket.a_min : *(it - 1);
  double hi = (it + 1) == as.end() ? bracket.a_max : *(it + 1);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = eval(x1), f2 = eval(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = eval(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = eval(x1);
    }
  }
  double mid = (lo + hi) / 2.0;
  double fm = eval(mid);
  if (fm > best_v) {
    best_v = fm;
    best_a = mid;
  }

  report.argmax = ModuliPoint2D{best_a, 2.0 / best_a};
  report.value = best_v;
  report.inj = klein_injectivity(KleinBottle(best_a, 2.0 / best_a));
  SuccessiveMinima sm =
      successive_minima(klein_associated_lattice(KleinBottle(best_a, 2.0 / best_a)));
  report.mu1 = sm.values.front();
  report.mu_d = sm.values.back();
  return report;
}

DominanceResult klo_dominance_check(int k, int samples) {
  if (k < 2) throw Error(ErrorCode::BadArguments, "dominance check needs k >= 2");
  if (samples < 1) throw Error(ErrorCode::EmptyGrid, "need at least one sample");
  double reference = normalized_Lambda_k(klo_lattice(k), 2 * k);

  double r_min = static_cast<double>(k - 1);
  double b_max = 4.0 * k;
  int na = std::max(2, static_cast<int>(std::sqrt(samples / 16.0)));
  int nb = (samples + na - 1) / na;
  DominanceResult result;
  result.dominant = true;
  result.worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < na; ++i) {
    double a = -0.5 + (i + 1) * (1.0 / na);
    double b_lo = std::sqrt(std::max(1.0, r_min * r_min - a * a));
    for (int j = 0; j < nb; ++j) {
      double b = b_lo + j * (b_max - b_lo) / std::max(1, nb - 1);
      ModuliPoint2D p{a, b};
      if (!p.valid()) continue;
      double margin = reference - lambda_objective(p, 2 * k);
      result.worst_margin = std::min(result.worst_margin, margin);
      if (margin < -kRelTol * reference) result.dominant = false;
    }
  }
  return result;
}

DegeneracyScan degeneracy_scan(const std::vector<int>& k_list, ScanMode mode) {
  if (k_list.empty()) throw Error(ErrorCode::EmptyGrid, "empty k list");
  DegeneracyScan scan;
  std::vector<std::pair<double, double>> mu1_pairs, mud_pairs, inj_pairs;
  for (int k : k_list) {
    // Klein: K(a, 2/a) and K(2/a, a) carry tied lambda_k near the maximizer,
    // so the unrestricted argmax hops between the two mirror branches (whose
    // inj differ by a factor 2) and poisons the exponent fit. Scanning the
    // a <= b half of the moduli space keeps one continuous branch.
    OptimizeReport rep = mode == ScanMode::Torus2D
                             ? optimize_torus_2d(k)
                             : optimize_klein(k, KleinBracket{0.02, std::sqrt(2.0)});
    mu1_pairs.emplace_back(k, rep.mu1);
    mud_pairs.emplace_back(k, rep.mu_d);
    inj_pairs.emplace_back(k, rep.inj);
    rep.trace.clear();  // keep scan reports compact
    scan.reports.push_back(std::move(rep));
  }
  // Smallest 20% of k values are pre-asymptotic; drop them from the fits.
  scan.mu1_fit = fit_loglog(mu1_pairs, 0.2);
  scan.mud_fit = fit_loglog(mud_pairs, 0.2);
  scan.inj_fit = fit_loglog(inj_pairs, 0.2);
  return scan;
}

}  // namespace latspec
