#include "latspec/acceptance.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "latspec/aniso.hpp"
#include "latspec/enumerate.hpp"
#include "latspec/families.hpp"
#include "latspec/minima.hpp"
#include "latspec/spectra.hpp"
#include "latspec/weyl.hpp"

namespace latspec {

namespace {

Lattice random_lattice(std::mt19937& rng, int d, double span) {
  std::uniform_real_distribution<double> u(-span, span);
  for (;;) {
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = u(rng);
    try {
      return lll_reduce(Lattice(m));
    } catch (const Error&) {
      // singular draw, try again
    }
  }
}

// 1. Theta-family identity Lambda~_{2k}(Theta_2k) = k^{1/d}.
CriterionResult theta_identity() {
  CriterionResult r{1, "theta_family_identity", true, ""};
  double worst = 0.0;
  for (int d : {2, 3, 4}) {
    for (int k = 1; k <= 50; ++k) {
      double got = lambda_tilde(theta_lattice(k, d), 2 * k);
      double want = std::pow(k, 1.0 / d);
      double rel = std::abs(got - want) / want;
      worst = std::max(worst, rel);
      if (rel > 1e-9) r.passed = false;
    }
  }
  std::ostringstream os;
  os << "max relative error " << worst;
  r.detail = os.str();
  return r;
}

// 2. Theta discrepancy 2d-1 (non-strict) and 1 (strict).
CriterionResult theta_disc() {
  CriterionResult r{2, "theta_discrepancy", true, ""};
  for (int d = 2; d <= 6 && r.passed; ++d) {
    for (int k = 1; k <= 50; ++k) {
      double ns = theta_discrepancy(k, d, false);
      double st = theta_discrepancy(k, d, true);
      if (std::abs(ns - (2 * d - 1)) > 1e-6 || std::abs(st - 1.0) > 1e-6) {
        std::ostringstream os;
        os << "mismatch at k=" << k << " d=" << d << ": non-strict " << ns
           << ", strict " << st;
        r.detail = os.str();
        r.passed = false;
        break;
      }
    }
  }
  if (r.passed) r.detail = "2d-1 non-strict and 1 strict for k<=50, d<=6";
  return r;
}

// 3. Transference + Minkowski on 1000 random lattices.
CriterionResult transference_minkowski(std::mt19937& rng) {
  CriterionResult r{3, "transference_minkowski", true, ""};
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int d = 2 + static_cast<int>(rng() % 5);  // 2..6
    Lattice L = random_lattice(rng, d, 3.0);
    for (const InvariantReport& rep : check_transference(L))
      if (!rep.satisfied) ++violations;
    if (!check_minkowski(L).satisfied) ++violations;
  }
  std::ostringstream os;
  os << violations << " violations over 1000 lattices";
  r.detail = os.str();
  r.passed = violations == 0;
  return r;
}

// 4. N(Gamma; B_1) = n_eps(B_1; Z^d; 0) on 100 random lattices.
CriterionResult equiveps(std::mt19937& rng) {
  CriterionResult r{4, "equiveps_count_equality", true, ""};
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + static_cast<int>(rng() % 3);  // 2..4
    Lattice L = random_lattice(rng, d, 2.0);
    std::int64_t direct = count_in_ball(L, 1.0, true);
    TepsResult teps = lattice_to_Teps(L);
    std::int64_t via_teps =
        n_eps(teps.decomposition, Ball{1.0, {}}, Lattice::identity(d));
    if (direct != via_teps) ++mismatches;
  }
  std::ostringstream os;
  os << mismatches << " mismatches over 100 lattices";
  r.detail = os.str();
  r.passed = mismatches == 0;
  return r;
}

// 5. Weyl bound ratio stability over the dual(Theta_2k) family.
CriterionResult weyl_stability() {
  CriterionResult r{5, "weyl_bound_stability", true, ""};
  double global_C = 0.0;
  for (int k = 1; k <= 30; ++k) {
    Lattice L = dual(theta_lattice(k, 2));
    WeylScanReport rep = weyl_scan(L, geometric_grid(2.0 * M_PI, 1e4, 40));
    double max_all = rep.fitted_C;
    double max_fine = 0.0;
    for (std::size_t i = rep.rows.size() / 2; i < rep.rows.size(); ++i)
      max_fine = std::max(max_fine, rep.rows[i].ratio);
    if (!(max_fine <= 2.0 * max_all) || !std::isfinite(max_all)) r.passed = false;
    global_C = std::max(global_C, max_all);
  }
  std::ostringstream os;
  os << "global fitted_C " << global_C;
  r.detail = os.str();
  if (!std::isfinite(global_C)) r.passed = false;
  return r;
}

// 6. KLO dominance for k = 2..10.
CriterionResult klo_dominance() {
  CriterionResult r{6, "klo_dominance", true, ""};
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= 10; ++k) {
    DominanceResult res = klo_dominance_check(k, 1000);
    worst = std::min(worst, res.worst_margin);
    if (res.worst_margin < -1e-9) r.passed = false;
  }
  std::ostringstream os;
  os << "worst margin " << worst;
  r.detail = os.str();
  return r;
}

// 7. Klein degeneracy exponent: inj slope -0.5 +- 0.15.
CriterionResult klein_degeneracy(bool fast) {
  CriterionResult r{7, "klein_degeneracy_exponent", true, ""};
  std::vector<int> ks;
  for (int k = 10; k <= (fast ? 100 : 200); k += 10) ks.push_back(k);
  DegeneracyScan scan = degeneracy_scan(ks, ScanMode::Klein);
  double slope = scan.inj_fit.slope;
  r.passed = std::abs(slope + 0.5) <= 0.15;
  std::ostringstream os;
  os << "inj slope " << slope << " (target -0.5 +- 0.15)";
  r.detail = os.str();
  return r;
}

// 8. 2D torus degeneracy direction: dual-side mu_2 and mu_1 slopes.
CriterionResult torus_degeneracy(bool fast) {
  CriterionResult r{8, "torus2d_degeneracy_direction", true, ""};
  std::vector<int> ks;
  for (int k = 4; k <= (fast ? 40 : 100); k += 2) ks.push_back(k);
  DegeneracyScan scan = degeneracy_scan(ks, ScanMode::Torus2D);
  double mu1_slope = scan.mu1_fit.slope;
  double mud_slope = scan.mud_fit.slope;
  r.passed = mud_slope >= 0.5 - 0.15 && mu1_slope <= -0.5 + 0.15;
  std::ostringstream os;
  os << "mu1 slope " << mu1_slope << ", mu_d slope " << mud_slope;
  r.detail = os.str();
  return r;
}

// 9. Desk-scale counting argument: #(B_{sqrt k - t} cap Z^2) > 2k.
CriterionResult counting_argument() {
  CriterionResult r{9, "counting_argument_z2", true, ""};
  Lattice z2 = Lattice::identity(2);
  for (int k = 20; k <= 500; ++k) {
    std::int64_t n = count_in_ball(z2, std::sqrt(static_cast<double>(k)) - 0.1, true);
    if (n <= 2 * k) {
      std::ostringstream os;
      os << "failed at k=" << k << ": count " << n;
      r.detail = os.str();
      r.passed = false;
      return r;
    }
  }
  r.detail = "count exceeds 2k for all 20 <= k <= 500";
  return r;
}

// 10. Anisotropic remainder bound on Z^2 and a random unimodular lattice.
CriterionResult aniso_remainder(std::mt19937& rng) {
  CriterionResult r{10, "aniso_remainder_bound", true, ""};
  std::uniform_real_distribution<double> ua(-0.5, 0.5), ub(1.0, 2.0);
  ModuliPoint2D p{ua(rng), 0.0};
  p.b = ub(rng) + std::sqrt(std::max(0.0, 1.0 - p.a * p.a));
  std::vector<Lattice> lattices;
  lattices.push_back(Lattice::identity(2));
  lattices.push_back(moduli_lattice(p));

  std::vector<Block> axes(2);
  axes[0].basis = Eigen::MatrixXd::Identity(2, 2).col(0);
  axes[1].basis = Eigen::MatrixXd::Identity(2, 2).col(1);
  axes[0].rate = axes[1].rate = 1.0;
  Classification all_V;
  all_V.V = {0, 1};
  Decomposition tmpl = Decomposition::make(axes, all_V);

  std::vector<double> scales;
  for (double s = 0.5; s >= 1.0 / 128.0 - 1e-12; s /= 2.0) scales.push_back(s);

  double worst_growth = 0.0;
  for (const Lattice& L : lattices) {
    for (const std::vector<double>& alphas :
         {std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 0.0}}) {
      RateSchedule schedule{{1.0, 1.0}, alphas};
      AnisoReport rep =
          remainder_exponent_scan(tmpl, schedule, L, Ball{1.0, {}}, scales);
      double max_all = 0.0, max_fine = 0.0;
      for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        double ratio = std::abs(rep.rows[i].remainder) / rep.rows[i].predicted;
        max_all = std::max(max_all, ratio);
        if (i >= rep.rows.size() / 2) max_fine = std::max(max_fine, ratio);
      }
      if (!std::isfinite(rep.fitted_C) || max_fine > 2.0 * max_all)
        r.passed = false;
      worst_growth = std::max(worst_growth, max_fine / std::max(max_all, 1e-300));
    }
  }
  std::ostringstream os;
  os << "fine-half / overall ratio at most " << worst_growth;
  r.detail = os.str();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& filter,
                                            std::uint64_t seed, bool fast) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  std::vector<CriterionResult> results;
  auto want = [&](const std::string& name) {
    return filter.empty() || name.find(filter) != std::string::npos;
  };
  if (want("theta_family_identity")) results.push_back(theta_identity());
  if (want("theta_discrepancy")) results.push_back(theta_disc());
  if (want("transference_minkowski")) results.push_back(transference_minkowski(rng));
  if (want("equiveps_count_equality")) results.push_back(equiveps(rng));
  if (want("weyl_bound_stability")) results.push_back(weyl_stability());
  if (want("klo_dominance")) results.push_back(klo_dominance());
  if (want("klein_degeneracy_exponent")) results.push_back(klein_degeneracy(fast));
  if (want("torus2d_degeneracy_direction")) results.push_back(torus_degeneracy(fast));
  if (want("counting_argument_z2")) results.push_back(counting_argument());
  if (want("aniso_remainder_bound")) results.push_back(aniso_remainder(rng));
  return results;
}

}  // namespace latspec
