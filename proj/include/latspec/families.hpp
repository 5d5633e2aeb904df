#pragma once

#include <optional>
#include <vector>

#include "latspec/lattice.hpp"
#include "latspec/minima.hpp"

namespace latspec {

// Point of the 2D unit-covolume moduli space: a in (-1/2, 1/2], b > 0,
// a^2 + b^2 >= 1.
struct ModuliPoint2D {
  double a = 0.0;
  double b = 1.0;
  bool valid() const {
    return a > -0.5 - 1e-12 && a <= 0.5 + 1e-12 && b > 0.0 &&
           a * a + b * b >= 1.0 - 1e-12;
  }
};

struct ExponentFit {
  std::vector<std::pair<double, double>> pairs;  // (k, value)
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

struct OptimizeReport {
  int k = 0;
  ModuliPoint2D argmax;      // torus mode; for Klein, argmax.a carries a
  double value = 0.0;        // Lambda_k at the argmax
  double mu1 = 0.0;          // successive minima of the dual of the
  double mu_d = 0.0;         // maximizer's lattice
  double inj = 0.0;          // injectivity radius of the maximizer manifold
  std::vector<std::pair<ModuliPoint2D, double>> trace;  // refinement evals
};

struct TorusGridSpec {
  int a_steps = 200;
  int b_steps = 200;
  double b_max = 0.0;  // 0: default 2k
};

struct RefineSpec {
  int iters = 200;
  double tol = 1e-7;
};

// Theta_2k = diag(k^{-1+1/d}, k^{1/d}, ..., k^{1/d}).
Lattice theta_lattice(int k, int d);

// The 2D candidate maximizer for Lambda_{2k}: rows c(1,0) and
// c(1/2, sqrt(k^2 - 1/4)) with c = (k^2 - 1/4)^{-1/4}.
Lattice klo_lattice(int k);

// Rows b^{-1/2}(1,0) and b^{-1/2}(a,b); unit determinant.
Lattice moduli_lattice(const ModuliPoint2D& p);

// Grid-then-refine maximization of Lambda_k over the 2D torus moduli space.
OptimizeReport optimize_torus_2d(int k, const TorusGridSpec& grid = {},
                                 const RefineSpec& refine = {});

// Maximization of lambda_k(K(a, 2/a)) over a; coarse scan inside the bracket
// followed by golden-section refinement.
struct KleinBracket {
  double a_min = 0.02;
  double a_max = 10.0;
};
OptimizeReport optimize_klein(int k, const KleinBracket& bracket = {},
                              double tol = 1e-8);

struct DominanceResult {
  bool dominant = false;
  double worst_margin = 0.0;  // min over samples of Lambda(KLO) - Lambda(sample)
};

// Does the KLO torus beat Lambda_{2k} on a sample grid over the region
// a^2 + b^2 >= (k-1)^2, b <= 4k?
DominanceResult klo_dominance_check(int k, int samples);

enum class ScanMode { Torus2D, Klein };

struct DegeneracyScan {
  std::vector<OptimizeReport> reports;
  ExponentFit mu1_fit;   // mu_1 of the dual-side lattice vs k
  ExponentFit mud_fit;   // mu_d of the dual-side lattice vs k
  ExponentFit inj_fit;   // inj of the maximizer manifold vs k
};

DegeneracyScan degeneracy_scan(const std::vector<int>& k_list, ScanMode mode);

// Log-log least squares; single point yields slope 0 and r2 0.
ExponentFit fit_loglog(const std::vector<std::pair<double, double>>& pairs,
                       double discard_fraction = 0.0);

}  // namespace latspec
