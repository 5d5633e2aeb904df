#pragma once

#include <optional>
#include <vector>

#include "latspec/lattice.hpp"
#include "latspec/minima.hpp"

namespace latspec {

struct Block {
  Eigen::MatrixXd basis;  // d x m, orthonormal columns spanning V_j
  double rate = 1.0;      // epsilon_j >= 0
};

struct Classification {
  std::vector<int> V;   // block indices
  std::vector<int> Vp;  // blocks with no dual points besides 0
  std::vector<int> W;   // dual-subspace blocks among the slowest rates
};

// Orthogonal splitting R^d = +V_j with expansion rates, sorted by rate.
struct Decomposition {
  int dim = 0;
  std::vector<Block> blocks;
  std::optional<Classification> classification;

  static Decomposition make(std::vector<Block> blocks,
                            std::optional<Classification> cls = std::nullopt);

  // Product of rate^{dim V_j} over all blocks.
  double rate_det() const;
};

struct Ball {
  double radius = 1.0;
  Eigen::VectorXd center;  // empty means origin
};

// T_eps x = sum_j eps_j^{-1} x_j; all rates must be positive.
Eigen::VectorXd apply_T(const Decomposition& dec, const Eigen::VectorXd& x);

// Matrix of T_eps^{-1} (scales V_j by eps_j).
Eigen::MatrixXd T_inverse_matrix(const Decomposition& dec);

// n_eps(Omega; Gamma; y) = #(T_eps^{-1}(Gamma - y) cap Omega), Omega a ball.
std::int64_t n_eps(const Decomposition& dec, const Ball& body, const Lattice& L,
                   const Eigen::VectorXd& y);
std::int64_t n_eps(const Decomposition& dec, const Ball& body, const Lattice& L);

// |eps|^{-1} |Gamma_W| / |Gamma| * sum of slice volumes; simplifies to
// Vol(Omega) |eps|^{-1} / |Gamma| when W = {0}.
double main_term(const Decomposition& dec, const Ball& body, const Lattice& L);

// |eps|^{-1} delta_V^{2 d_V / (1 + d_V + 2 d_V')}.
double predicted_remainder(const Decomposition& dec);

struct TepsResult {
  Eigen::MatrixXd rotation;    // orthogonal U with U^T Gamma = T_eps^{-1} Z^d
  std::vector<double> rates;   // ascending
  Decomposition decomposition;
};

// Decomposition with N(Gamma; B_1) = n_eps(B_1; Z^d; 0): rates are the
// singular values of the (reduced) generator matrix, blocks the eigenspaces
// of its Gram matrix.
TepsResult lattice_to_Teps(const Lattice& L);

// eps_1 <= mu_1 <= mu_d <= eps_d, plus the sharpened constants
// mu_1 <= (d^{5/2}/2) eps_1 and mu_d >= (2/d^{3/2}) eps_d.
InvariantReport check_succmin_bounds(const Lattice& L);

struct AnisoRow {
  double scale = 0.0;
  double rate_det = 0.0;  // |eps|
  std::int64_t count = 0;
  double main = 0.0;
  double remainder = 0.0;
  double predicted = 0.0;
};

struct RateSchedule {
  // eps_j(s) = coeff_j * s^{alpha_j}, one entry per block.
  std::vector<double> coeff;
  std::vector<double> alpha;
};

struct AnisoReport {
  std::vector<AnisoRow> rows;
  double delta_V = 0.0;     // at the final scale
  double exponent = 0.0;    // 2 d_V / (1 + d_V + 2 d_V')
  double fitted_C = 0.0;    // max |remainder| / predicted over rows
  double slope = 0.0;       // log|remainder| vs log s
};

// Counts, main terms and remainders along a geometric scale grid, with the
// rates driven by the schedule.
AnisoReport remainder_exponent_scan(const Decomposition& dec_template,
                                    const RateSchedule& schedule,
                                    const Lattice& L, const Ball& body,
                                    const std::vector<double>& scales);

}  // namespace latspec
