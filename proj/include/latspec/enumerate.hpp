#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latspec/lattice.hpp"

namespace latspec {

inline constexpr int kMaxDim = 12;
inline constexpr std::int64_t kDefaultEnumBudget = 1000000000;  // tree nodes

struct LatticePoint {
  Eigen::VectorXi coords;     // integer coordinates w.r.t. the lattice basis
  Eigen::VectorXd embedding;  // coords^T * basis
  double norm = 0.0;          // |embedding - center| during enumeration is
                              // checked; stored norm is |embedding|.
};

struct OrderedPrefix {
  std::vector<LatticePoint> points;              // gamma_0 .. gamma_k
  std::vector<std::vector<int>> tie_groups;      // indices with equal norms
};

struct EnumOptions {
  std::int64_t budget = kDefaultEnumBudget;
};

// All lattice points gamma with |gamma - center| <= R (closed) or < R (open),
// via Cholesky branch-and-bound on the LLL-reduced basis. Points are returned
// sorted by norm, ties broken lexicographically on embedding coordinates.
std::vector<LatticePoint> points_in_ball(const Lattice& L, double R,
                                         const Eigen::VectorXd& center,
                                         bool closed = true,
                                         const EnumOptions& opts = {});
std::vector<LatticePoint> points_in_ball(const Lattice& L, double R,
                                         bool closed = true,
                                         const EnumOptions& opts = {});

std::int64_t count_in_ball(const Lattice& L, double R,
                           const Eigen::VectorXd& center, bool closed = true,
                           const EnumOptions& opts = {});
std::int64_t count_in_ball(const Lattice& L, double R, bool closed = true,
                           const EnumOptions& opts = {});

// First k+1 lattice points under norm-then-lexicographic order.
OrderedPrefix ordered_prefix(const Lattice& L, int k,
                             const EnumOptions& opts = {});

// |gamma_k|.
double kth_norm(const Lattice& L, int k, const EnumOptions& opts = {});

// Scale-invariant lattice functional |Gamma|^{-1/d} |gamma_k|.
double lambda_tilde(const Lattice& L, int k, const EnumOptions& opts = {});

}  // namespace latspec
