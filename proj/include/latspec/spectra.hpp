#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "latspec/enumerate.hpp"
#include "latspec/lattice.hpp"

namespace latspec {

struct KleinBottle {
  double a = 0.0;
  double b = 0.0;

  KleinBottle(double a_, double b_) : a(a_), b(b_) {
    if (!(a > 0.0) || !(b > 0.0))
      throw Error(ErrorCode::BadArguments, "Klein bottle needs a, b > 0");
  }
  bool unit_volume() const { return nearly_equal(a * b, 2.0); }
};

struct SpectrumPrefix {
  std::vector<double> eigenvalues;             // lambda_0 .. lambda_k
  // For Klein spectra, the (m, n) label of each eigenvalue; empty for tori.
  std::vector<std::pair<int, int>> labels;
};

// lambda_j = 4 pi^2 |gamma*_j|^2 over the ordered dual lattice.
SpectrumPrefix torus_spectrum(const Lattice& L, int k);

// #{lambda < lam} (strict) or #{lambda <= lam}.
std::int64_t torus_counting(const Lattice& L, double lam, bool strict = true);

// Vol^{2/d} lambda_k = det(L)^{2/d} lambda_k(T_L).
double normalized_Lambda_k(const Lattice& L, int k);

// Klein bottle spectrum 4 pi^2 (m^2/a^2 + n^2/b^2) over Z x N_0 minus the
// excluded odd-m axis points (m, 0).
SpectrumPrefix klein_spectrum(const KleinBottle& K, int k);

std::int64_t klein_counting(const KleinBottle& K, double lam,
                            bool strict = true);

// inj(K(a,b)) = min(a, b/2).
double klein_injectivity(const KleinBottle& K);

// The rectangular lattice (2 pi / a) Z + (2 pi / b) Z.
Lattice klein_associated_lattice(const KleinBottle& K);

}  // namespace latspec
