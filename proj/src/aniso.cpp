#include "latspec/aniso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "latspec/enumerate.hpp"
#include "latspec/families.hpp"

namespace latspec {

namespace {

constexpr double kOrthoTol = 1e-9;

Eigen::VectorXd origin_or(const Eigen::VectorXd& c, int d) {
  return c.size() == 0 ? Eigen::VectorXd::Zero(d) : c;
}

// Hermite-style row reduction: basis rows of the sublattice of Z^n generated
// by the given integer rows.
std::vector<Eigen::VectorXi> integer_row_basis(std::vector<Eigen::VectorXi> rows) {
  if (rows.empty()) return {};
  const int n = static_cast<int>(rows[0].size());
  std::vector<Eigen::Matrix<long long, Eigen::Dynamic, 1>> m;
  for (const auto& r : rows) m.push_back(r.cast<long long>());
  std::vector<Eigen::Matrix<long long, Eigen::Dynamic, 1>> basis;
  int row = 0;
  for (int col = 0; col < n && row < static_cast<int>(m.size()); ++col) {
    // Reduce all entries in this column below `row` to zero by gcd steps.
    for (;;) {
      int piv = -1;
      for (int i = row; i < static_cast<int>(m.size()); ++i)
        if (m[i](col) != 0 && (piv < 0 || std::llabs(m[i](col)) < std::llabs(m[piv](col))))
          piv = i;
      if (piv < 0) break;
      std::swap(m[row], m[piv]);
      bool clean = true;
      for (int i = row + 1; i < static_cast<int>(m.size()); ++i) {
        long long q = m[i](col) / m[row](col);
        if (q != 0) m[i] -= q * m[row];
        if (m[i](col) != 0) clean = false;
      }
      if (clean) {
        ++row;
        break;
      }
    }
  }
  std::vector<Eigen::VectorXi> out;
  for (const auto& r : m) {
    if (r.isZero()) continue;
    out.push_back(r.cast<int>());
  }
  return out;
}

}  // namespace

Decomposition Decomposition::make(std::vector<Block> blocks,
                                  std::optional<Classification> cls) {
  if (blocks.empty())
    throw Error(ErrorCode::BadArguments, "decomposition needs at least one block");
  const int d = static_cast<int>(blocks[0].basis.rows());
  int total = 0;
  for (const Block& b : blocks) {
    if (b.basis.rows() != d || b.basis.cols() < 1)
      throw Error(ErrorCode::BadArguments, "block basis shape mismatch");
    if (b.rate < 0.0)
      throw Error(ErrorCode::BadArguments, "rates must be >= 0");
    Eigen::MatrixXd g = b.basis.transpose() * b.basis;
    if ((g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() > 1e-8)
      throw Error(ErrorCode::BadArguments, "block columns must be orthonormal");
    total += static_cast<int>(b.basis.cols());
  }
  if (total != d)
    throw Error(ErrorCode::BadArguments, "blocks must jointly span R^d");
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if ((blocks[i].basis.transpose() * blocks[j].basis).cwiseAbs().maxCoeff() > 1e-8)
        throw Error(ErrorCode::BadArguments, "blocks must be mutually orthogonal");

  // Sort by rate ascending, remapping classification indices.
  std::vector<int> perm(blocks.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int x, int y) { return blocks[x].rate < blocks[y].rate; });
  std::vector<int> inv(blocks.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);

  Decomposition dec;
  dec.dim = d;
  for (int p : perm) dec.blocks.push_back(std::move(blocks[p]));
  if (cls) {
    Classification c;
    for (int i : cls->V) c.V.push_back(inv.at(i));
    for (int i : cls->Vp) c.Vp.push_back(inv.at(i));
    for (int i : cls->W) c.W.push_back(inv.at(i));
    std::vector<char> seen(dec.blocks.size(), 0);
    for (const auto* group : {&c.V, &c.Vp, &c.W})
      for (int i : *group) {
        if (i < 0 || i >= static_cast<int>(dec.blocks.size()) || seen[i])
          throw Error(ErrorCode::BadArguments, "classification must partition the blocks");
        seen[i] = 1;
      }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw Error(ErrorCode::BadArguments, "classification must cover every block");
    // W lives inside the slowest-expanding (smallest-rate limit) part.
    double w_max = 0.0;
    for (int i : c.W) w_max = std::max(w_max, dec.blocks[i].rate);
    for (std::size_t i = 0; i < dec.blocks.size(); ++i)
      if (!std::count(c.W.begin(), c.W.end(), static_cast<int>(i)) &&
          dec.blocks[i].rate < w_max - kOrthoTol)
        throw Error(ErrorCode::BadArguments, "W blocks must have the smallest rates");
    dec.classification = std::move(c);
  }
  return dec;
}

double Decomposition::rate_det() const {
  double p = 1.0;
  for (const Block& b : blocks) p *= std::pow(b.rate, b.basis.cols());
  return p;
}

Eigen::VectorXd apply_T(const Decomposition& dec, const Eigen::VectorXd& x) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dec.dim);
  for (const Block& b : dec.blocks) {
    if (b.rate == 0.0)
      throw Error(ErrorCode::ZeroRate, "T_eps undefined for zero rate");
    out += (b.basis * (b.basis.transpose() * x)) / b.rate;
  }
  return out;
}

Eigen::MatrixXd T_inverse_matrix(const Decomposition& dec) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dec.dim, dec.dim);
  for (const Block& b : dec.blocks)
    m += b.rate * b.basis * b.basis.transpose();
  return m;
}

std::int64_t n_eps(const Decomposition& dec, const Ball& body, const Lattice& L,
                   const Eigen::VectorXd& y) {
  for (const Block& b : dec.blocks)
    if (b.rate == 0.0)
      throw Error(ErrorCode::ZeroRate, "n_eps needs strictly positive rates");
  if (L.dim() != dec.dim)
    throw Error(ErrorCode::BadArguments, "lattice/decomposition dimension mismatch");
  Eigen::MatrixXd M = T_inverse_matrix(dec);
  Lattice transformed(L.basis() * M);  // rows b_i M, M symmetric
  Eigen::VectorXd center = origin_or(body.center, dec.dim) + M * y;
  return count_in_ball(transformed, body.radius, center, true);
}

std::int64_t n_eps(const Decomposition& dec, const Ball& body, const Lattice& L) {
  return n_eps(dec, body, L, Eigen::VectorXd::Zero(dec.dim));
}

double main_term(const Decomposition& dec, const Ball& body, const Lattice& L) {
  if (!dec.classification)
    throw Error(ErrorCode::MissingClassification, "main_term needs a classification");
  const Classification& cls = *dec.classification;
  const int d = dec.dim;
  // |eps| runs over the expanding part only; W is a zero-rate limit object.
  double eps_det = 1.0;
  for (std::size_t i = 0; i < dec.blocks.size(); ++i)
    if (!std::count(cls.W.begin(), cls.W.end(), static_cast<int>(i)))
      eps_det *= std::pow(dec.blocks[i].rate, dec.blocks[i].basis.cols());
  double inv_eps = eps_det == 0.0 ? std::numeric_limits<double>::infinity()
                                  : 1.0 / eps_det;
  if (cls.W.empty())
    return volume_unit_ball(d) * std::pow(body.radius, d) * inv_eps / L.det();

  // W-sliced main term for a ball.
  int d_W = 0;
  for (int i : cls.W) d_W += static_cast<int>(dec.blocks[i].basis.cols());
  Eigen::MatrixXd QW(d, d_W);
  int col = 0;
  for (int i : cls.W) {
    QW.middleCols(col, dec.blocks[i].basis.cols()) = dec.blocks[i].basis;
    col += static_cast<int>(dec.blocks[i].basis.cols());
  }

  // Gamma* cap W as a full-rank sublattice of W.
  Lattice dualL = dual(L);
  std::vector<Eigen::VectorXi> in_W_coords;
  double R = 2.0 * std::pow(dualL.det(), 1.0 / d);
  int rank = 0;
  for (int tries = 0; rank < d_W && tries < 40; ++tries, R *= 1.5) {
    in_W_coords.clear();
    for (const LatticePoint& p : points_in_ball(dualL, R, true)) {
      if (p.norm == 0.0) continue;
      Eigen::VectorXd resid = p.embedding - QW * (QW.transpose() * p.embedding);
      if (resid.norm() <= kOrthoTol * std::max(1.0, p.norm))
        in_W_coords.push_back(p.coords);
    }
    Eigen::MatrixXd stack(in_W_coords.size(), d);
    for (std::size_t i = 0; i < in_W_coords.size(); ++i)
      stack.row(i) = in_W_coords[i].cast<double>();
    rank = in_W_coords.empty()
               ? 0
               : static_cast<int>(Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(stack).rank());
  }
  if (rank < d_W)
    throw Error(ErrorCode::BadArguments,
                "dual lattice has no full-rank sublattice inside W");
  std::vector<Eigen::VectorXi> basis_coords = integer_row_basis(in_W_coords);

  // Express Gamma* cap W in the orthonormal frame of W, then dualize there.
  Eigen::MatrixXd CW(d_W, d_W);
  int r = 0;
  for (const Eigen::VectorXi& c : basis_coords) {
    if (r == d_W) break;
    CW.row(r++) = (QW.transpose() * dualL.embed(c)).transpose();
  }
  Lattice dual_in_W(CW);
  Lattice GammaW = dual(dual_in_W);

  Eigen::VectorXd center = origin_or(body.center, d);
  Eigen::VectorXd cW = QW.transpose() * center;
  double slice_dim = d - d_W;
  double omega_slice = slice_dim > 0 ? volume_unit_ball(d - d_W) : 1.0;
  double total = 0.0;
  for (const LatticePoint& p : points_in_ball(GammaW, body.radius, cW, true)) {
    double h2 = body.radius * body.radius - (p.embedding - cW).squaredNorm();
    total += omega_slice * std::pow(std::max(h2, 0.0), slice_dim / 2.0);
  }
  return inv_eps * GammaW.det() / L.det() * total;
}

double predicted_remainder(const Decomposition& dec) {
  if (!dec.classification)
    throw Error(ErrorCode::MissingClassification,
                "predicted_remainder needs a classification");
  const Classification& cls = *dec.classification;
  int d_V = 0, d_Vp = 0;
  double delta_V = 0.0;
  for (int i : cls.V) {
    d_V += static_cast<int>(dec.blocks[i].basis.cols());
    delta_V = std::max(delta_V, dec.blocks[i].rate);
  }
  for (int i : cls.Vp) d_Vp += static_cast<int>(dec.blocks[i].basis.cols());
  double eps_det = dec.rate_det();
  double inv_eps = eps_det == 0.0 ? std::numeric_limits<double>::infinity()
                                  : 1.0 / eps_det;
  double expo = 2.0 * d_V / (1.0 + d_V + 2.0 * d_Vp);
  return inv_eps * std::pow(delta_V, expo);
}

TepsResult lattice_to_Teps(const Lattice& L) {
  Lattice red = lll_reduce(L);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(red.gram());
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::SingularLattice, "Gram eigendecomposition failed");
  const int d = L.dim();
  Eigen::VectorXd evals = es.eigenvalues();  // ascending
  TepsResult result;
  std::vector<Block> blocks;
  int i = 0;
  while (i < d) {
    int j = i + 1;
    double rate_i = std::sqrt(std::max(evals(i), 0.0));
    while (j < d && nearly_equal(std::sqrt(std::max(evals(j), 0.0)), rate_i)) ++j;
    Block b;
    b.basis = es.eigenvectors().middleCols(i, j - i);
    b.rate = rate_i;
    blocks.push_back(std::move(b));
    i = j;
  }
  for (int l = 0; l < d; ++l)
    result.rates.push_back(std::sqrt(std::max(evals(l), 0.0)));
  result.decomposition = Decomposition::make(std::move(blocks));
  // Polar rotation: A = U S with S = G^{1/2}, columns of A the generators.
  Eigen::MatrixXd S = T_inverse_matrix(result.decomposition);
  result.rotation = red.basis().transpose() * S.inverse();
  return result;
}

InvariantReport check_succmin_bounds(const Lattice& L) {
  TepsResult teps = lattice_to_Teps(L);
  SuccessiveMinima sm = successive_minima(L);
  const int d = L.dim();
  double eps1 = teps.rates.front();
  double epsd = teps.rates.back();
  double mu1 = sm.values.front();
  double mud = sm.values.back();
  double slack = 1.0 + kRelTol;
  bool chain = eps1 <= mu1 * slack && mu1 <= mud * slack && mud <= epsd * slack;
  bool sharp = mu1 <= std::pow(d, 2.5) / 2.0 * eps1 * slack &&
               mud * slack >= 2.0 / std::pow(d, 1.5) * epsd;
  InvariantReport rep;
  rep.name = "succmin_teps_bounds";
  rep.lhs = eps1;
  rep.rhs = epsd;
  rep.ratio = mud / epsd;
  rep.satisfied = chain && sharp;
  return rep;
}

AnisoReport remainder_exponent_scan(const Decomposition& dec_template,
                                    const RateSchedule& schedule,
                                    const Lattice& L, const Ball& body,
                                    const std::vector<double>& scales) {
  if (scales.empty()) throw Error(ErrorCode::EmptyGrid, "empty scale grid");
  if (schedule.coeff.size() != dec_template.blocks.size() ||
      schedule.alpha.size() != dec_template.blocks.size())
    throw Error(ErrorCode::BadArguments, "schedule size must match block count");

  AnisoReport report;
  std::vector<std::pair<double, double>> rem_pairs;
  for (double s : scales) {
    std::vector<Block> blocks = dec_template.blocks;
    for (std::size_t j = 0; j < blocks.size(); ++j)
      blocks[j].rate = schedule.coeff[j] * std::pow(s, schedule.alpha[j]);
    Decomposition dec = Decomposition::make(std::move(blocks),
                                            dec_template.classification);
    AnisoRow row;
    row.scale = s;
    row.rate_det = dec.rate_det();
    row.count = n_eps(dec, body, L);
    row.main = main_term(dec, body, L);
    row.remainder = static_cast<double>(row.count) - row.main;
    row.predicted = predicted_remainder(dec);
    if (row.predicted > 0.0)
      report.fitted_C = std::max(report.fitted_C, std::abs(row.remainder) / row.predicted);
    report.rows.push_back(row);
    if (std::abs(row.remainder) > 0.0)
      rem_pairs.emplace_back(s, std::abs(row.remainder));
    if (s == scales.back()) {
      const Classification& cls = *dec.classification;
      int d_V = 0, d_Vp = 0;
      for (int i : cls.V) {
        d_V += static_cast<int>(dec.blocks[i].basis.cols());
        report.delta_V = std::max(report.delta_V, dec.blocks[i].rate);
      }
      for (int i : cls.Vp) d_Vp += static_cast<int>(dec.blocks[i].basis.cols());
      report.exponent = 2.0 * d_V / (1.0 + d_V + 2.0 * d_Vp);
    }
  }
  report.slope = fit_loglog(rem_pairs).slope;
  return report;
}

}  // namespace latspec
