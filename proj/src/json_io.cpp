#include "latspec/json_io.hpp"

namespace latspec {

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorCode::BadArguments, "expected a non-empty array of rows");
  Eigen::MatrixXd m(j.size(), j.at(0).size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& row = j.at(i);
    if (row.size() != static_cast<std::size_t>(m.cols()))
      throw Error(ErrorCode::BadArguments, "ragged matrix rows");
    for (std::size_t c = 0; c < row.size(); ++c)
      m(i, c) = row.at(c).get<double>();
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json ivector_to_json(const Eigen::VectorXi& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

json lattice_to_json(const Lattice& L) {
  json j;
  j["dim"] = L.dim();
  j["basis"] = matrix_to_json(L.basis());
  return j;
}

Lattice lattice_from_json(const json& j) {
  Eigen::MatrixXd basis = matrix_from_json(j.at("basis"));
  if (j.contains("dim") && j.at("dim").get<int>() != basis.rows())
    throw Error(ErrorCode::BadArguments, "dim field disagrees with basis shape");
  return Lattice(std::move(basis));
}

json decomposition_to_json(const Decomposition& dec) {
  json blocks = json::array();
  for (const Block& b : dec.blocks) {
    json jb;
    jb["basis"] = matrix_to_json(b.basis);
    jb["rate"] = b.rate;
    blocks.push_back(std::move(jb));
  }
  json j;
  j["blocks"] = std::move(blocks);
  if (dec.classification) {
    json c;
    c["V"] = dec.classification->V;
    c["Vp"] = dec.classification->Vp;
    c["W"] = dec.classification->W;
    j["classification"] = std::move(c);
  }
  return j;
}

Decomposition decomposition_from_json(const json& j) {
  std::vector<Block> blocks;
  for (const json& jb : j.at("blocks")) {
    Block b;
    b.basis = matrix_from_json(jb.at("basis"));
    b.rate = jb.at("rate").get<double>();
    blocks.push_back(std::move(b));
  }
  std::optional<Classification> cls;
  if (j.contains("classification")) {
    Classification c;
    c.V = j.at("classification").at("V").get<std::vector<int>>();
    c.Vp = j.at("classification").at("Vp").get<std::vector<int>>();
    c.W = j.at("classification").at("W").get<std::vector<int>>();
    cls = std::move(c);
  }
  return Decomposition::make(std::move(blocks), std::move(cls));
}

json point_to_json(const LatticePoint& p) {
  json j;
  j["coords"] = ivector_to_json(p.coords);
  j["embedding"] = vector_to_json(p.embedding);
  j["norm"] = p.norm;
  return j;
}

json prefix_to_json(const OrderedPrefix& prefix) {
  json pts = json::array();
  for (const LatticePoint& p : prefix.points) pts.push_back(point_to_json(p));
  json j;
  j["points"] = std::move(pts);
  j["tie_groups"] = prefix.tie_groups;
  return j;
}

json spectrum_to_json(const SpectrumPrefix& s) {
  json j;
  j["eigenvalues"] = s.eigenvalues;
  if (!s.labels.empty()) {
    json labels = json::array();
    for (const auto& [m, n] : s.labels) labels.push_back(json::array({m, n}));
    j["labels"] = std::move(labels);
  }
  return j;
}

json minima_to_json(const SuccessiveMinima& sm) {
  json witnesses = json::array();
  for (const auto& w : sm.witnesses) witnesses.push_back(vector_to_json(w));
  json j;
  j["values"] = sm.values;
  j["witnesses"] = std::move(witnesses);
  return j;
}

json invariant_to_json(const InvariantReport& rep) {
  json j;
  j["name"] = rep.name;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["satisfied"] = rep.satisfied;
  j["ratio"] = rep.ratio;
  return j;
}

json weyl_report_to_json(const WeylScanReport& rep) {
  json rows = json::array();
  for (const WeylScanRow& r : rep.rows) {
    json jr;
    jr["lam"] = r.lam;
    jr["count"] = r.count;
    jr["main_term"] = r.main_term;
    jr["remainder"] = r.remainder;
    jr["bound"] = r.bound;
    jr["ratio"] = r.ratio;
    rows.push_back(std::move(jr));
  }
  json j;
  j["rows"] = std::move(rows);
  j["fitted_C"] = rep.fitted_C;
  j["inj"] = rep.inj;
  return j;
}

json optimize_report_to_json(const OptimizeReport& rep, bool with_trace) {
  json j;
  j["k"] = rep.k;
  j["argmax"] = {{"a", rep.argmax.a}, {"b", rep.argmax.b}};
  j["value"] = rep.value;
  j["mu1"] = rep.mu1;
  j["mu_d"] = rep.mu_d;
  j["inj"] = rep.inj;
  if (with_trace) {
    json trace = json::array();
    for (const auto& [p, v] : rep.trace)
      trace.push_back(json::array({p.a, p.b, v}));
    j["trace"] = std::move(trace);
  }
  return j;
}

json exponent_fit_to_json(const ExponentFit& fit) {
  json pairs = json::array();
  for (const auto& [k, v] : fit.pairs) pairs.push_back(json::array({k, v}));
  json j;
  j["pairs"] = std::move(pairs);
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  return j;
}

json degeneracy_to_json(const DegeneracyScan& scan) {
  json reports = json::array();
  for (const OptimizeReport& r : scan.reports)
    reports.push_back(optimize_report_to_json(r, false));
  json j;
  j["reports"] = std::move(reports);
  j["mu1_fit"] = exponent_fit_to_json(scan.mu1_fit);
  j["mud_fit"] = exponent_fit_to_json(scan.mud_fit);
  j["inj_fit"] = exponent_fit_to_json(scan.inj_fit);
  return j;
}

json aniso_report_to_json(const AnisoReport& rep) {
  json rows = json::array();
  for (const AnisoRow& r : rep.rows) {
    json jr;
    jr["scale"] = r.scale;
    jr["rate_det"] = r.rate_det;
    jr["count"] = r.count;
    jr["main_term"] = r.main;
    jr["remainder"] = r.remainder;
    jr["predicted"] = r.predicted;
    rows.push_back(std::move(jr));
  }
  json j;
  j["rows"] = std::move(rows);
  j["delta_V"] = rep.delta_V;
  j["exponent"] = rep.exponent;
  j["fitted_C"] = rep.fitted_C;
  j["slope"] = rep.slope;
  return j;
}

json error_to_json(const Error& e) {
  json j;
  j["code"] = e.code_string();
  j["message"] = e.what();
  return j;
}

}  // namespace latspec
