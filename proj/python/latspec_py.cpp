#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latspec/aniso.hpp"
#include "latspec/enumerate.hpp"
#include "latspec/families.hpp"
#include "latspec/minima.hpp"
#include "latspec/spectra.hpp"
#include "latspec/weyl.hpp"

namespace py = pybind11;
using namespace latspec;

namespace {

Eigen::VectorXd center_or_origin(const Lattice& L,
                                 const std::optional<Eigen::VectorXd>& c) {
  return c ? *c : Eigen::VectorXd::Zero(L.dim());
}

Decomposition dec_from_py(
    const std::vector<std::pair<Eigen::MatrixXd, double>>& blocks,
    const std::optional<std::tuple<std::vector<int>, std::vector<int>,
                                   std::vector<int>>>& cls) {
  std::vector<Block> bs;
  for (const auto& [basis, rate] : blocks) bs.push_back(Block{basis, rate});
  std::optional<Classification> c;
  if (cls) {
    Classification cc;
    std::tie(cc.V, cc.Vp, cc.W) = *cls;
    c = std::move(cc);
  }
  return Decomposition::make(std::move(bs), std::move(c));
}

}  // namespace

PYBIND11_MODULE(_latspec, m) {
  m.doc() = "Flat torus / Klein bottle spectra and lattice geometry";

  py::register_exception<Error>(m, "LatspecError");

  py::class_<Lattice>(m, "Lattice")
      .def(py::init<Eigen::MatrixXd>(), py::arg("basis"))
      .def_static("identity", &Lattice::identity, py::arg("d"))
      .def_property_readonly("dim", &Lattice::dim)
      .def_property_readonly("basis", &Lattice::basis)
      .def_property_readonly("gram", &Lattice::gram)
      .def_property_readonly("det", &Lattice::det)
      .def("scaled", &Lattice::scaled, py::arg("mu"));

  m.def("dual", &dual, py::arg("lattice"));
  m.def(
      "lll_reduce",
      [](const Lattice& L, double delta) { return lll_reduce(L, delta); },
      py::arg("lattice"), py::arg("delta") = 0.99);

  m.def(
      "points_in_ball",
      [](const Lattice& L, double R, const std::optional<Eigen::VectorXd>& c,
         bool closed) {
        auto pts = points_in_ball(L, R, center_or_origin(L, c), closed);
        py::list out;
        for (const auto& p : pts)
          out.append(py::make_tuple(p.coords, p.embedding, p.norm));
        return out;
      },
      py::arg("lattice"), py::arg("radius"), py::arg("center") = py::none(),
      py::arg("closed") = true);
  m.def(
      "count_in_ball",
      [](const Lattice& L, double R, const std::optional<Eigen::VectorXd>& c,
         bool closed) {
        return count_in_ball(L, R, center_or_origin(L, c), closed);
      },
      py::arg("lattice"), py::arg("radius"), py::arg("center") = py::none(),
      py::arg("closed") = true);
  m.def(
      "prefix_norms",
      [](const Lattice& L, int k) {
        std::vector<double> norms;
        for (const auto& p : ordered_prefix(L, k).points)
          norms.push_back(p.norm);
        return norms;
      },
      py::arg("lattice"), py::arg("k"));
  m.def("kth_norm",
        [](const Lattice& L, int k) { return kth_norm(L, k); },
        py::arg("lattice"), py::arg("k"));
  m.def("lambda_tilde",
        [](const Lattice& L, int k) { return lambda_tilde(L, k); },
        py::arg("lattice"), py::arg("k"));

  m.def(
      "successive_minima",
      [](const Lattice& L) { return successive_minima(L).values; },
      py::arg("lattice"));
  m.def(
      "check_minkowski",
      [](const Lattice& L) {
        InvariantReport r = check_minkowski(L);
        return py::make_tuple(r.satisfied, r.lhs, r.rhs);
      },
      py::arg("lattice"));
  m.def(
      "check_transference",
      [](const Lattice& L) {
        py::list out;
        for (const auto& r : check_transference(L))
          out.append(py::make_tuple(r.satisfied, r.lhs, r.rhs));
        return out;
      },
      py::arg("lattice"));

  m.def(
      "torus_spectrum",
      [](const Lattice& L, int k) { return torus_spectrum(L, k).eigenvalues; },
      py::arg("lattice"), py::arg("k"));
  m.def("torus_counting", &torus_counting, py::arg("lattice"), py::arg("lam"),
        py::arg("strict") = true);
  m.def("normalized_Lambda_k", &normalized_Lambda_k, py::arg("lattice"),
        py::arg("k"));
  m.def(
      "klein_spectrum",
      [](double a, double b, int k) {
        SpectrumPrefix s = klein_spectrum(KleinBottle(a, b), k);
        return py::make_tuple(s.eigenvalues, s.labels);
      },
      py::arg("a"), py::arg("b"), py::arg("k"));
  m.def(
      "klein_counting",
      [](double a, double b, double lam, bool strict) {
        return klein_counting(KleinBottle(a, b), lam, strict);
      },
      py::arg("a"), py::arg("b"), py::arg("lam"), py::arg("strict") = true);
  m.def(
      "klein_injectivity",
      [](double a, double b) { return klein_injectivity(KleinBottle(a, b)); },
      py::arg("a"), py::arg("b"));

  m.def("torus_remainder", &torus_remainder, py::arg("lattice"), py::arg("lam"));
  m.def("theta_discrepancy", &theta_discrepancy, py::arg("k"), py::arg("d"),
        py::arg("strict") = false);
  m.def(
      "weyl_scan",
      [](const Lattice& L, double lam_min, double lam_max, int points) {
        WeylScanReport rep = weyl_scan(L, geometric_grid(lam_min, lam_max, points));
        py::list rows;
        for (const auto& r : rep.rows)
          rows.append(py::make_tuple(r.lam, r.count, r.main_term, r.remainder,
                                     r.bound, r.ratio));
        return py::make_tuple(rows, rep.fitted_C, rep.inj);
      },
      py::arg("lattice"), py::arg("lam_min"), py::arg("lam_max"),
      py::arg("points"));

  m.def("theta_lattice", &theta_lattice, py::arg("k"), py::arg("d"));
  m.def("klo_lattice", &klo_lattice, py::arg("k"));
  m.def(
      "moduli_lattice",
      [](double a, double b) { return moduli_lattice(ModuliPoint2D{a, b}); },
      py::arg("a"), py::arg("b"));
  m.def(
      "optimize_torus_2d",
      [](int k, int a_steps, int b_steps, double b_max) {
        TorusGridSpec grid{a_steps, b_steps, b_max};
        OptimizeReport r = optimize_torus_2d(k, grid);
        py::dict d;
        d["k"] = r.k;
        d["a"] = r.argmax.a;
        d["b"] = r.argmax.b;
        d["value"] = r.value;
        d["mu1"] = r.mu1;
        d["mu_d"] = r.mu_d;
        d["inj"] = r.inj;
        return d;
      },
      py::arg("k"), py::arg("a_steps") = 200, py::arg("b_steps") = 200,
      py::arg("b_max") = 0.0);
  m.def(
      "optimize_klein",
      [](int k, double a_min, double a_max) {
        OptimizeReport r = optimize_klein(k, KleinBracket{a_min, a_max});
        py::dict d;
        d["k"] = r.k;
        d["a"] = r.argmax.a;
        d["value"] = r.value;
        d["mu1"] = r.mu1;
        d["mu_d"] = r.mu_d;
        d["inj"] = r.inj;
        return d;
      },
      py::arg("k"), py::arg("a_min") = 0.02, py::arg("a_max") = 10.0);

  m.def(
      "n_eps",
      [](const std::vector<std::pair<Eigen::MatrixXd, double>>& blocks,
         double radius, const Lattice& L,
         const std::optional<Eigen::VectorXd>& y) {
        Decomposition dec = dec_from_py(blocks, std::nullopt);
        return n_eps(dec, Ball{radius, {}}, L, center_or_origin(L, y));
      },
      py::arg("blocks"), py::arg("radius"), py::arg("lattice"),
      py::arg("y") = py::none());
  m.def(
      "main_term",
      [](const std::vector<std::pair<Eigen::MatrixXd, double>>& blocks,
         const std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>&
             cls,
         double radius, const Lattice& L) {
        Decomposition dec = dec_from_py(blocks, cls);
        return main_term(dec, Ball{radius, {}}, L);
      },
      py::arg("blocks"), py::arg("classification"), py::arg("radius"),
      py::arg("lattice"));
  m.def(
      "lattice_to_Teps",
      [](const Lattice& L) {
        TepsResult t = lattice_to_Teps(L);
        return py::make_tuple(t.rotation, t.rates);
      },
      py::arg("lattice"));
  m.def(
      "check_succmin_bounds",
      [](const Lattice& L) {
        InvariantReport r = check_succmin_bounds(L);
        return py::make_tuple(r.satisfied, r.lhs, r.rhs);
      },
      py::arg("lattice"));
}
