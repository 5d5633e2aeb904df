#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "latspec/acceptance.hpp"
#include "latspec/json_io.hpp"

namespace {

using latspec::json;

latspec::json load_json_arg(const std::string& arg) {
  // A value starting with '{' is inline JSON, anything else a file path.
  if (!arg.empty() && arg.front() == '{') return json::parse(arg);
  std::ifstream in(arg);
  if (!in)
    throw latspec::Error(latspec::ErrorCode::BadArguments,
                         "cannot open file: " + arg);
  json j;
  in >> j;
  return j;
}

latspec::Lattice load_lattice(const std::string& arg) {
  return latspec::lattice_from_json(load_json_arg(arg));
}

Eigen::VectorXd parse_vector(const std::string& csv, int d) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  if (csv.empty()) return v;
  std::stringstream ss(csv);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= d)
      throw latspec::Error(latspec::ErrorCode::BadArguments,
                           "vector has too many components");
    v(i++) = std::stod(item);
  }
  if (i != d)
    throw latspec::Error(latspec::ErrorCode::BadArguments,
                         "vector has too few components");
  return v;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << j.dump(2) << "\n";
  }
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream out(path);
  out << header << "\n";
  for (const std::string& r : rows) out << r << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice spectra toolkit: exact flat-torus and Klein-bottle "
               "spectra, lattice point counts, successive minima, Weyl "
               "remainder scans and moduli-space optimizers"};
  app.require_subcommand(1);
  app.fallthrough();  // let --out/--csv appear after the subcommand
  std::string out_path, csv_path;
  app.add_option("--out", out_path, "write JSON to this file instead of stdout");
  app.add_option("--csv", csv_path, "also write a flat CSV report");

  std::string lattice_arg, dec_arg, center_arg, y_arg;
  double radius = 1.0, a = 1.0, b = 1.0, lam = 1.0;
  int k = 1, d = 2;
  bool open_ball = false, nonstrict = false, strict_flag = false;

  // points / prefix -----------------------------------------------------
  CLI::App* points = app.add_subcommand("points", "lattice points in a ball");
  points->add_option("--lattice", lattice_arg, "lattice JSON (file or inline)")->required();
  points->add_option("--radius", radius)->required();
  points->add_flag("--open", open_ball, "open ball (default closed)");
  points->add_option("--center", center_arg, "comma-separated center");

  CLI::App* prefix = app.add_subcommand("prefix", "first k+1 ordered lattice points");
  prefix->add_option("--lattice", lattice_arg)->required();
  prefix->add_option("--k", k)->required();

  // spectrum ------------------------------------------------------------
  CLI::App* spectrum = app.add_subcommand("spectrum", "Laplace spectra");
  spectrum->require_subcommand(1);
  CLI::App* sp_torus = spectrum->add_subcommand("torus");
  sp_torus->add_option("--lattice", lattice_arg)->required();
  sp_torus->add_option("--k", k)->required();
  CLI::App* sp_klein = spectrum->add_subcommand("klein");
  sp_klein->add_option("--a", a)->required();
  sp_klein->add_option("--b", b)->required();
  sp_klein->add_option("--k", k)->required();

  // count ---------------------------------------------------------------
  CLI::App* count = app.add_subcommand("count", "eigenvalue counting functions");
  count->require_subcommand(1);
  CLI::App* ct_torus = count->add_subcommand("torus");
  ct_torus->add_option("--lattice", lattice_arg)->required();
  ct_torus->add_option("--lam", lam)->required();
  ct_torus->add_flag("--nonstrict", nonstrict);
  CLI::App* ct_klein = count->add_subcommand("klein");
  ct_klein->add_option("--a", a)->required();
  ct_klein->add_option("--b", b)->required();
  ct_klein->add_option("--lam", lam)->required();
  ct_klein->add_flag("--nonstrict", nonstrict);

  // weyl ----------------------------------------------------------------
  double lam_min = 2.0 * M_PI, lam_max = 1e4;
  int grid_points = 50;
  CLI::App* weyl = app.add_subcommand("weyl", "Weyl remainder diagnostics");
  weyl->require_subcommand(1);
  CLI::App* weyl_scan_cmd = weyl->add_subcommand("scan");
  weyl_scan_cmd->add_option("--lattice", lattice_arg)->required();
  weyl_scan_cmd->add_option("--lam-min", lam_min);
  weyl_scan_cmd->add_option("--lam-max", lam_max);
  weyl_scan_cmd->add_option("--points", grid_points);
  CLI::App* weyl_theta = weyl->add_subcommand("theta");
  weyl_theta->add_option("--k", k)->required();
  weyl_theta->add_option("--d", d)->required();
  weyl_theta->add_flag("--strict", strict_flag);

  // optimize ------------------------------------------------------------
  std::string grid_arg;
  double bmax = 0.0, amin = 0.02, amax = 10.0;
  CLI::App* optimize = app.add_subcommand("optimize", "moduli space maximizers");
  optimize->require_subcommand(1);
  CLI::App* opt_torus = optimize->add_subcommand("torus2d");
  opt_torus->add_option("--k", k)->required();
  opt_torus->add_option("--grid", grid_arg, "AxB grid steps, e.g. 200x200");
  opt_torus->add_option("--bmax", bmax);
  CLI::App* opt_klein = optimize->add_subcommand("klein");
  opt_klein->add_option("--k", k)->required();
  opt_klein->add_option("--amin", amin);
  opt_klein->add_option("--amax", amax);

  // scan degeneracy -----------------------------------------------------
  std::string mode_arg = "torus2d";
  int kmin = 4, kmax = 40, kstep = 2;
  CLI::App* scan = app.add_subcommand("scan", "degeneracy-rate scans");
  CLI::App* scan_deg = scan->add_subcommand("degeneracy");
  scan->require_subcommand(1);
  scan_deg->add_option("--mode", mode_arg, "torus2d or klein")->required();
  scan_deg->add_option("--kmin", kmin)->required();
  scan_deg->add_option("--kmax", kmax)->required();
  scan_deg->add_option("--step", kstep)->required();

  // family --------------------------------------------------------------
  CLI::App* family = app.add_subcommand("family", "explicit lattice families");
  family->require_subcommand(1);
  CLI::App* fam_theta = family->add_subcommand("theta");
  fam_theta->add_option("--k", k)->required();
  fam_theta->add_option("--d", d)->required();
  CLI::App* fam_klo = family->add_subcommand("klo");
  fam_klo->add_option("--k", k)->required();
  CLI::App* fam_moduli = family->add_subcommand("moduli");
  fam_moduli->add_option("--a", a)->required();
  fam_moduli->add_option("--b", b)->required();

  // aniso ---------------------------------------------------------------
  std::string alphas_arg, coeffs_arg;
  double smin = 1.0 / 128.0, smax = 0.5;
  CLI::App* aniso = app.add_subcommand("aniso", "anisotropic expansion counts");
  aniso->require_subcommand(1);
  CLI::App* an_count = aniso->add_subcommand("count");
  an_count->add_option("--dec", dec_arg, "decomposition JSON (file or inline)")->required();
  an_count->add_option("--lattice", lattice_arg)->required();
  an_count->add_option("--radius", radius);
  an_count->add_option("--center", center_arg);
  an_count->add_option("--y", y_arg, "comma-separated offset");
  CLI::App* an_scan = aniso->add_subcommand("scan");
  an_scan->add_option("--dec", dec_arg)->required();
  an_scan->add_option("--lattice", lattice_arg)->required();
  an_scan->add_option("--alphas", alphas_arg, "per-block rate exponents")->required();
  an_scan->add_option("--coeffs", coeffs_arg, "per-block rate coefficients");
  an_scan->add_option("--radius", radius);
  an_scan->add_option("--smin", smin);
  an_scan->add_option("--smax", smax);
  an_scan->add_option("--points", grid_points);

  // verify --------------------------------------------------------------
  std::string filter;
  std::uint64_t seed = 0;
  bool fast = false;
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--filter", filter, "substring filter on criterion names");
  verify->add_option("--seed", seed);
  verify->add_flag("--fast", fast, "shortened optimizer scans");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*points) {
      latspec::Lattice L = load_lattice(lattice_arg);
      auto pts = latspec::points_in_ball(L, radius, parse_vector(center_arg, L.dim()),
                                         !open_ball);
      json j = json::array();
      for (const auto& p : pts) j.push_back(latspec::point_to_json(p));
      emit(j, out_path);
    } else if (*prefix) {
      latspec::Lattice L = load_lattice(lattice_arg);
      emit(latspec::prefix_to_json(latspec::ordered_prefix(L, k)), out_path);
    } else if (*sp_torus || *sp_klein) {
      latspec::SpectrumPrefix s =
          *sp_torus ? latspec::torus_spectrum(load_lattice(lattice_arg), k)
                    : latspec::klein_spectrum(latspec::KleinBottle(a, b), k);
      emit(latspec::spectrum_to_json(s), out_path);
      if (!csv_path.empty()) {
        std::vector<std::string> rows;
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
          std::ostringstream os;
          os << i << "," << s.eigenvalues[i];
          rows.push_back(os.str());
        }
        write_csv(csv_path, "index,eigenvalue", rows);
      }
    } else if (*ct_torus) {
      json j;
      j["count"] = latspec::torus_counting(load_lattice(lattice_arg), lam, !nonstrict);
      emit(j, out_path);
    } else if (*ct_klein) {
      json j;
      j["count"] =
          latspec::klein_counting(latspec::KleinBottle(a, b), lam, !nonstrict);
      emit(j, out_path);
    } else if (*weyl_scan_cmd) {
      latspec::Lattice L = load_lattice(lattice_arg);
      latspec::WeylScanReport rep =
          latspec::weyl_scan(L, latspec::geometric_grid(lam_min, lam_max, grid_points));
      emit(latspec::weyl_report_to_json(rep), out_path);
      if (!csv_path.empty()) {
        std::vector<std::string> rows;
        for (const auto& r : rep.rows) {
          std::ostringstream os;
          os << r.lam << "," << r.count << "," << r.main_term << ","
             << r.remainder << "," << r.bound << "," << r.ratio;
          rows.push_back(os.str());
        }
        write_csv(csv_path, "lam,count,main_term,remainder,bound,ratio", rows);
      }
    } else if (*weyl_theta) {
      json j;
      j["discrepancy"] = latspec::theta_discrepancy(k, d, strict_flag);
      emit(j, out_path);
    } else if (*opt_torus) {
      latspec::TorusGridSpec grid;
      if (!grid_arg.empty()) {
        auto x = grid_arg.find('x');
        if (x == std::string::npos)
          throw latspec::Error(latspec::ErrorCode::BadArguments,
                               "--grid expects AxB, e.g. 200x200");
        grid.a_steps = std::stoi(grid_arg.substr(0, x));
        grid.b_steps = std::stoi(grid_arg.substr(x + 1));
      }
      grid.b_max = bmax;
      latspec::OptimizeReport rep = latspec::optimize_torus_2d(k, grid);
      emit(latspec::optimize_report_to_json(rep), out_path);
      if (!csv_path.empty()) {
        std::vector<std::string> rows;
        for (const auto& [p, v] : rep.trace) {
          std::ostringstream os;
          os << p.a << "," << p.b << "," << v;
          rows.push_back(os.str());
        }
        write_csv(csv_path, "a,b,value", rows);
      }
    } else if (*opt_klein) {
      latspec::OptimizeReport rep =
          latspec::optimize_klein(k, latspec::KleinBracket{amin, amax});
      emit(latspec::optimize_report_to_json(rep), out_path);
    } else if (*scan_deg) {
      std::vector<int> ks;
      for (int kk = kmin; kk <= kmax; kk += kstep) ks.push_back(kk);
      latspec::ScanMode mode = mode_arg == "klein" ? latspec::ScanMode::Klein
                                                   : latspec::ScanMode::Torus2D;
      emit(latspec::degeneracy_to_json(latspec::degeneracy_scan(ks, mode)), out_path);
    } else if (*fam_theta) {
      emit(latspec::lattice_to_json(latspec::theta_lattice(k, d)), out_path);
    } else if (*fam_klo) {
      emit(latspec::lattice_to_json(latspec::klo_lattice(k)), out_path);
    } else if (*fam_moduli) {
      emit(latspec::lattice_to_json(
               latspec::moduli_lattice(latspec::ModuliPoint2D{a, b})),
           out_path);
    } else if (*an_count) {
      latspec::Lattice L = load_lattice(lattice_arg);
      latspec::Decomposition dec =
          latspec::decomposition_from_json(load_json_arg(dec_arg));
      latspec::Ball body{radius, parse_vector(center_arg, L.dim())};
      json j;
      j["count"] = latspec::n_eps(dec, body, L, parse_vector(y_arg, L.dim()));
      j["main_term"] = dec.classification
                           ? json(latspec::main_term(dec, body, L))
                           : json(nullptr);
      emit(j, out_path);
    } else if (*an_scan) {
      latspec::Lattice L = load_lattice(lattice_arg);
      latspec::Decomposition dec =
          latspec::decomposition_from_json(load_json_arg(dec_arg));
      int nb = static_cast<int>(dec.blocks.size());
      latspec::RateSchedule schedule;
      Eigen::VectorXd av = parse_vector(alphas_arg, nb);
      schedule.alpha.assign(av.data(), av.data() + nb);
      if (coeffs_arg.empty()) {
        schedule.coeff.assign(nb, 1.0);
      } else {
        Eigen::VectorXd cv = parse_vector(coeffs_arg, nb);
        schedule.coeff.assign(cv.data(), cv.data() + nb);
      }
      std::vector<double> scales = latspec::geometric_grid(smin, smax, grid_points);
      std::reverse(scales.begin(), scales.end());  // coarse to fine
      latspec::AnisoReport rep = latspec::remainder_exponent_scan(
          dec, schedule, L, latspec::Ball{radius, {}}, scales);
      emit(latspec::aniso_report_to_json(rep), out_path);
    } else if (*verify) {
      auto results = latspec::run_acceptance(filter, seed, fast);
      json j = json::array();
      bool all = true;
      for (const auto& r : results) {
        std::cerr << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id
                  << "  " << r.name << "  (" << r.detail << ")\n";
        json jr;
        jr["id"] = r.id;
        jr["name"] = r.name;
        jr["passed"] = r.passed;
        jr["detail"] = r.detail;
        j.push_back(std::move(jr));
        all = all && r.passed;
      }
      emit(j, out_path);
      return all ? 0 : 1;
    }
  } catch (const latspec::Error& e) {
    std::cout << latspec::error_to_json(e).dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    json j;
    j["code"] = "INTERNAL";
    j["message"] = e.what();
    std::cout << j.dump(2) << "\n";
    return 2;
  }
  return 0;
}
