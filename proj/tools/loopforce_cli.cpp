#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "loopforce/loopforce.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Failure {
  lf_status status;
  std::string context;
};

void check(lf_status status, const std::string& context) {
  if (status != LF_OK) throw Failure{status, context + ": " + lf_last_error()};
}

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct CurveDeleter {
  void operator()(lf_curve* c) const { lf_curve_free(c); }
};
struct PolygonDeleter {
  void operator()(lf_polygon* p) const { lf_polygon_free(p); }
};
struct StringDeleter {
  void operator()(char* s) const { lf_string_free(s); }
};
using CurvePtr = std::unique_ptr<lf_curve, CurveDeleter>;
using PolygonPtr = std::unique_ptr<lf_polygon, PolygonDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Common {
  std::string curve_file;
  std::string preset;
  double nu = 0.3;
  double eps = 1e-4;
  double tol = 0.0;  // <= 0: library default
  double mesh_constant = 3.0;
  std::string out;
};

CurvePtr load_curve(const Common& c) {
  lf_curve* raw = nullptr;
  if (!c.curve_file.empty()) {
    check(lf_curve_from_file(c.curve_file.c_str(), &raw), "curve");
  } else if (!c.preset.empty()) {
    check(lf_curve_preset(c.preset.c_str(), &raw), "curve");
  } else {
    throw CLI::ValidationError("curve", "one of --curve or --preset is required");
  }
  return CurvePtr(raw);
}

lf_quadrature quadrature(const Common& c) {
  lf_quadrature q = lf_default_quadrature();
  if (c.tol > 0.0) q.rel_tol = c.tol;
  return q;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Failure{LF_IO_ERROR, "output: cannot open " + c.out};
  f << text;
  if (!f) throw Failure{LF_IO_ERROR, "output: write failed for " + c.out};
}

std::string take(char* s) { return std::string(StringPtr(s).get()); }

std::vector<double> uniform(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / static_cast<double>(n);
  return t;
}

// force -------------------------------------------------------------------

struct ForceArgs {
  std::string method = "reference";
  std::vector<double> t0{0.0};
  std::vector<long long> vertices{0};
  bool all_vertices = false;
  double psi_eps = 0.0;
  std::size_t n = 0;
  std::string polygon;
};

std::string force_reference_report(const Common& c, const ForceArgs& a) {
  const CurvePtr curve = load_curve(c);
  const lf_quadrature q = quadrature(c);
  const lf_model model{c.nu, c.eps};
  std::ostringstream os;
  os << "t0,F_ref,cF_ref\n";
  for (double t : a.t0) {
    double f = 0.0, cf = 0.0;
    check(lf_force_reference(curve.get(), t, model, LF_CUTOFF, &q, &f), "force t0=" + num(t));
    check(lf_force_reference(curve.get(), t, model, LF_NONSINGULAR, &q, &cf), "force t0=" + num(t));
    os << num(t) << ',' << num(f) << ',' << num(cf) << '\n';
  }
  return os.str();
}

std::string force_expansion_report(const Common& c, const ForceArgs& a) {
  const CurvePtr curve = load_curve(c);
  const lf_quadrature q = quadrature(c);
  const lf_model model{c.nu, c.eps};
  const double psi_eps = a.psi_eps > 0.0 ? a.psi_eps : 1e-3;
  std::ostringstream os;
  os << "t0,model,log_term,local_term,psi,model_shift,total,psi_eval_eps,kappa,phi\n";
  for (double t : a.t0) {
    for (lf_force_model which : {LF_CUTOFF, LF_NONSINGULAR}) {
      lf_breakdown b{};
      check(lf_force_expansion(curve.get(), t, model, which, psi_eps, &q, &b),
            "force t0=" + num(t));
      os << num(t) << ',' << (which == LF_CUTOFF ? "cutoff" : "nonsingular") << ','
         << num(b.log_term) << ',' << num(b.local_term) << ',' << num(b.psi) << ','
         << num(b.model_shift) << ',' << num(b.total) << ',' << num(b.psi_eval_eps) << ','
         << num(b.kappa) << ',' << num(b.phi) << '\n';
    }
  }
  return os.str();
}

PolygonPtr make_polygon(const Common& c, const std::string& file, std::size_t n) {
  lf_polygon* raw = nullptr;
  if (!file.empty()) {
    check(lf_polygon_load(file.c_str(), c.mesh_constant, &raw), "polygon");
  } else {
    if (n == 0) throw CLI::ValidationError("--n", "vertex count required for sampling");
    const CurvePtr curve = load_curve(c);
    check(lf_polygon_sample(curve.get(), n, c.mesh_constant, &raw), "sample N=" + std::to_string(n));
  }
  return PolygonPtr(raw);
}

std::string force_discrete_report(const Common& c, const ForceArgs& a) {
  const PolygonPtr poly = make_polygon(c, a.polygon, a.n);
  const lf_model model{c.nu, c.eps};
  const std::size_t n = lf_polygon_size(poly.get());
  std::vector<long long> idx = a.vertices;
  if (a.all_vertices) {
    idx.resize(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<long long>(i);
  }
  std::ostringstream os;
  os << "vertex,x,y,F_h,cF_h\n";
  for (long long i : idx) {
    const auto pi = static_cast<std::ptrdiff_t>(i);
    double x = 0.0, y = 0.0, f = 0.0, cf = 0.0;
    const std::string ctx = "force vertex " + std::to_string(i);
    check(lf_polygon_point(poly.get(), pi, &x, &y), ctx);
    check(lf_force_discrete(poly.get(), pi, model, LF_CUTOFF, &f), ctx);
    check(lf_force_discrete(poly.get(), pi, model, LF_NONSINGULAR, &cf), ctx);
    os << i << ',' << num(x) << ',' << num(y) << ',' << num(f) << ',' << num(cf) << '\n';
  }
  return os.str();
}

// psi ---------------------------------------------------------------------

struct PsiArgs {
  std::vector<double> t0{0.0};
  double psi_eps = 1e-3;
  bool richardson = false;
};

std::string psi_report(const Common& c, const PsiArgs& a) {
  const CurvePtr curve = load_curve(c);
  const lf_quadrature q = quadrature(c);
  std::ostringstream os;
  os << "t0,psi_eval_eps,psi\n";
  for (double t : a.t0) {
    double psi = 0.0;
    check(lf_psi_estimate(curve.get(), t, a.psi_eps, c.nu, a.richardson ? 1 : 0, &q, &psi),
          "psi t0=" + num(t));
    os << num(t) << ',' << num(a.psi_eps) << ',' << num(psi) << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-force of closed dislocation loops: reference, expansion and discrete schemes"};
  app.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  auto* curve_opt = app.add_option("--curve", common.curve_file, "Curve JSON file");
  auto* preset_opt = app.add_option("--preset", common.preset, "Named curve: circle, ellipse, blob");
  curve_opt->excludes(preset_opt);
  app.add_option("--nu", common.nu, "Poisson ratio")->capture_default_str();
  app.add_option("--eps", common.eps, "Core radius")->capture_default_str();
  app.add_option("--tol", common.tol, "Relative quadrature tolerance (default 1e-10)");
  app.add_option("--mesh-constant", common.mesh_constant, "Allowed h_max/h_min")
      ->capture_default_str();
  app.add_option("--out", common.out, "Output file (default stdout)");

  ForceArgs force;
  auto* cmd_force = app.add_subcommand("force", "Force at curve parameters or polygon vertices");
  cmd_force->add_option("--method", force.method, "reference | expansion | discrete")
      ->check(CLI::IsMember({"reference", "expansion", "discrete"}))
      ->capture_default_str();
  cmd_force->add_option("--points,--t0", force.t0, "Curve parameters (comma separated)")
      ->delimiter(',');
  cmd_force->add_option("--vertex", force.vertices, "Vertex indices for method=discrete")
      ->delimiter(',');
  cmd_force->add_flag("--all-vertices", force.all_vertices, "Every vertex for method=discrete");
  cmd_force->add_option("--psi-eps", force.psi_eps, "Psi evaluation radius (default 1e-3)");
  cmd_force->add_option("--n", force.n, "Vertex count for sampling the curve");
  cmd_force->add_option("--polygon", force.polygon, "Point-list file instead of a sampled curve");

  PsiArgs psi;
  auto* cmd_psi = app.add_subcommand("psi", "Finite-eps estimate of the nonlocal term");
  cmd_psi->add_option("--points,--t0", psi.t0, "Curve parameters")->delimiter(',');
  cmd_psi->add_option("--psi-eps", psi.psi_eps, "Evaluation radius")->capture_default_str();
  cmd_psi->add_flag("--richardson", psi.richardson, "Use 2 psi(eps/2) - psi(eps)");

  std::vector<double> eps_values{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  std::vector<double> eps_points{0.0};
  double eps_psi = 0.0;
  auto* cmd_eps = app.add_subcommand("study-eps", "Expansion error against eps");
  cmd_eps->add_option("--eps-values", eps_values, "Sweep values")->delimiter(',')
      ->capture_default_str();
  cmd_eps->add_option("--points", eps_points, "Curve parameters")->delimiter(',');
  cmd_eps->add_option("--psi-eps", eps_psi, "Psi evaluation radius; <= 0 uses each row's eps");

  std::vector<std::size_t> h_values{64, 128, 256, 512, 1024, 2048, 4096};
  std::vector<double> h_points;
  auto* cmd_h = app.add_subcommand("study-h", "Discrete scheme error against h");
  cmd_h->add_option("--n", h_values, "Vertex counts, ascending")->delimiter(',')
      ->capture_default_str();
  cmd_h->add_option("--points", h_points, "Curve parameters (default: every vertex)")
      ->delimiter(',');

  std::vector<double> cmp_points;
  std::size_t cmp_uniform = 16;
  auto* cmd_cmp = app.add_subcommand("compare-models", "Non-singular minus cut-off force");
  cmd_cmp->add_option("--points", cmp_points, "Curve parameters")->delimiter(',');
  cmd_cmp->add_option("--uniform", cmp_uniform, "Equally spaced parameters if --points is absent")
      ->capture_default_str();

  std::size_t sample_n = 0;
  auto* cmd_sample = app.add_subcommand("sample", "Write a polygon point file");
  cmd_sample->add_option("--n", sample_n, "Vertex count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const lf_quadrature q = quadrature(common);
    if (cmd_force->parsed()) {
      if (force.method == "reference") emit(common, force_reference_report(common, force));
      else if (force.method == "expansion") emit(common, force_expansion_report(common, force));
      else emit(common, force_discrete_report(common, force));
    } else if (cmd_psi->parsed()) {
      emit(common, psi_report(common, psi));
    } else if (cmd_eps->parsed()) {
      const CurvePtr curve = load_curve(common);
      char* csv = nullptr;
      check(lf_study_eps(curve.get(), common.nu, eps_values.data(), eps_values.size(),
                         eps_points.data(), eps_points.size(), eps_psi, &q, &csv),
            "study-eps");
      emit(common, take(csv));
    } else if (cmd_h->parsed()) {
      const CurvePtr curve = load_curve(common);
      char* csv = nullptr;
      check(lf_study_h(curve.get(), common.nu, common.eps, h_values.data(), h_values.size(),
                       h_points.data(), h_points.size(), common.mesh_constant, &q, &csv),
            "study-h");
      emit(common, take(csv));
    } else if (cmd_cmp->parsed()) {
      const CurvePtr curve = load_curve(common);
      const std::vector<double> pts = cmp_points.empty() ? uniform(cmp_uniform) : cmp_points;
      char* csv = nullptr;
      check(lf_compare_models(curve.get(), {common.nu, common.eps}, pts.data(), pts.size(), &q,
                              &csv),
            "compare-models");
      emit(common, take(csv));
    } else if (cmd_sample->parsed()) {
      const PolygonPtr poly = make_polygon(common, "", sample_n);
      char* text = nullptr;
      check(lf_polygon_to_text(poly.get(), &text), "sample");
      emit(common, take(text));
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Failure& f) {
    std::cerr << "error (" << lf_status_name(f.status) << "): " << f.context << '\n';
    return f.status == LF_INVALID_ARGUMENT ? kExitUsage : kExitFailure;
  }
  return 0;
}
