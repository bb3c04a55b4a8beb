#include "loopforce/loopforce.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "loopforce/curve.hpp"
#include "loopforce/discrete.hpp"
#include "loopforce/error.hpp"
#include "loopforce/expansion.hpp"
#include "loopforce/io.hpp"
#include "loopforce/kernel.hpp"
#include "loopforce/reference.hpp"
#include "loopforce/study.hpp"

struct lf_curve {
  loopforce::ClosedCurve curve;
};

struct lf_polygon {
  loopforce::PolygonLoop loop;
};

namespace {

using namespace loopforce;

thread_local std::string g_last_error;

lf_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return LF_INVALID_ARGUMENT;
    case ErrorCode::Curve: return LF_CURVE_ERROR;
    case ErrorCode::Excision: return LF_EXCISION_ERROR;
    case ErrorCode::Singular: return LF_SINGULAR;
    case ErrorCode::NonConvergence: return LF_NONCONVERGENCE;
    case ErrorCode::Mesh: return LF_MESH_ERROR;
    case ErrorCode::Io: return LF_IO_ERROR;
    case ErrorCode::Parse: return LF_PARSE_ERROR;
  }
  return LF_INTERNAL_ERROR;
}

lf_status fail(lf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
lf_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LF_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LF_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(LF_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(LF_INTERNAL_ERROR, "unknown error");
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, message);
}

ElasticModel to_model(lf_model m) {
  ElasticModel model{m.nu, m.eps};
  model.validate();
  return model;
}

QuadratureConfig to_quad(const lf_quadrature* q) {
  QuadratureConfig cfg;
  if (q != nullptr) {
    cfg.rel_tol = q->rel_tol;
    cfg.abs_tol = q->abs_tol;
    cfg.max_depth = q->max_depth;
    cfg.initial_splits_near_singularity = q->initial_splits;
    cfg.max_panels = q->max_panels;
  }
  cfg.validate();
  return cfg;
}

ForceModel to_which(lf_force_model which) {
  switch (which) {
    case LF_CUTOFF: return ForceModel::Cutoff;
    case LF_NONSINGULAR: return ForceModel::NonSingular;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown force model");
}

double mesh_or_default(double mesh_constant) {
  return mesh_constant > 0.0 ? mesh_constant : kDefaultMeshConstant;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class T>
std::vector<T> to_vector(const T* data, std::size_t n) {
  require(n == 0 || data != nullptr, "null array with non-zero length");
  return n == 0 ? std::vector<T>{} : std::vector<T>(data, data + n);
}

}  // namespace

extern "C" {

const char* lf_version(void) { return "1.0.0"; }

const char* lf_last_error(void) { return g_last_error.c_str(); }

const char* lf_status_name(lf_status status) {
  switch (status) {
    case LF_OK: return "ok";
    case LF_INVALID_ARGUMENT: return "invalid argument";
    case LF_CURVE_ERROR: return "curve error";
    case LF_EXCISION_ERROR: return "excision error";
    case LF_SINGULAR: return "singular";
    case LF_NONCONVERGENCE: return "non-convergence";
    case LF_MESH_ERROR: return "mesh error";
    case LF_IO_ERROR: return "io error";
    case LF_PARSE_ERROR: return "parse error";
    case LF_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

lf_model lf_default_model(void) { return {kDefaultPoisson, kDefaultCoreRadius}; }

lf_quadrature lf_default_quadrature(void) {
  const QuadratureConfig cfg;
  return {cfg.rel_tol, cfg.abs_tol, cfg.max_depth, cfg.initial_splits_near_singularity,
          cfg.max_panels};
}

void lf_string_free(char* s) { std::free(s); }

lf_status lf_curve_preset(const char* name, lf_curve** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = new lf_curve{preset_curve(name)};
  });
}

lf_status lf_curve_circle(double radius, double cx, double cy, lf_curve** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new lf_curve{ClosedCurve::circle(radius, {cx, cy})};
  });
}

lf_status lf_curve_ellipse(double a, double b, double cx, double cy, lf_curve** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new lf_curve{ClosedCurve::ellipse(a, b, {cx, cy})};
  });
}

lf_status lf_curve_from_json(const char* text, lf_curve** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new lf_curve{curve_from_json(text)};
  });
}

lf_status lf_curve_from_file(const char* path, lf_curve** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new lf_curve{curve_from_file(path)};
  });
}

void lf_curve_free(lf_curve* curve) { delete curve; }

lf_status lf_curve_eval(const lf_curve* curve, double t, double* x, double* y) {
  return guarded([&] {
    require(curve != nullptr && x != nullptr && y != nullptr, "null argument");
    const Vec2 p = curve->curve.eval(t);
    *x = p.x;
    *y = p.y;
  });
}

lf_status lf_curve_frame(const lf_curve* curve, double t, lf_frame* out) {
  return guarded([&] {
    require(curve != nullptr && out != nullptr, "null argument");
    const LocalFrame f = curve->curve.frame_at(t);
    *out = {f.x.x, f.x.y, f.tau.x, f.tau.y, f.n.x, f.n.y, f.kappa, f.phi};
  });
}

lf_status lf_curve_length(const lf_curve* curve, double* out) {
  return guarded([&] {
    require(curve != nullptr && out != nullptr, "null argument");
    *out = curve->curve.length();
  });
}

lf_status lf_ball_exit_params(const lf_curve* curve, double t0, double eps, double* t_minus,
                              double* t_plus) {
  return guarded([&] {
    require(curve != nullptr && t_minus != nullptr && t_plus != nullptr, "null argument");
    const auto [lo, hi] = ball_exit_params(curve->curve, t0, eps);
    *t_minus = lo;
    *t_plus = hi;
  });
}

lf_status lf_segment_force(double x1, double x2, double y1, double y2, double nu, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = segment_force({x1, x2}, {y1, y2}, nu);
  });
}

lf_status lf_expansion_constants(double phi, double nu, double* a, double* b, double* c) {
  return guarded([&] {
    require(std::isfinite(phi) && std::isfinite(nu), "non-finite argument");
    if (a != nullptr) *a = const_A(phi, nu);
    if (b != nullptr) *b = const_B(phi, nu);
    if (c != nullptr) *c = const_C(phi, nu);
  });
}

lf_status lf_circle_arc_integral(double kappa, double phi, double eps, double nu, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = circle_arc_integral(kappa, phi, eps, nu);
  });
}

lf_status lf_force_reference(const lf_curve* curve, double t0, lf_model model,
                             lf_force_model which, const lf_quadrature* quad, double* out) {
  return guarded([&] {
    require(curve != nullptr && out != nullptr, "null argument");
    *out = force_reference(to_which(which), curve->curve, t0, to_model(model), to_quad(quad));
  });
}

lf_status lf_force_expansion(const lf_curve* curve, double t0, lf_model model,
                             lf_force_model which, double psi_eps, const lf_quadrature* quad,
                             lf_breakdown* out) {
  return guarded([&] {
    require(curve != nullptr && out != nullptr, "null argument");
    const ElasticModel m = to_model(model);
    const QuadratureConfig cfg = to_quad(quad);
    const ForceBreakdown b = to_which(which) == ForceModel::Cutoff
                                 ? force_cutoff_expansion(curve->curve, t0, m, psi_eps, cfg)
                                 : force_nonsingular_expansion(curve->curve, t0, m, psi_eps, cfg);
    *out = {b.log_term, b.local_term, b.psi,          b.model_shift,
            b.total,    b.psi_eval_eps, b.kappa, b.phi};
  });
}

lf_status lf_psi_estimate(const lf_curve* curve, double t0, double eval_eps, double nu,
                          int richardson, const lf_quadrature* quad, double* out) {
  return guarded([&] {
    require(curve != nullptr && out != nullptr, "null argument");
    const QuadratureConfig cfg = to_quad(quad);
    *out = richardson != 0 ? psi_richardson(curve->curve, t0, eval_eps, nu, cfg)
                           : psi_estimate(curve->curve, t0, eval_eps, nu, cfg);
  });
}

lf_status lf_polygon_sample(const lf_curve* curve, size_t n, double mesh_constant,
                            lf_polygon** out) {
  return guarded([&] {
    require(curve != nullptr && out != nullptr, "null argument");
    *out = new lf_polygon{sample_polygon(curve->curve, n, mesh_or_default(mesh_constant))};
  });
}

lf_status lf_polygon_from_points(const double* xy, size_t n, double mesh_constant,
                                 lf_polygon** out) {
  return guarded([&] {
    require(xy != nullptr && out != nullptr, "null argument");
    std::vector<Vec2> points(n);
    for (std::size_t i = 0; i < n; ++i) points[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = new lf_polygon{PolygonLoop(std::move(points), mesh_or_default(mesh_constant))};
  });
}

lf_status lf_polygon_load(const char* path, double mesh_constant, lf_polygon** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new lf_polygon{load_polygon(path, mesh_or_default(mesh_constant))};
  });
}

void lf_polygon_free(lf_polygon* polygon) { delete polygon; }

size_t lf_polygon_size(const lf_polygon* polygon) {
  return polygon == nullptr ? 0 : polygon->loop.size();
}

lf_status lf_polygon_point(const lf_polygon* polygon, ptrdiff_t i, double* x, double* y) {
  return guarded([&] {
    require(polygon != nullptr && x != nullptr && y != nullptr, "null argument");
    const Vec2 p = polygon->loop.at(i);
    *x = p.x;
    *y = p.y;
  });
}

lf_status lf_polygon_parameter(const lf_polygon* polygon, ptrdiff_t i, double* out) {
  return guarded([&] {
    require(polygon != nullptr && out != nullptr, "null argument");
    const auto params = polygon->loop.parameters();
    require(!params.empty(), "polygon has no curve parameters");
    const auto n = static_cast<std::ptrdiff_t>(params.size());
    *out = params[static_cast<std::size_t>(((i % n) + n) % n)];
  });
}

lf_status lf_polygon_mesh(const lf_polygon* polygon, double* h, double* h_min, double* h_max) {
  return guarded([&] {
    require(polygon != nullptr, "null argument");
    if (h != nullptr) *h = polygon->loop.h();
    if (h_min != nullptr) *h_min = polygon->loop.h_min();
    if (h_max != nullptr) *h_max = polygon->loop.h_max();
  });
}

lf_status lf_polygon_to_text(const lf_polygon* polygon, char** out) {
  return guarded([&] {
    require(polygon != nullptr && out != nullptr, "null argument");
    std::ostringstream os;
    write_polygon(os, polygon->loop);
    *out = copy_string(os.str());
  });
}

lf_status lf_neighborhood_count(double h, size_t* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = neighborhood_count(h);
  });
}

lf_status lf_discrete_frame(const lf_polygon* polygon, ptrdiff_t i, double* kappa_h, double* n_x,
                            double* n_y, double* phi_h) {
  return guarded([&] {
    require(polygon != nullptr, "null argument");
    const DiscreteFrame f = discrete_frame(polygon->loop, i);
    if (kappa_h != nullptr) *kappa_h = f.kappa_h;
    if (n_x != nullptr) *n_x = f.n_h.x;
    if (n_y != nullptr) *n_y = f.n_h.y;
    if (phi_h != nullptr) *phi_h = f.phi_h;
  });
}

lf_status lf_force_discrete(const lf_polygon* polygon, ptrdiff_t i, lf_model model,
                            lf_force_model which, double* out) {
  return guarded([&] {
    require(polygon != nullptr && out != nullptr, "null argument");
    *out = force_discrete(to_which(which), polygon->loop, i, to_model(model));
  });
}

lf_status lf_force_all_points(const lf_polygon* polygon, lf_model model, lf_force_model which,
                              double* out, size_t out_len) {
  return guarded([&] {
    require(polygon != nullptr && out != nullptr, "null argument");
    require(out_len >= polygon->loop.size(), "output buffer shorter than the polygon");
    const auto values = force_all_points(polygon->loop, to_model(model), to_which(which));
    std::copy(values.begin(), values.end(), out);
  });
}

lf_status lf_study_eps(const lf_curve* curve, double nu, const double* eps_values, size_t n_eps,
                       const double* points, size_t n_points, double psi_eps,
                       const lf_quadrature* quad, char** csv) {
  return guarded([&] {
    require(curve != nullptr && csv != nullptr, "null argument");
    EpsStudySpec spec;
    spec.nu = nu;
    spec.eps_values = to_vector(eps_values, n_eps);
    spec.points = to_vector(points, n_points);
    spec.psi_eps = psi_eps;
    spec.quad = to_quad(quad);
    *csv = copy_string(study_eps(curve->curve, spec).to_csv());
  });
}

lf_status lf_study_h(const lf_curve* curve, double nu, double eps, const size_t* n_values,
                     size_t n_count, const double* points, size_t n_points, double mesh_constant,
                     const lf_quadrature* quad, char** csv) {
  return guarded([&] {
    require(curve != nullptr && csv != nullptr, "null argument");
    HStudySpec spec;
    spec.nu = nu;
    spec.eps = eps;
    spec.n_values = to_vector(n_values, n_count);
    spec.points = to_vector(points, n_points);
    spec.mesh_constant = mesh_or_default(mesh_constant);
    spec.quad = to_quad(quad);
    *csv = copy_string(study_h(curve->curve, spec).to_csv());
  });
}

lf_status lf_compare_models(const lf_curve* curve, lf_model model, const double* points,
                            size_t n_points, const lf_quadrature* quad, char** csv) {
  return guarded([&] {
    require(curve != nullptr && csv != nullptr, "null argument");
    CompareSpec spec;
    spec.model = to_model(model);
    spec.points = to_vector(points, n_points);
    spec.quad = to_quad(quad);
    *csv = copy_string(compare_models(curve->curve, spec).to_csv());
  });
}

}  // extern "C"
