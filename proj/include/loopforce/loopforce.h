#ifndef LOOPFORCE_LOOPFORCE_H
#define LOOPFORCE_LOOPFORCE_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(LOOPFORCE_BUILDING)
#define LF_API __declspec(dllexport)
#else
#define LF_API __declspec(dllimport)
#endif
#else
#define LF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning lf_status stores a message retrievable
   with lf_last_error() on failure (per calling thread). */
typedef enum lf_status {
  LF_OK = 0,
  LF_INVALID_ARGUMENT = 1,
  LF_CURVE_ERROR = 2,
  LF_EXCISION_ERROR = 3,
  LF_SINGULAR = 4,
  LF_NONCONVERGENCE = 5,
  LF_MESH_ERROR = 6,
  LF_IO_ERROR = 7,
  LF_PARSE_ERROR = 8,
  LF_INTERNAL_ERROR = 99
} lf_status;

typedef enum lf_force_model { LF_CUTOFF = 0, LF_NONSINGULAR = 1 } lf_force_model;

typedef struct lf_curve lf_curve;
typedef struct lf_polygon lf_polygon;

typedef struct lf_model {
  double nu;
  double eps;
} lf_model;

/* Adaptive quadrature settings. NULL pointers select the defaults. */
typedef struct lf_quadrature {
  double rel_tol;
  double abs_tol;
  int max_depth;
  int initial_splits;
  size_t max_panels;
} lf_quadrature;

typedef struct lf_frame {
  double x, y;
  double tau_x, tau_y;
  double n_x, n_y;
  double kappa;
  double phi;
} lf_frame;

typedef struct lf_breakdown {
  double log_term;
  double local_term;
  double psi;
  double model_shift;
  double total;
  double psi_eval_eps;
  double kappa;
  double phi;
} lf_breakdown;

LF_API const char* lf_version(void);
LF_API const char* lf_last_error(void);
LF_API const char* lf_status_name(lf_status status);
LF_API lf_model lf_default_model(void);
LF_API lf_quadrature lf_default_quadrature(void);
LF_API void lf_string_free(char* s);

/* Curves. */
LF_API lf_status lf_curve_preset(const char* name, lf_curve** out);
LF_API lf_status lf_curve_circle(double radius, double cx, double cy, lf_curve** out);
LF_API lf_status lf_curve_ellipse(double a, double b, double cx, double cy, lf_curve** out);
LF_API lf_status lf_curve_from_json(const char* text, lf_curve** out);
LF_API lf_status lf_curve_from_file(const char* path, lf_curve** out);
LF_API void lf_curve_free(lf_curve* curve);
LF_API lf_status lf_curve_eval(const lf_curve* curve, double t, double* x, double* y);
LF_API lf_status lf_curve_frame(const lf_curve* curve, double t, lf_frame* out);
LF_API lf_status lf_curve_length(const lf_curve* curve, double* out);
LF_API lf_status lf_ball_exit_params(const lf_curve* curve, double t0, double eps,
                                     double* t_minus, double* t_plus);

/* Kernel and expansion constants. */
LF_API lf_status lf_segment_force(double x1, double x2, double y1, double y2, double nu,
                                  double* out);
LF_API lf_status lf_expansion_constants(double phi, double nu, double* a, double* b,
                                        double* c);
LF_API lf_status lf_circle_arc_integral(double kappa, double phi, double eps, double nu,
                                        double* out);

/* Continuous forces at curve parameter t0. */
LF_API lf_status lf_force_reference(const lf_curve* curve, double t0, lf_model model,
                                    lf_force_model which, const lf_quadrature* quad,
                                    double* out);
LF_API lf_status lf_force_expansion(const lf_curve* curve, double t0, lf_model model,
                                    lf_force_model which, double psi_eps,
                                    const lf_quadrature* quad, lf_breakdown* out);
/* richardson != 0 selects 2 psi(eval_eps / 2) - psi(eval_eps). */
LF_API lf_status lf_psi_estimate(const lf_curve* curve, double t0, double eval_eps, double nu,
                                 int richardson, const lf_quadrature* quad, double* out);

/* Polygon loops. mesh_constant <= 0 selects the default. */
LF_API lf_status lf_polygon_sample(const lf_curve* curve, size_t n, double mesh_constant,
                                   lf_polygon** out);
LF_API lf_status lf_polygon_from_points(const double* xy, size_t n, double mesh_constant,
                                        lf_polygon** out);
LF_API lf_status lf_polygon_load(const char* path, double mesh_constant, lf_polygon** out);
LF_API void lf_polygon_free(lf_polygon* polygon);
LF_API size_t lf_polygon_size(const lf_polygon* polygon);
LF_API lf_status lf_polygon_point(const lf_polygon* polygon, ptrdiff_t i, double* x, double* y);
/* Curve parameter of vertex i; LF_INVALID_ARGUMENT for loops read from points. */
LF_API lf_status lf_polygon_parameter(const lf_polygon* polygon, ptrdiff_t i, double* out);
LF_API lf_status lf_polygon_mesh(const lf_polygon* polygon, double* h, double* h_min,
                                 double* h_max);
/* "x y" lines, caller frees with lf_string_free. */
LF_API lf_status lf_polygon_to_text(const lf_polygon* polygon, char** out);
LF_API lf_status lf_neighborhood_count(double h, size_t* out);
LF_API lf_status lf_discrete_frame(const lf_polygon* polygon, ptrdiff_t i, double* kappa_h,
                                   double* n_x, double* n_y, double* phi_h);
LF_API lf_status lf_force_discrete(const lf_polygon* polygon, ptrdiff_t i, lf_model model,
                                   lf_force_model which, double* out);
/* out must hold lf_polygon_size(polygon) values. */
LF_API lf_status lf_force_all_points(const lf_polygon* polygon, lf_model model,
                                     lf_force_model which, double* out, size_t out_len);

/* Studies. Each returns a CSV table (header row, data rows, '#' footer lines);
   the caller frees it with lf_string_free. psi_eps <= 0 estimates Psi at each
   row's eps. For lf_study_h, n_points == 0 evaluates every vertex and
   mesh_constant <= 0 selects the default. */
LF_API lf_status lf_study_eps(const lf_curve* curve, double nu, const double* eps_values,
                              size_t n_eps, const double* points, size_t n_points,
                              double psi_eps, const lf_quadrature* quad, char** csv);
LF_API lf_status lf_study_h(const lf_curve* curve, double nu, double eps,
                            const size_t* n_values, size_t n_count, const double* points,
                            size_t n_points, double mesh_constant, const lf_quadrature* quad,
                            char** csv);
LF_API lf_status lf_compare_models(const lf_curve* curve, lf_model model, const double* points,
                                   size_t n_points, const lf_quadrature* quad, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* LOOPFORCE_LOOPFORCE_H */
