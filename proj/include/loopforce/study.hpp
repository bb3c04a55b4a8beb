#ifndef LOOPFORCE_STUDY_HPP
#define LOOPFORCE_STUDY_HPP

#include <span>
#include <vector>

#include "loopforce/curve.hpp"
#include "loopforce/integrate.hpp"
#include "loopforce/io.hpp"
#include "loopforce/kernel.hpp"

namespace loopforce {

// Least-squares slope of log(y) against log(x). Throws InvalidArgument for
// fewer than two points or non-positive data.
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct EpsStudySpec {
  double nu = kDefaultPoisson;
  std::vector<double> eps_values;  // positive, sorted (either direction)
  std::vector<double> points;      // curve parameters t0
  double psi_eps = 0.0;            // <= 0: estimate Psi at each row's eps
  QuadratureConfig quad;
};

// Columns: t0, eps, F_ref, F_exp, cF_ref, cF_exp, err_F, err_cF.
// Footer per t0: fitted log-log slopes of err_F and err_cF against eps.
Table study_eps(const ClosedCurve& curve, const EpsStudySpec& spec);

struct HStudySpec {
  double nu = kDefaultPoisson;
  double eps = kDefaultCoreRadius;
  std::vector<std::size_t> n_values;  // vertex counts, sorted ascending
  // Curve parameters to evaluate at; empty means every vertex. Explicit points
  // are evaluated at the nearest vertex of each loop.
  std::vector<double> points;
  double mesh_constant = kDefaultMeshConstant;
  QuadratureConfig quad;
};

// Columns: N, h, eps, max_err_F, mean_err_F, max_err_cF, bound, ratio with
// bound = eps + h |log eps| + h^{2/3} and ratio = max_err_F / bound.
// Footer: max_ratio, ratio_spread (max/min) and the fitted h-order of max_err_F.
// Loops whose N divides the largest N are subsampled from the finest loop so
// reference quadratures are computed once per distinct vertex.
Table study_h(const ClosedCurve& curve, const HStudySpec& spec);

struct CompareSpec {
  ElasticModel model;
  std::vector<double> points;
  QuadratureConfig quad;
};

// Columns: t0, phi, kappa, diff_ref, kappaC, residual with
// diff_ref = cF_ref - F_ref and residual = diff_ref - kappaC.
// Footer: max_abs_residual and max_abs_residual / eps.
Table compare_models(const ClosedCurve& curve, const CompareSpec& spec);

// n equally spaced parameters k / n.
std::vector<double> uniform_points(std::size_t n);

}  // namespace loopforce

#endif  // LOOPFORCE_STUDY_HPP
