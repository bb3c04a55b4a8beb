#include "loopforce/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "loopforce/error.hpp"

namespace loopforce {
namespace {

// Geometric offsets first, first*2, first*4, ... strictly below limit.
std::vector<double> dyadic_offsets(double first, double limit) {
  std::vector<double> out;
  for (double d = first; d < limit; d *= 2.0) out.push_back(d);
  return out;
}

// Rounding in the O(1 / eps^2) integrand bounds the attainable absolute
// accuracy by about DBL_EPSILON * length / eps; the tolerance is floored there.
QuadratureConfig with_rounding_floor(QuadratureConfig cfg, const ClosedCurve& curve, double eps) {
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * curve.length() / eps;
  cfg.abs_tol = std::max(cfg.abs_tol, floor);
  return cfg;
}

}  // namespace

double force_cutoff_reference(const ClosedCurve& curve, double t0, const ElasticModel& model,
                              const QuadratureConfig& cfg) {
  model.validate();
  const auto [s_minus, s_plus] = ball_exit_offsets(curve, t0, model.eps);
  const double nu = model.nu;
  auto f = [&](double s) {
    return dot(kernel_G(curve.chord(t0, s), nu), curve.derivative(t0 + s, 1));
  };
  // Fold the two halves of the complement onto u in [0, half]: both cut ends
  // stay exact small offsets and the leading odd parts cancel pointwise.
  const double half = 0.5 * (1.0 + s_minus - s_plus);
  auto integrand = [&](double u) { return f(s_plus + u) + f(s_minus - u); };

  // Residual growth near u = 0 is O(1/eps), so panels grow geometrically.
  std::vector<double> breaks{0.0};
  for (double d : dyadic_offsets(std::min(s_plus, -s_minus), 0.5 * half)) breaks.push_back(d);
  breaks.push_back(half);
  return adaptive_integrate(integrand, breaks, with_rounding_floor(cfg, curve, model.eps)).value;
}

double force_nonsingular_reference(const ClosedCurve& curve, double t0,
                                   const ElasticModel& model, const QuadratureConfig& cfg) {
  model.validate();
  auto f = [&](double s) {
    return dot(kernel_G_eps(curve.chord(t0, s), model), curve.derivative(t0 + s, 1));
  };
  auto integrand = [&](double u) { return f(u) + f(-u); };

  // Bump of width O(eps) at u = 0: split the core evenly, then grow panels
  // dyadically out to half a period.
  const double core = std::min(model.eps / curve.speed(t0), 0.125);
  std::vector<double> breaks;
  const int splits = cfg.initial_splits_near_singularity;
  for (int k = 0; k <= splits; ++k) breaks.push_back(core * static_cast<double>(k) / splits);
  for (double d : dyadic_offsets(2.0 * core, 0.25)) breaks.push_back(d);
  breaks.push_back(0.5);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return adaptive_integrate(integrand, breaks, with_rounding_floor(cfg, curve, model.eps)).value;
}

double force_reference(ForceModel which, const ClosedCurve& curve, double t0,
                       const ElasticModel& model, const QuadratureConfig& cfg) {
  return which == ForceModel::Cutoff ? force_cutoff_reference(curve, t0, model, cfg)
                                     : force_nonsingular_reference(curve, t0, model, cfg);
}

}  // namespace loopforce
