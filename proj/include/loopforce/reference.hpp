#ifndef LOOPFORCE_REFERENCE_HPP
#define LOOPFORCE_REFERENCE_HPP

#include "loopforce/curve.hpp"
#include "loopforce/integrate.hpp"
#include "loopforce/kernel.hpp"

namespace loopforce {

enum class ForceModel { Cutoff, NonSingular };

// Cut-off force at x = p(t0): the integral of G(y - x) . tau(y) over the curve
// with the ball B(x, eps) removed, by adaptive quadrature in the curve
// parameter. The excised arc ends at the exact root-found exit parameters.
// Both references floor cfg.abs_tol at 4 DBL_EPSILON length / eps, the
// rounding limit of the O(1 / eps^2) integrand.
double force_cutoff_reference(const ClosedCurve& curve, double t0, const ElasticModel& model,
                              const QuadratureConfig& cfg = {});

// Non-singular force at x = p(t0): the closed-loop integral of
// G_eps(y - x) . tau(y). The O(eps)-wide peak at t0 is resolved by dyadic
// pre-splitting around t0 before adaptive refinement.
double force_nonsingular_reference(const ClosedCurve& curve, double t0,
                                   const ElasticModel& model, const QuadratureConfig& cfg = {});

double force_reference(ForceModel which, const ClosedCurve& curve, double t0,
                       const ElasticModel& model, const QuadratureConfig& cfg = {});

}  // namespace loopforce

#endif  // LOOPFORCE_REFERENCE_HPP
