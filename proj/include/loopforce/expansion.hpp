#ifndef LOOPFORCE_EXPANSION_HPP
#define LOOPFORCE_EXPANSION_HPP

#include "loopforce/curve.hpp"
#include "loopforce/integrate.hpp"
#include "loopforce/kernel.hpp"

namespace loopforce {

inline constexpr double kDefaultPsiEps = 1e-3;

// Angle-dependent constants of the small-eps expansion. They depend on phi only
// through cos^2 phi.
double const_A(double phi, double nu);  // 1 + nu - 3 nu cos^2 phi
double const_B(double phi, double nu);  // 2 (log 2 - (1 - log 2) nu - (3 log 2 - 2) nu cos^2 phi)
// (-3 - nu + 3 (1 + nu) cos^2 phi) / 2 + A_phi log 2. The log 2 A_phi part comes
// from the core scale of G_eps: the non-singular force behaves like the cut-off
// force at radius eps / 2. C_0 = log 2 + (1 - 2 log 2) nu.
double const_C(double phi, double nu);

// kappa A_phi log(1 / (eps |kappa|)) + kappa B_phi, extended by 0 at kappa = 0.
double local_expansion(double kappa, double phi, double eps, double nu);

// Integral of G . tau over the tangent circle of curvature kappa at the origin,
// with the ball B(0, eps) removed. The circle is traversed counter-clockwise
// for kappa > 0 and clockwise for kappa < 0; kappa = 0 (tangent line) gives 0.
// Closed form in alpha = 2 asin(eps |kappa| / 2):
//   (kappa / 4) [8 nu (1 - 2 cos^2 phi) cos(alpha/2)
//                - 4 (3 nu cos^2 phi - nu - 1) log tan(alpha/4)].
// Throws InvalidArgument if eps |kappa| >= 2.
double circle_arc_integral(double kappa, double phi, double eps, double nu);

// Finite-eps estimate of the nonlocal term Psi at p(t0): the cut-off reference
// force at eval_eps plus the tangent-circle arc integral at eval_eps. Equals
// Psi + O(eval_eps).
double psi_estimate(const ClosedCurve& curve, double t0, double eval_eps, double nu,
                    const QuadratureConfig& cfg = {});

// Opt-in Richardson combination 2 psi(eps/2) - psi(eps). Only the O(eps) bound
// is known for psi_estimate, so this carries no accuracy guarantee.
double psi_richardson(const ClosedCurve& curve, double t0, double eval_eps, double nu,
                      const QuadratureConfig& cfg = {});

struct ForceBreakdown {
  double log_term = 0.0;     // kappa A_phi log(1 / (eps |kappa|))
  double local_term = 0.0;   // kappa B_phi
  double psi = 0.0;
  double model_shift = 0.0;  // kappa C_phi for the non-singular model, else 0
  double total = 0.0;        // sum of the four fields above
  double psi_eval_eps = 0.0;
  double kappa = 0.0;
  double phi = 0.0;
};

ForceBreakdown force_cutoff_expansion(const ClosedCurve& curve, double t0,
                                      const ElasticModel& model,
                                      double psi_eps = kDefaultPsiEps,
                                      const QuadratureConfig& cfg = {});

ForceBreakdown force_nonsingular_expansion(const ClosedCurve& curve, double t0,
                                           const ElasticModel& model,
                                           double psi_eps = kDefaultPsiEps,
                                           const QuadratureConfig& cfg = {});

}  // namespace loopforce

#endif  // LOOPFORCE_EXPANSION_HPP
