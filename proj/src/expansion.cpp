#include "loopforce/expansion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "loopforce/error.hpp"
#include "loopforce/reference.hpp"

namespace loopforce {
namespace {

constexpr double kLog2 = std::numbers::ln2;

double cos2(double phi) {
  const double c = std::cos(phi);
  return c * c;
}

}  // namespace

double const_A(double phi, double nu) { return 1.0 + nu - 3.0 * nu * cos2(phi); }

double const_B(double phi, double nu) {
  return 2.0 * (kLog2 - (1.0 - kLog2) * nu - (3.0 * kLog2 - 2.0) * nu * cos2(phi));
}

double const_C(double phi, double nu) {
  return 0.5 * (-3.0 - nu + 3.0 * (1.0 + nu) * cos2(phi)) + kLog2 * const_A(phi, nu);
}

double local_expansion(double kappa, double phi, double eps, double nu) {
  if (kappa == 0.0) return 0.0;
  return kappa * const_A(phi, nu) * std::log(1.0 / (eps * std::abs(kappa))) +
         kappa * const_B(phi, nu);
}

double circle_arc_integral(double kappa, double phi, double eps, double nu) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (kappa == 0.0) return 0.0;
  const double ek = eps * std::abs(kappa);
  if (!(ek < 2.0)) {
    std::ostringstream msg;
    msg << "excised ball (eps=" << eps << ") is not smaller than the tangent circle diameter "
        << 2.0 / std::abs(kappa);
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  const double alpha = 2.0 * std::asin(0.5 * ek);
  const double c2 = cos2(phi);
  // Exact values of the half-angle integrals over (alpha, 2 pi - alpha):
  //   int sin(theta/2) = 4 cos(alpha/2),  int 1/sin(theta/2) = -4 log tan(alpha/4).
  const double sin_part = 4.0 * std::cos(0.5 * alpha);
  const double csc_part = -4.0 * std::log(std::tan(0.25 * alpha));
  return 0.25 * kappa *
         (2.0 * nu * (1.0 - 2.0 * c2) * sin_part + (3.0 * nu * c2 - nu - 1.0) * csc_part);
}

double psi_estimate(const ClosedCurve& curve, double t0, double eval_eps, double nu,
                    const QuadratureConfig& cfg) {
  const ElasticModel model{nu, eval_eps};
  const LocalFrame frame = curve.frame_at(t0);
  return force_cutoff_reference(curve, t0, model, cfg) +
         circle_arc_integral(frame.kappa, frame.phi, eval_eps, nu);
}

double psi_richardson(const ClosedCurve& curve, double t0, double eval_eps, double nu,
                      const QuadratureConfig& cfg) {
  return 2.0 * psi_estimate(curve, t0, 0.5 * eval_eps, nu, cfg) -
         psi_estimate(curve, t0, eval_eps, nu, cfg);
}

ForceBreakdown force_cutoff_expansion(const ClosedCurve& curve, double t0,
                                      const ElasticModel& model, double psi_eps,
                                      const QuadratureConfig& cfg) {
  model.validate();
  if (!(psi_eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "psi_eps must be positive");
  const LocalFrame frame = curve.frame_at(t0);
  ForceBreakdown b;
  b.kappa = frame.kappa;
  b.phi = frame.phi;
  if (frame.kappa != 0.0) {
    b.log_term = frame.kappa * const_A(frame.phi, model.nu) *
                 std::log(1.0 / (model.eps * std::abs(frame.kappa)));
    b.local_term = frame.kappa * const_B(frame.phi, model.nu);
  }
  b.psi = psi_estimate(curve, t0, psi_eps, model.nu, cfg);
  b.psi_eval_eps = psi_eps;
  b.model_shift = 0.0;
  b.total = b.log_term + b.local_term + b.psi + b.model_shift;
  return b;
}

ForceBreakdown force_nonsingular_expansion(const ClosedCurve& curve, double t0,
                                           const ElasticModel& model, double psi_eps,
                                           const QuadratureConfig& cfg) {
  ForceBreakdown b = force_cutoff_expansion(curve, t0, model, psi_eps, cfg);
  b.model_shift = b.kappa * const_C(b.phi, model.nu);
  b.total = b.log_term + b.local_term + b.psi + b.model_shift;
  return b;
}

}  // namespace loopforce
