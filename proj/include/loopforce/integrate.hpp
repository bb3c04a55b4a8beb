#ifndef LOOPFORCE_INTEGRATE_HPP
#define LOOPFORCE_INTEGRATE_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace loopforce {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_depth = 48;
  int initial_splits_near_singularity = 8;
  // Hard cap on the number of panels kept at once.
  std::size_t max_panels = 200000;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
};

using Integrand = std::function<double(double)>;

// Globally adaptive (7,15) Gauss-Kronrod: the panel with the largest error
// estimate is bisected until the summed estimate is at most
// max(abs_tol, rel_tol |value|). Throws NonConvergenceError when a panel that
// still needs refinement sits at max_depth.
QuadratureResult adaptive_integrate(const Integrand& f, double a, double b,
                                    const QuadratureConfig& cfg = {});

// Same, over the consecutive intervals of an increasing list of break points.
// Each interval starts as its own panel at depth 0.
QuadratureResult adaptive_integrate(const Integrand& f, std::span<const double> breaks,
                                    const QuadratureConfig& cfg = {});

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule, nodes ascending.
const GaussRule& gauss_legendre(std::size_t n);

}  // namespace loopforce

#endif  // LOOPFORCE_INTEGRATE_HPP
