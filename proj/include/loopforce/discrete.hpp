#ifndef LOOPFORCE_DISCRETE_HPP
#define LOOPFORCE_DISCRETE_HPP

#include <cstddef>
#include <vector>

#include "loopforce/curve.hpp"
#include "loopforce/kernel.hpp"
#include "loopforce/reference.hpp"

namespace loopforce {

// Three-point stencil estimates at a polygon vertex, built from the difference
// vectors y_- = x_{i-1} - x_i and y_+ = x_{i+1} - x_i.
struct DiscreteFrame {
  double kappa_h = 0.0;
  Vec2 n_h;
  double phi_h = 0.0;  // n_h = (cos phi_h, sin phi_h), phi_h in [0, 2 pi)
};

// O(h) curvature estimate, same sign convention as LocalFrame::kappa.
double discrete_curvature(Vec2 y_minus, Vec2 y_plus);

// O(h^2) outward normal estimate.
Vec2 discrete_normal(Vec2 y_minus, Vec2 y_plus);

DiscreteFrame discrete_frame(const PolygonLoop& loop, std::ptrdiff_t i);

// Number of skipped neighbours ceil(h^{-1/3}); h must lie in (0, 1).
std::size_t neighborhood_count(double h);

// Discrete cut-off force at vertex i. The 2 m^h segments adjacent to x_i are
// replaced by the local term (kappa_h A / 2) log(|x_{i+m} - x_i||x_{i-m} - x_i| / eps^2);
// the remaining segments contribute their exact straight-segment integrals,
// summed in ascending order with compensated summation.
double force_cutoff_discrete(const PolygonLoop& loop, std::ptrdiff_t i,
                             const ElasticModel& model);

// force_cutoff_discrete + kappa_h C_{phi_h}.
double force_nonsingular_discrete(const PolygonLoop& loop, std::ptrdiff_t i,
                                  const ElasticModel& model);

double force_discrete(ForceModel which, const PolygonLoop& loop, std::ptrdiff_t i,
                      const ElasticModel& model);

// Per-vertex forces for every vertex, in vertex order.
std::vector<double> force_all_points(const PolygonLoop& loop, const ElasticModel& model,
                                     ForceModel which);

}  // namespace loopforce

#endif  // LOOPFORCE_DISCRETE_HPP
