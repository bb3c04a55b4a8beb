#ifndef LOOPFORCE_KERNEL_HPP
#define LOOPFORCE_KERNEL_HPP

#include "loopforce/vec2.hpp"

namespace loopforce {

inline constexpr double kDefaultPoisson = 0.3;
inline constexpr double kDefaultCoreRadius = 1e-4;

// Poisson ratio and core radius; the shear modulus is normalized to one.
struct ElasticModel {
  double nu = kDefaultPoisson;
  double eps = kDefaultCoreRadius;

  // Throws InvalidArgument unless nu in (-1, 1/2) and eps > 0.
  void validate() const;
};

// Interaction kernel G(z) = ((1 - nu) z2, -z1) / |z|^3. G(y - x) . tau(y) is the
// normal force density at x due to the line element at y. Throws Singular at z = 0.
Vec2 kernel_G(Vec2 z, double nu);

// Non-singular kernel: |z|^3 replaced by R^3 with R^2 = |z|^2 + eps^2, plus the
// core correction (3 eps^2 (1 - nu) z2 / (2 R^5), 0). Regular everywhere.
Vec2 kernel_G_eps(Vec2 z, const ElasticModel& model);

// Scalar curl d/dy1 (G_eps)_2 - d/dy2 (G_eps)_1 in closed form:
//   -[(2 - nu) eps^2 - (1 + nu) y1^2 - (1 - 2 nu) y2^2] / R^5
//   + 3 (1 - nu) eps^2 (4 y2^2 - y1^2 - eps^2) / (2 R^7).
// At y = 0 this is (5 nu - 7) / (2 eps^3).
double curl_G_eps(Vec2 y, const ElasticModel& model);

// Integral of G . tau along the oriented straight segment from x to y (the
// observation point is the origin). Throws Singular when the supporting line of
// the segment runs through the origin between x and y, i.e. when
// |x||y| + x.y < 1e-12 |x||y|.
double segment_force(Vec2 x, Vec2 y, double nu);

}  // namespace loopforce

#endif  // LOOPFORCE_KERNEL_HPP
