#include "loopforce/kernel.hpp"

#include <cmath>
#include <sstream>

#include "loopforce/error.hpp"

namespace loopforce {

void ElasticModel::validate() const {
  if (!(nu > -1.0 && nu < 0.5)) {
    std::ostringstream msg;
    msg << "Poisson ratio must lie in (-1, 0.5), got " << nu;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    std::ostringstream msg;
    msg << "core radius eps must be positive, got " << eps;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

Vec2 kernel_G(Vec2 z, double nu) {
  const double r = norm(z);
  if (r == 0.0) throw Error(ErrorCode::Singular, "kernel G evaluated at z = 0");
  const double r3 = r * r * r;
  return {(1.0 - nu) * z.y / r3, -z.x / r3};
}

Vec2 kernel_G_eps(Vec2 z, const ElasticModel& model) {
  const double eps2 = model.eps * model.eps;
  const double rr = norm2(z) + eps2;
  const double r = std::sqrt(rr);
  const double r3 = rr * r;
  const double r5 = r3 * rr;
  const double core = 1.5 * eps2 * (1.0 - model.nu) * z.y / r5;
  return {(1.0 - model.nu) * z.y / r3 + core, -z.x / r3};
}

double curl_G_eps(Vec2 y, const ElasticModel& model) {
  const double nu = model.nu;
  const double eps2 = model.eps * model.eps;
  const double y1s = y.x * y.x;
  const double y2s = y.y * y.y;
  const double rr = y1s + y2s + eps2;
  const double r = std::sqrt(rr);
  const double r5 = rr * rr * r;
  const double r7 = r5 * rr;
  return -((2.0 - nu) * eps2 - (1.0 + nu) * y1s - (1.0 - 2.0 * nu) * y2s) / r5 +
         3.0 * (1.0 - nu) * eps2 * (4.0 * y2s - y1s - eps2) / (2.0 * r7);
}

double segment_force(Vec2 x, Vec2 y, double nu) {
  const double nx = norm(x);
  const double ny = norm(y);
  const double denom = nx * ny + dot(x, y);
  if (!(nx > 0.0) || !(ny > 0.0) || denom < 1e-12 * nx * ny) {
    throw Error(ErrorCode::Singular, "segment passes (nearly) through the observation point");
  }
  const Vec2 u = x / nx + y / ny;
  const Vec2 d = y - x;
  // M d with M = [[0, -1], [1 - nu, 0]].
  const Vec2 md{-d.y, (1.0 - nu) * d.x};
  return dot(u, md) / denom;
}

}  // namespace loopforce
