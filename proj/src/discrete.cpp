#include "loopforce/discrete.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "loopforce/error.hpp"
#include "loopforce/expansion.hpp"
#include "parallel.hpp"

namespace loopforce {
namespace {

void require_nonzero(Vec2 y_minus, Vec2 y_plus) {
  if (norm(y_minus) == 0.0 || norm(y_plus) == 0.0) {
    throw Error(ErrorCode::Mesh, "degenerate stencil: zero-length difference vector");
  }
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

double discrete_curvature(Vec2 y_minus, Vec2 y_plus) {
  require_nonzero(y_minus, y_plus);
  const double lp = norm(y_plus);
  const double lm = norm(y_minus);
  const double s = lp + lm;
  return 2.0 * (1.0 / lp + 1.0 / lm) * dot(y_minus, rotate_cw(y_plus)) / (s * s);
}

Vec2 discrete_normal(Vec2 y_minus, Vec2 y_plus) {
  require_nonzero(y_minus, y_plus);
  const double lp = norm(y_plus);
  const double lm = norm(y_minus);
  const Vec2 n_tilde = rotate_cw(lm * (y_plus / lp) - lp * (y_minus / lm)) / (lp + lm);
  const double len = norm(n_tilde);
  if (len < 1e-12) {
    throw Error(ErrorCode::Mesh, "degenerate stencil: normal cannot be oriented");
  }
  return n_tilde / len;
}

DiscreteFrame discrete_frame(const PolygonLoop& loop, std::ptrdiff_t i) {
  const Vec2 xi = loop.at(i);
  const Vec2 y_minus = loop.at(i - 1) - xi;
  const Vec2 y_plus = loop.at(i + 1) - xi;
  DiscreteFrame f;
  f.kappa_h = discrete_curvature(y_minus, y_plus);
  f.n_h = discrete_normal(y_minus, y_plus);
  double phi = std::atan2(f.n_h.y, f.n_h.x);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  f.phi_h = phi;
  return f;
}

std::size_t neighborhood_count(double h) {
  if (!(h > 0.0 && h < 1.0)) {
    std::ostringstream msg;
    msg << "mesh size h must lie in (0, 1), got " << h;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  // cbrt keeps exact cubes exact (h = 1e-3 gives 10, not 11).
  const double root = 1.0 / std::cbrt(h);
  const double nearest = std::round(root);
  if (std::abs(root - nearest) <= 1e-12 * nearest) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(root));
}

double force_cutoff_discrete(const PolygonLoop& loop, std::ptrdiff_t i,
                             const ElasticModel& model) {
  model.validate();
  const auto n = static_cast<std::ptrdiff_t>(loop.size());
  const auto m = static_cast<std::ptrdiff_t>(neighborhood_count(loop.h()));
  if (n <= 2 * m + 2) {
    std::ostringstream msg;
    msg << "mesh too coarse: N=" << n << " must exceed 2 m^h + 2 = " << 2 * m + 2;
    throw Error(ErrorCode::Mesh, msg.str());
  }
  const DiscreteFrame frame = discrete_frame(loop, i);
  const Vec2 xi = loop.at(i);

  double local = 0.0;
  if (frame.kappa_h != 0.0) {
    const double far_plus = norm(loop.at(i + m) - xi);
    const double far_minus = norm(loop.at(i - m) - xi);
    local = 0.5 * frame.kappa_h * const_A(frame.phi_h, model.nu) *
            std::log(far_plus * far_minus / (model.eps * model.eps));
  }

  CompensatedSum sum;
  for (std::ptrdiff_t j = m + 1; j <= n - m; ++j) {
    try {
      sum.add(segment_force(loop.at(i + j - 1) - xi, loop.at(i + j) - xi, model.nu));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << e.what() << " (vertex " << i << ", segment " << (i + j - 1) % n << "->"
          << (i + j) % n << ")";
      throw Error(e.code(), msg.str());
    }
  }
  return local + sum.value();
}

double force_nonsingular_discrete(const PolygonLoop& loop, std::ptrdiff_t i,
                                  const ElasticModel& model) {
  const double cutoff = force_cutoff_discrete(loop, i, model);
  const DiscreteFrame frame = discrete_frame(loop, i);
  return cutoff + frame.kappa_h * const_C(frame.phi_h, model.nu);
}

double force_discrete(ForceModel which, const PolygonLoop& loop, std::ptrdiff_t i,
                      const ElasticModel& model) {
  return which == ForceModel::Cutoff ? force_cutoff_discrete(loop, i, model)
                                     : force_nonsingular_discrete(loop, i, model);
}

std::vector<double> force_all_points(const PolygonLoop& loop, const ElasticModel& model,
                                     ForceModel which) {
  std::vector<double> out(loop.size());
  detail::parallel_for(loop.size(), [&](std::size_t i) {
    out[i] = force_discrete(which, loop, static_cast<std::ptrdiff_t>(i), model);
  });
  return out;
}

}  // namespace loopforce
