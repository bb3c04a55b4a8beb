#ifndef LOOPFORCE_CURVE_HPP
#define LOOPFORCE_CURVE_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loopforce/vec2.hpp"

namespace loopforce {

inline constexpr double kDefaultMeshConstant = 3.0;

// Real trigonometric polynomial coefficients of one coordinate, period 1:
//   c(t) = cos[0] + sum_{k>=1} cos[k] cos(2 pi k t) + sin[k-1] sin(2 pi k t).
struct TrigSeries {
  std::vector<double> cos;
  std::vector<double> sin;
};

struct FourierCoefficients {
  TrigSeries x;
  TrigSeries y;
};

// Differential-geometric data at a curve point. The conventions are
//   tau = (-sin phi, cos phi),  n = (cos phi, sin phi),
// tau points in the counter-clockwise direction, n points outward, and kappa is
// negative on a counter-clockwise circle.
struct LocalFrame {
  Vec2 x;
  Vec2 tau;
  Vec2 n;
  double kappa = 0.0;
  double phi = 0.0;  // in [0, 2 pi)
};

enum class Traversal { CounterClockwise, Clockwise };

// Osculating circle at a point, or the tangent line where kappa == 0.
struct TangentCircle {
  enum class Kind { Circle, Line };
  Kind kind = Kind::Line;
  Vec2 through;    // the point the circle/line touches the curve at
  Vec2 center;     // Circle only
  double radius = 0.0;
  Traversal traversal = Traversal::CounterClockwise;  // Circle only
  Vec2 direction;  // Line only
};

TangentCircle tangent_circle(const LocalFrame& frame);

struct CurveCheckOptions {
  std::size_t samples = 4096;
};

// Smooth closed plane curve given by a finite Fourier parametrization over
// t in [0, 1). Construction rejects curves that are not regular, not simple or
// not counter-clockwise. Immutable.
class ClosedCurve {
 public:
  explicit ClosedCurve(FourierCoefficients coeffs, CurveCheckOptions check = {});

  static ClosedCurve circle(double radius, Vec2 center = {});
  static ClosedCurve ellipse(double a, double b, Vec2 center = {});

  // Value and the first three derivatives with respect to t.
  std::array<Vec2, 4> jet(double t, int max_order = 3) const;

  Vec2 eval(double t) const { return jet(t, 0)[0]; }
  Vec2 derivative(double t, int order) const { return jet(t, order)[order]; }
  double speed(double t) const { return norm(jet(t, 1)[1]); }

  // p(t0 + s) - p(t0), accurate relative to |s| for small offsets.
  Vec2 chord(double t0, double s) const;

  LocalFrame frame_at(double t) const;

  double length() const { return length_; }
  double signed_area() const { return area_; }
  const FourierCoefficients& coefficients() const { return coeffs_; }

  ClosedCurve translated(Vec2 shift) const;
  ClosedCurve rotated(double angle) const;

 private:
  FourierCoefficients coeffs_;
  double length_ = 0.0;
  double area_ = 0.0;
};

// Named presets: "circle" (R = 1), "ellipse" (a = 2, b = 1) and "blob"
// (x = cos 2pi t + 0.1 (cos 4pi t + cos 8pi t),
//  y = sin 2pi t - 0.1 sin 4pi t + 0.1 sin 8pi t), i.e. the polar curve
// r = 1 + 0.2 cos(3 theta), which has six inflection points.
ClosedCurve preset_curve(const std::string& name);
std::vector<std::string> preset_names();

// Polygon x_1..x_N with periodic indexing x_{i+N} = x_i, counter-clockwise.
class PolygonLoop {
 public:
  explicit PolygonLoop(std::vector<Vec2> points, double mesh_constant = kDefaultMeshConstant,
                       std::vector<double> parameters = {});

  std::size_t size() const { return points_.size(); }
  // Periodic access; any integer index is valid.
  const Vec2& at(std::ptrdiff_t i) const;
  std::span<const Vec2> points() const { return points_; }

  // Curve parameters of the vertices, when the loop was sampled from a curve.
  std::span<const double> parameters() const { return parameters_; }

  double h() const { return h_mean_; }
  double h_min() const { return h_min_; }
  double h_max() const { return h_max_; }
  double mesh_constant() const { return mesh_constant_; }

  // Every stride-th vertex, starting at vertex 0.
  PolygonLoop subsample(std::size_t stride) const;
  PolygonLoop translated(Vec2 shift) const;

 private:
  std::vector<Vec2> points_;
  std::vector<double> parameters_;
  double mesh_constant_;
  double h_mean_ = 0.0;
  double h_min_ = 0.0;
  double h_max_ = 0.0;
};

// N vertices at equal arc-length spacing starting from t = 0.
PolygonLoop sample_polygon(const ClosedCurve& curve, std::size_t n,
                           double mesh_constant = kDefaultMeshConstant);

// Parameters t_minus < t0 < t_plus (unwrapped) where the curve leaves the ball
// B(p(t0), eps). Throws Excision when the distance to p(t0) is not monotone up
// to eps or another part of the curve enters the ball.
std::pair<double, double> ball_exit_params(const ClosedCurve& curve, double t0, double eps);

// The same crossings as offsets s_minus < 0 < s_plus from t0.
std::pair<double, double> ball_exit_offsets(const ClosedCurve& curve, double t0, double eps);

}  // namespace loopforce

#endif  // LOOPFORCE_CURVE_HPP
