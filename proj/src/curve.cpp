#include "loopforce/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "loopforce/error.hpp"
#include "loopforce/integrate.hpp"

namespace loopforce {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_unit(double t) { return t - std::floor(t); }

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// Value and derivatives of one coordinate at t.
void series_jet(const TrigSeries& s, double t, int max_order, std::array<double, 4>& out) {
  out = {0.0, 0.0, 0.0, 0.0};
  if (!s.cos.empty()) out[0] = s.cos[0];
  const std::size_t harmonics = std::max(s.cos.size() > 0 ? s.cos.size() - 1 : 0, s.sin.size());
  for (std::size_t k = 1; k <= harmonics; ++k) {
    const double a = k < s.cos.size() ? s.cos[k] : 0.0;
    const double b = k - 1 < s.sin.size() ? s.sin[k - 1] : 0.0;
    if (a == 0.0 && b == 0.0) continue;
    const double w = kTwoPi * static_cast<double>(k);
    const double c = std::cos(w * t);
    const double sn = std::sin(w * t);
    // d^m/dt^m of a cos + b sin cycles through (c, s) -> w (-s, c) -> ...
    double f = a * c + b * sn;
    double g = -a * sn + b * c;
    double scale = 1.0;
    out[0] += f;
    for (int m = 1; m <= max_order; ++m) {
      scale *= w;
      const double next_f = g;
      const double next_g = -f;
      f = next_f;
      g = next_g;
      out[m] += scale * f;
    }
  }
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  if (std::max(a.x, b.x) < std::min(c.x, d.x) || std::max(c.x, d.x) < std::min(a.x, b.x) ||
      std::max(a.y, b.y) < std::min(c.y, d.y) || std::max(c.y, d.y) < std::min(a.y, b.y)) {
    return false;
  }
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  // Touching or collinear overlap counts as an intersection.
  auto on_segment = [](Vec2 p, Vec2 q, Vec2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  return (d1 == 0 && on_segment(a, b, c)) || (d2 == 0 && on_segment(a, b, d)) ||
         (d3 == 0 && on_segment(c, d, a)) || (d4 == 0 && on_segment(c, d, b));
}

double signed_area_of(std::span<const Vec2> pts) {
  double a = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    a += cross(pts[i], pts[(i + 1) % pts.size()]);
  }
  return 0.5 * a;
}

// Difference of a trigonometric series between t0 + s and t0 through
// product-to-sum identities, so no cancellation occurs for small s.
double series_chord(const TrigSeries& s, double t0, double offset) {
  const std::size_t harmonics = std::max(s.cos.size() > 0 ? s.cos.size() - 1 : 0, s.sin.size());
  double out = 0.0;
  for (std::size_t k = 1; k <= harmonics; ++k) {
    const double a = k < s.cos.size() ? s.cos[k] : 0.0;
    const double b = k - 1 < s.sin.size() ? s.sin[k - 1] : 0.0;
    if (a == 0.0 && b == 0.0) continue;
    const double kd = static_cast<double>(k);
    const double half = std::sin(std::numbers::pi * kd * offset);
    const double mid = kTwoPi * kd * (t0 + 0.5 * offset);
    out += 2.0 * half * (b * std::cos(mid) - a * std::sin(mid));
  }
  return out;
}

}  // namespace

TangentCircle tangent_circle(const LocalFrame& frame) {
  TangentCircle c;
  c.through = frame.x;
  if (frame.kappa == 0.0) {
    c.kind = TangentCircle::Kind::Line;
    c.direction = frame.tau;
    return c;
  }
  c.kind = TangentCircle::Kind::Circle;
  c.center = frame.x + frame.n / frame.kappa;
  c.radius = 1.0 / std::abs(frame.kappa);
  c.traversal = frame.kappa > 0.0 ? Traversal::CounterClockwise : Traversal::Clockwise;
  return c;
}

ClosedCurve::ClosedCurve(FourierCoefficients coeffs, CurveCheckOptions check)
    : coeffs_(std::move(coeffs)) {
  for (const auto* s : {&coeffs_.x, &coeffs_.y}) {
    for (double v : s->cos) {
      if (!std::isfinite(v)) throw Error(ErrorCode::Curve, "non-finite Fourier coefficient");
    }
    for (double v : s->sin) {
      if (!std::isfinite(v)) throw Error(ErrorCode::Curve, "non-finite Fourier coefficient");
    }
  }
  const std::size_t n = std::max<std::size_t>(check.samples, 64);
  std::vector<Vec2> pts(n);
  std::vector<double> speeds(n);
  double area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = jet(static_cast<double>(i) / static_cast<double>(n), 1);
    pts[i] = j[0];
    speeds[i] = norm(j[1]);
    area += cross(j[0], j[1]);
  }
  // Trapezoid rule is spectrally accurate for periodic integrands.
  double length = 0.0;
  for (double s : speeds) length += s;
  length_ = length / static_cast<double>(n);
  area_ = 0.5 * area / static_cast<double>(n);

  const double min_speed = *std::min_element(speeds.begin(), speeds.end());
  if (!(length_ > 0.0) || min_speed <= 1e-10 * length_) {
    throw Error(ErrorCode::Curve, "curve is not regular (|p'(t)| vanishes)");
  }
  if (area_ <= 0.0) {
    throw Error(ErrorCode::Curve, "curve must be oriented counter-clockwise (signed area <= 0)");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = pts[i];
    const Vec2 b = pts[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
      if (segments_intersect(a, b, pts[j], pts[(j + 1) % n])) {
        std::ostringstream msg;
        msg << "curve is not simple: arcs near t=" << static_cast<double>(i) / n
            << " and t=" << static_cast<double>(j) / n << " intersect";
        throw Error(ErrorCode::Curve, msg.str());
      }
    }
  }
}

ClosedCurve ClosedCurve::circle(double radius, Vec2 center) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "circle radius must be positive");
  return ClosedCurve(FourierCoefficients{{{center.x, radius}, {}}, {{center.y}, {radius}}});
}

ClosedCurve ClosedCurve::ellipse(double a, double b, Vec2 center) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "ellipse semi-axes must be positive");
  }
  return ClosedCurve(FourierCoefficients{{{center.x, a}, {}}, {{center.y}, {b}}});
}

std::array<Vec2, 4> ClosedCurve::jet(double t, int max_order) const {
  if (max_order < 0 || max_order > 3) {
    throw Error(ErrorCode::InvalidArgument, "derivative order must be in [0, 3]");
  }
  t = wrap_unit(t);
  std::array<double, 4> xs;
  std::array<double, 4> ys;
  series_jet(coeffs_.x, t, max_order, xs);
  series_jet(coeffs_.y, t, max_order, ys);
  std::array<Vec2, 4> out;
  for (int m = 0; m < 4; ++m) out[m] = {xs[m], ys[m]};
  return out;
}

Vec2 ClosedCurve::chord(double t0, double s) const {
  return {series_chord(coeffs_.x, t0, s), series_chord(coeffs_.y, t0, s)};
}

LocalFrame ClosedCurve::frame_at(double t) const {
  const auto j = jet(t, 2);
  const double speed = norm(j[1]);
  if (speed <= 1e-10 * length_) {
    throw Error(ErrorCode::Curve, "degenerate parametrization: |p'(t)| below tolerance");
  }
  LocalFrame f;
  f.x = j[0];
  f.tau = j[1] / speed;
  f.n = rotate_cw(f.tau);
  // Standard signed curvature, negated so counter-clockwise circles get kappa < 0.
  f.kappa = -cross(j[1], j[2]) / (speed * speed * speed);
  f.phi = wrap_angle(std::atan2(f.n.y, f.n.x));
  return f;
}

ClosedCurve ClosedCurve::translated(Vec2 shift) const {
  FourierCoefficients c = coeffs_;
  if (c.x.cos.empty()) c.x.cos.push_back(0.0);
  if (c.y.cos.empty()) c.y.cos.push_back(0.0);
  c.x.cos[0] += shift.x;
  c.y.cos[0] += shift.y;
  return ClosedCurve(std::move(c));
}

ClosedCurve ClosedCurve::rotated(double angle) const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  auto combine = [](const std::vector<double>& u, const std::vector<double>& v, double cu,
                    double cv) {
    std::vector<double> out(std::max(u.size(), v.size()), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] += cu * u[i];
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += cv * v[i];
    return out;
  };
  FourierCoefficients r;
  r.x.cos = combine(coeffs_.x.cos, coeffs_.y.cos, c, -s);
  r.x.sin = combine(coeffs_.x.sin, coeffs_.y.sin, c, -s);
  r.y.cos = combine(coeffs_.x.cos, coeffs_.y.cos, s, c);
  r.y.sin = combine(coeffs_.x.sin, coeffs_.y.sin, s, c);
  return ClosedCurve(std::move(r));
}

ClosedCurve preset_curve(const std::string& name) {
  if (name == "circle") return ClosedCurve::circle(1.0);
  if (name == "ellipse") return ClosedCurve::ellipse(2.0, 1.0);
  if (name == "blob") {
    return ClosedCurve(FourierCoefficients{
        {{0.0, 1.0, 0.1, 0.0, 0.1}, {}},
        {{}, {1.0, -0.1, 0.0, 0.1}},
    });
  }
  throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "' (circle, ellipse, blob)");
}

std::vector<std::string> preset_names() { return {"circle", "ellipse", "blob"}; }

PolygonLoop::PolygonLoop(std::vector<Vec2> points, double mesh_constant,
                         std::vector<double> parameters)
    : points_(std::move(points)), parameters_(std::move(parameters)), mesh_constant_(mesh_constant) {
  const std::size_t n = points_.size();
  if (n < 3) throw Error(ErrorCode::Mesh, "polygon needs at least 3 vertices");
  if (!parameters_.empty() && parameters_.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "parameter list does not match vertex count");
  }
  if (!(mesh_constant_ >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "mesh regularity constant must be >= 1");
  }
  std::size_t i_min = 0;
  std::size_t i_max = 0;
  double sum = 0.0;
  h_min_ = std::numeric_limits<double>::infinity();
  h_max_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::Mesh, "non-finite vertex " + std::to_string(i));
    }
    const double len = norm(points_[(i + 1) % n] - p);
    sum += len;
    if (len < h_min_) {
      h_min_ = len;
      i_min = i;
    }
    if (len > h_max_) {
      h_max_ = len;
      i_max = i;
    }
  }
  h_mean_ = sum / static_cast<double>(n);
  if (!(h_min_ > 0.0)) {
    throw Error(ErrorCode::Mesh, "zero-length segment between vertices " + std::to_string(i_min) +
                                     " and " + std::to_string((i_min + 1) % n));
  }
  if (signed_area_of(points_) <= 0.0) {
    throw Error(ErrorCode::Mesh, "polygon must be ordered counter-clockwise");
  }
  if (h_max_ / h_min_ > mesh_constant_) {
    std::ostringstream msg;
    msg << "mesh regularity violated: h_max/h_min = " << h_max_ / h_min_ << " > " << mesh_constant_
        << " (longest segment " << i_max << "->" << (i_max + 1) % n << ", shortest segment "
        << i_min << "->" << (i_min + 1) % n << ")";
    throw Error(ErrorCode::Mesh, msg.str());
  }
}

const Vec2& PolygonLoop::at(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(points_.size());
  std::ptrdiff_t k = i % n;
  if (k < 0) k += n;
  return points_[static_cast<std::size_t>(k)];
}

PolygonLoop PolygonLoop::subsample(std::size_t stride) const {
  if (stride == 0) throw Error(ErrorCode::InvalidArgument, "stride must be positive");
  std::vector<Vec2> pts;
  std::vector<double> params;
  for (std::size_t i = 0; i < points_.size(); i += stride) {
    pts.push_back(points_[i]);
    if (!parameters_.empty()) params.push_back(parameters_[i]);
  }
  return PolygonLoop(std::move(pts), mesh_constant_, std::move(params));
}

PolygonLoop PolygonLoop::translated(Vec2 shift) const {
  std::vector<Vec2> pts = points_;
  for (auto& p : pts) p += shift;
  return PolygonLoop(std::move(pts), mesh_constant_, parameters_);
}

PolygonLoop sample_polygon(const ClosedCurve& curve, std::size_t n, double mesh_constant) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 vertices");
  const GaussRule& gl = gauss_legendre(16);
  auto arc = [&](double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      s += gl.weights[k] * curve.speed(mid + half * gl.nodes[k]);
    }
    return s * half;
  };
  const std::size_t panels = std::max<std::size_t>(256, 2 * n);
  std::vector<double> cumulative(panels + 1, 0.0);
  for (std::size_t p = 0; p < panels; ++p) {
    cumulative[p + 1] = cumulative[p] + arc(static_cast<double>(p) / panels,
                                            static_cast<double>(p + 1) / panels);
  }
  const double total = cumulative.back();

  std::vector<Vec2> pts(n);
  std::vector<double> params(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    std::size_t p = static_cast<std::size_t>(std::distance(cumulative.begin(), it));
    p = std::clamp<std::size_t>(p, 1, panels) - 1;
    const double lo = static_cast<double>(p) / panels;
    const double hi = static_cast<double>(p + 1) / panels;
    const double frac = (target - cumulative[p]) / (cumulative[p + 1] - cumulative[p]);
    double t = lo + frac * (hi - lo);
    for (int iter = 0; iter < 50; ++iter) {
      const double residual = cumulative[p] + arc(lo, t) - target;
      const double step = residual / curve.speed(t);
      t = std::clamp(t - step, lo, hi);
      if (std::abs(residual) <= 1e-14 * total || std::abs(step) < 1e-16) break;
    }
    params[k] = t;
    pts[k] = curve.eval(t);
  }
  return PolygonLoop(std::move(pts), mesh_constant, std::move(params));
}

std::pair<double, double> ball_exit_offsets(const ClosedCurve& curve, double t0, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  const double speed0 = curve.speed(t0);
  const double step = eps / (4.0 * speed0);
  auto dist = [&](double s) { return norm(curve.chord(t0, s)); };

  // Walk away from t0 in direction dir while the distance grows, then refine the
  // crossing |p(t0 + s) - p(t0)| = eps on the last bracket.
  auto exit_offset = [&](double dir) {
    double prev_s = 0.0;
    double prev_d = 0.0;
    for (;;) {
      const double s = prev_s + dir * step;
      if (std::abs(s) > 0.5) {
        throw Error(ErrorCode::Excision, "eps too large: ball around the point swallows the curve");
      }
      const double d = dist(s);
      if (!(d > prev_d)) {
        throw Error(ErrorCode::Excision,
                    "eps too large: distance to the point is not monotone inside the ball");
      }
      if (d >= eps) {
        double a = prev_s;  // dist(a) < eps
        double b = s;       // dist(b) >= eps
        double sc = prev_s + dir * step * (eps - prev_d) / (d - prev_d);
        for (int iter = 0; iter < 100; ++iter) {
          const Vec2 r = curve.chord(t0, sc);
          const double rn = norm(r);
          const double g = rn - eps;
          if (std::abs(g) <= 1e-14 * eps) break;
          if (g < 0.0) a = sc; else b = sc;
          const double dg = dot(r, curve.derivative(t0 + sc, 1)) / rn;
          double next = sc - g / dg;
          const double lo = std::min(a, b);
          const double hi = std::max(a, b);
          if (!(next > lo && next < hi)) next = 0.5 * (a + b);
          if (next == sc) break;
          sc = next;
        }
        return sc;
      }
      prev_s = s;
      prev_d = d;
    }
  };
  const double s_plus = exit_offset(+1.0);
  const double s_minus = exit_offset(-1.0);

  // No other part of the curve may enter the ball.
  const std::size_t checks = 2048;
  const double span = (s_minus + 1.0) - s_plus;
  for (std::size_t k = 1; k < checks; ++k) {
    const double s = s_plus + span * static_cast<double>(k) / checks;
    if (dist(s) < eps) {
      std::ostringstream msg;
      msg << "eps too large: curve re-enters the ball at t=" << wrap_unit(t0 + s);
      throw Error(ErrorCode::Excision, msg.str());
    }
  }
  return {s_minus, s_plus};
}

std::pair<double, double> ball_exit_params(const ClosedCurve& curve, double t0, double eps) {
  const auto [s_minus, s_plus] = ball_exit_offsets(curve, t0, eps);
  return {t0 + s_minus, t0 + s_plus};
}

}  // namespace loopforce
