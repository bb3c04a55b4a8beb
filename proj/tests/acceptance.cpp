// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loopforce/curve.hpp"
#include "loopforce/discrete.hpp"
#include "loopforce/error.hpp"
#include "loopforce/expansion.hpp"
#include "loopforce/integrate.hpp"
#include "loopforce/kernel.hpp"
#include "loopforce/reference.hpp"
#include "loopforce/study.hpp"

using namespace loopforce;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

int run(const char* id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  out.detail.precision(4);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < limit_s, "runtime limit");
  std::printf("%s %s %s |%s | runtime %.2f s (limit %.0f s)\n", out.pass ? "PASS" : "FAIL", id,
              title, out.detail.str().c_str(), secs, limit_s);
  std::fflush(stdout);
  return out.pass ? 0 : 1;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

double footer_value(const Table& t, const std::string& key) {
  for (const auto& line : t.footer) {
    if (line.rfind(key + "=", 0) == 0) return std::stod(line.substr(key.size() + 1));
  }
  return std::nan("");
}

// Generic ellipse points; the vertices t = k/4 have kappa' = 0 and are avoided
// where the next-order coefficient matters.
const std::vector<double> kGenericPoints{0.07, 0.19, 0.33, 0.41};

void criterion1(Outcome& o) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> nu_dist(-0.9, 0.49);
  QuadratureConfig tight;
  tight.rel_tol = 1e-14;
  tight.abs_tol = 1e-15;
  double max_err = 0.0;
  double max_odd = 0.0;
  int accepted = 0;
  while (accepted < 100) {
    const Vec2 x{coord(rng), coord(rng)};
    const Vec2 y{coord(rng), coord(rng)};
    const double nu = nu_dist(rng);
    // Keep the segment at distance >= 0.1 from the origin.
    const Vec2 d = y - x;
    const double s = std::clamp(-dot(x, d) / norm2(d), 0.0, 1.0);
    if (norm(x + s * d) < 0.1) continue;
    ++accepted;
    const double closed = segment_force(x, y, nu);
    const double quad =
        adaptive_integrate([&](double u) { return dot(kernel_G(x + u * d, nu), d); }, 0.0, 1.0,
                           tight)
            .value;
    max_err = std::max(max_err, std::abs(closed - quad));
    const double scale = std::max(std::abs(closed), 1e-300);
    max_odd = std::max(max_odd, std::abs(segment_force(-1.0 * x, -1.0 * y, nu) - closed) / scale);
    max_odd = std::max(max_odd, std::abs(segment_force(y, x, nu) + closed) / scale);
    const ElasticModel m{nu, 0.05};
    for (const Vec2 z : {x, y}) {
      const Vec2 g = kernel_G(z, nu);
      const Vec2 gm = kernel_G(-1.0 * z, nu);
      const Vec2 ge = kernel_G_eps(z, m);
      const Vec2 gem = kernel_G_eps(-1.0 * z, m);
      max_odd = std::max(max_odd, norm(g + gm) / norm(g));
      max_odd = std::max(max_odd, norm(ge + gem) / norm(ge));
    }
  }
  o.detail << " segments=100 max_abs_err=" << max_err << " (<= 1e-9) max_odd_rel=" << max_odd
           << " (<= 1e-14)";
  o.require(max_err <= 1e-9, "segment vs quadrature");
  o.require(max_odd <= 1e-14, "oddness");
}

void criterion2(Outcome& o) {
  const ClosedCurve circle = ClosedCurve::circle(1.0);
  double worst = 0.0;  // max |diff| / eps
  for (double nu : {0.0, 0.3}) {
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      for (int k = 0; k < 8; ++k) {
        const double t0 = k / 8.0;
        const LocalFrame f = circle.frame_at(t0);
        const double ref = force_cutoff_reference(circle, t0, {nu, eps});
        const double expansion = local_expansion(f.kappa, f.phi, eps, nu);
        worst = std::max(worst, std::abs(ref - expansion) / eps);
      }
    }
  }
  o.detail << " cases=48 max|F_ref - expansion|/eps=" << worst << " (<= 10)";
  o.require(worst <= 10.0, "circle oracle");
}

void criterion3(Outcome& o) {
  EpsStudySpec spec;
  spec.eps_values = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  spec.points = kGenericPoints;
  spec.psi_eps = 0.0;  // psi_eps = eps per row
  double min_slope = 1e300;
  for (const char* name : {"ellipse", "blob"}) {
    const Table t = study_eps(preset_curve(name), spec);
    const std::size_t n = spec.eps_values.size();
    for (std::size_t p = 0; p < spec.points.size(); ++p) {
      for (int col : {6, 7}) {
        std::vector<double> eps, err;
        for (std::size_t k = 0; k < n; ++k) {
          eps.push_back(t.rows[p * n + k][1]);
          err.push_back(t.rows[p * n + k][col]);
        }
        const double slope = loglog_slope(eps, err);
        min_slope = std::min(min_slope, slope);
        o.detail << ' ' << name << "@" << spec.points[p] << (col == 6 ? ":F=" : ":cF=") << slope;
      }
    }
  }
  o.detail << " | min slope=" << min_slope << " (>= 0.9)";
  o.require(min_slope >= 0.9, "fitted slope");
}

void criterion4(Outcome& o) {
  CompareSpec spec;
  spec.model = {0.3, 1e-4};
  spec.points = uniform_points(16);
  const Table t = compare_models(preset_curve("ellipse"), spec);
  const double worst = footer_value(t, "max_abs_residual");
  o.detail << " points=16 max|diff - kappa C|=" << worst << " (<= 10 eps = 1e-3)";
  o.require(worst <= 10.0 * spec.model.eps, "model difference");
}

void criterion5(Outcome& o) {
  const ClosedCurve ellipse = preset_curve("ellipse");
  const ClosedCurve circle = preset_curve("circle");
  const double nu = 0.3;
  std::vector<double> eps{4e-3, 2e-3, 1e-3, 5e-4};
  double worst_spread = 0.0;
  for (double t0 : kGenericPoints) {
    std::vector<double> psi;
    for (double e : eps) psi.push_back(psi_estimate(ellipse, t0, e, nu));
    std::vector<double> c;
    for (std::size_t k = 0; k + 1 < eps.size(); ++k) c.push_back(std::abs(psi[k] - psi[k + 1]) / eps[k]);
    const double spread = max_of(c) / min_of(c);
    worst_spread = std::max(worst_spread, spread);
    o.detail << " t0=" << t0 << ":C=[" << c[0] << ',' << c[1] << ',' << c[2] << ']';
  }
  double circle_worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    for (double e : eps) {
      circle_worst = std::max(circle_worst, std::abs(psi_estimate(circle, k / 8.0 + 0.01, e, nu)) / e);
    }
  }
  o.detail << " | max C spread=" << worst_spread << " (<= 3) circle max|psi|/eps=" << circle_worst
           << " (<= 10)";
  o.require(worst_spread <= 3.0, "Cauchy constant spread");
  o.require(circle_worst <= 10.0, "circle psi");
}

void criterion6(Outcome& o) {
  HStudySpec spec;
  spec.eps = 1e-6;
  spec.n_values = {64, 128, 256, 512, 1024, 2048, 4096};
  for (const char* name : {"circle", "ellipse"}) {
    const Table t = study_h(preset_curve(name), spec);
    std::vector<double> ratio;
    for (const auto& row : t.rows) ratio.push_back(row[7]);
    const double spread = max_of(ratio) / min_of(ratio);
    const double order = footer_value(t, "h_order");
    o.detail << ' ' << name << ": ratios=[";
    for (std::size_t k = 0; k < ratio.size(); ++k) o.detail << (k ? "," : "") << ratio[k];
    o.detail << "] spread=" << spread << " (<= 3) h-order=" << order << " (in [0.6, 1.1])";
    o.require(spread <= 3.0, std::string(name) + " ratio spread");
    o.require(order >= 0.6 && order <= 1.1, std::string(name) + " h-order");
  }
}

void criterion7(Outcome& o) {
  const ClosedCurve blob = preset_curve("blob");
  std::vector<double> hs, kerr, nerr;
  for (std::size_t n : {64, 128, 256, 512, 1024}) {
    const PolygonLoop loop = sample_polygon(blob, n);
    double ke = 0.0, ne = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const DiscreteFrame d = discrete_frame(loop, static_cast<std::ptrdiff_t>(i));
      const LocalFrame f = blob.frame_at(loop.parameters()[i]);
      ke = std::max(ke, std::abs(d.kappa_h - f.kappa));
      ne = std::max(ne, norm(d.n_h - f.n));
    }
    hs.push_back(loop.h());
    kerr.push_back(ke);
    nerr.push_back(ne);
  }
  const double k_order = loglog_slope(hs, kerr);
  const double n_order = loglog_slope(hs, nerr);
  double circle_err = 0.0;
  // Vertex rounding limits the stencil to about DBL_EPSILON / theta^2, so the
  // 1e-14 check uses polygons with theta >= 2 pi / 48.
  for (std::size_t n : {4, 6, 8, 12, 16, 24, 32, 48}) {
    std::vector<Vec2> pts(n);
    const double theta = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) pts[k] = {std::cos(theta * k), std::sin(theta * k)};
    const PolygonLoop loop(pts);
    for (std::size_t i = 0; i < n; ++i) {
      const double kh = discrete_curvature(loop.at(static_cast<std::ptrdiff_t>(i) - 1) - loop.at(i),
                                           loop.at(static_cast<std::ptrdiff_t>(i) + 1) - loop.at(i));
      circle_err = std::max(circle_err, std::abs(kh + std::cos(theta / 2.0)));
    }
  }
  o.detail << " curvature order=" << k_order << " (>= 0.9) normal order=" << n_order
           << " (>= 1.9) circle |kappa_h + cos(theta/2)|=" << circle_err << " (<= 1e-14)";
  o.require(k_order >= 0.9, "curvature order");
  o.require(n_order >= 1.9, "normal order");
  o.require(circle_err <= 1e-14, "circle stencil");
}

void criterion8(Outcome& o) {
  const double eps = 1e-4;
  const double h_lo = std::pow(eps, 1.5);
  const double h_hi = std::pow(std::abs(std::log(eps)), -3.0);
  HStudySpec spec;
  spec.eps = eps;
  spec.n_values = {8192, 16384, 32768};
  spec.points = uniform_points(64);
  const Table t = study_h(preset_curve("ellipse"), spec);
  std::vector<double> c;
  for (const auto& row : t.rows) {
    const double h = row[1];
    o.require(h >= h_lo && h <= h_hi, "h inside the regime");
    c.push_back(row[3] / std::pow(h, 2.0 / 3.0));
    o.detail << " N=" << row[0] << ",h=" << h << ",err/h^(2/3)=" << c.back();
  }
  const double spread = max_of(c) / min_of(c);
  o.detail << " | regime [" << h_lo << ", " << h_hi << "] C=" << max_of(c) << " spread=" << spread
           << " (<= 3)";
  o.require(spread <= 3.0, "ratio spread");
}

}  // namespace

int main() {
  int failed = 0;
  failed += run("C1", "kernel correctness", 5, criterion1);
  failed += run("C2", "circle oracle", 30, criterion2);
  failed += run("C3", "expansion order", 120, criterion3);
  failed += run("C4", "model difference", 60, criterion4);
  failed += run("C5", "psi Cauchy property", 60, criterion5);
  failed += run("C6", "discrete scheme envelope", 300, criterion6);
  failed += run("C7", "stencil orders", 10, criterion7);
  failed += run("C8", "small-h regime", 120, criterion8);
  std::printf("%d of 8 criteria failed\n", failed);
  return failed;
}
