#include "loopforce/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <sstream>

#include "loopforce/error.hpp"

namespace loopforce {
namespace {

// (7,15) Gauss-Kronrod nodes and weights (QUADPACK qk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
  double a;
  double b;
  double value;
  double error;     // truncation estimate, drives refinement
  double roundoff;  // one ulp of the absolute integral, reported only
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Integrand& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_g = fc * kWg[3];
  double result_k = fc * kWgk[7];
  double res_abs = std::abs(result_k);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    result_k += kWgk[j] * (f1 + f2);
    res_abs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * result_k;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  result_k *= half;
  result_g *= half;
  res_abs *= std::abs(half);
  res_asc *= std::abs(half);

  double err = std::abs(result_k - result_g);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  // Roundoff is tracked apart from the truncation estimate: its sum does not
  // shrink under bisection, so it must not drive refinement of panels whose
  // integrand cancels strongly near a singularity.
  const double roundoff = std::numeric_limits<double>::epsilon() * res_abs;
  if (!std::isfinite(result_k)) {
    std::ostringstream msg;
    msg << "integrand is not finite on [" << a << ", " << b << "]";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  return {a, b, result_k, err, roundoff, depth};
}

GaussRule make_gauss_legendre(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "quadrature tolerances must be positive");
  }
  if (max_depth < 10) throw Error(ErrorCode::InvalidArgument, "max_depth must be >= 10");
  if (initial_splits_near_singularity < 1) {
    throw Error(ErrorCode::InvalidArgument, "initial_splits_near_singularity must be >= 1");
  }
}

QuadratureResult adaptive_integrate(const Integrand& f, double a, double b,
                                    const QuadratureConfig& cfg) {
  const double breaks[2] = {a, b};
  return adaptive_integrate(f, breaks, cfg);
}

QuadratureResult adaptive_integrate(const Integrand& f, std::span<const double> breaks,
                                    const QuadratureConfig& cfg) {
  cfg.validate();
  if (breaks.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two break points");
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) {
      if (breaks.size() == 2 && breaks[0] == breaks[1]) return {};
      throw Error(ErrorCode::InvalidArgument, "break points must be strictly increasing");
    }
  }

  std::priority_queue<Panel> heap;
  double value = 0.0;
  double error = 0.0;
  std::size_t evals = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Panel p = gk15(f, breaks[i], breaks[i + 1], 0);
    evals += 15;
    value += p.value;
    error += p.error;
    heap.push(p);
  }

  auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)); };
  // The running totals drift through repeated add/subtract, so they are
  // recomputed from the panels before any decision to stop.
  auto resum = [&] {
    double v = 0.0;
    double e = 0.0;
    for (auto copy = heap; !copy.empty(); copy.pop()) {
      v += copy.top().value;
      e += copy.top().error;
    }
    value = v;
    error = e;
  };
  for (std::size_t iter = 1;; ++iter) {
    if (error <= tolerance() || iter % 512 == 0) {
      resum();
      if (error <= tolerance()) break;
    }
    Panel worst = heap.top();
    if (worst.depth >= cfg.max_depth || heap.size() >= cfg.max_panels) {
      resum();
      if (error <= tolerance()) break;
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge: estimate " << value << " with error bound "
          << error << " (tolerance " << tolerance() << ", worst panel [" << worst.a << ", "
          << worst.b << "] at depth " << worst.depth << ")";
      throw NonConvergenceError(msg.str(), value, error);
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(f, worst.a, mid, worst.depth + 1);
    Panel right = gk15(f, mid, worst.b, worst.depth + 1);
    evals += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Final sums in a fixed (interval) order so results do not depend on heap layout.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  for (; !heap.empty(); heap.pop()) panels.push_back(heap.top());
  double roundoff = 0.0;
  for (const Panel& p : panels) roundoff += p.roundoff;
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  QuadratureResult out;
  double comp = 0.0;
  for (const Panel& p : panels) {
    // Neumaier summation.
    const double t = out.value + p.value;
    if (std::abs(out.value) >= std::abs(p.value)) {
      comp += (out.value - t) + p.value;
    } else {
      comp += (p.value - t) + out.value;
    }
    out.value = t;
    out.error += p.error;
  }
  out.value += comp;
  out.error += roundoff;
  out.evaluations = evals;
  out.panels = panels.size();
  return out;
}

const GaussRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre rule needs n >= 1");
  static std::mutex mu;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

}  // namespace loopforce
