#include "loopforce/study.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "loopforce/discrete.hpp"
#include "loopforce/error.hpp"
#include "loopforce/expansion.hpp"
#include "loopforce/reference.hpp"
#include "parallel.hpp"

namespace loopforce {
namespace {

std::string fitted(std::span<const double> x, std::span<const double> y) {
  try {
    return format_number(loglog_slope(x, y));
  } catch (const Error&) {
    return "nan";
  }
}

template <class T>
void require_sorted_positive(const std::vector<T>& v, const char* what) {
  if (v.empty()) throw Error(ErrorCode::InvalidArgument, std::string("empty ") + what);
  for (const T& x : v) {
    if (!(x > T{})) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
  }
  const bool ascending = std::is_sorted(v.begin(), v.end());
  const bool descending = std::is_sorted(v.rbegin(), v.rend());
  if (!ascending && !descending) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be sorted");
  }
}

std::size_t nearest_vertex(const PolygonLoop& loop, double t) {
  const auto params = loop.parameters();
  t -= std::floor(t);
  std::size_t best = 0;
  double best_d = 2.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    double d = std::abs(params[i] - t);
    d = std::min(d, 1.0 - d);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

// Prefix a failure with the row it came from.
[[noreturn]] void rethrow_with_context(const Error& e, const std::string& context) {
  throw Error(e.code(), context + ": " + e.what());
}

}  // namespace

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "slope fit needs at least two (x, y) pairs");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "slope fit needs positive data");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw Error(ErrorCode::InvalidArgument, "slope fit needs distinct x values");
  return (n * sxy - sx * sy) / denom;
}

std::vector<double> uniform_points(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(i) / static_cast<double>(n);
  return out;
}

Table study_eps(const ClosedCurve& curve, const EpsStudySpec& spec) {
  require_sorted_positive(spec.eps_values, "eps sweep");
  if (spec.points.empty()) throw Error(ErrorCode::InvalidArgument, "no evaluation points");
  Table table;
  table.header = {"t0", "eps", "F_ref", "F_exp", "cF_ref", "cF_exp", "err_F", "err_cF"};
  const std::size_t n_eps = spec.eps_values.size();
  table.rows.resize(spec.points.size() * n_eps);
  detail::parallel_for(table.rows.size(), [&](std::size_t k) {
    const double t0 = spec.points[k / n_eps];
    const double eps = spec.eps_values[k % n_eps];
    const ElasticModel model{spec.nu, eps};
    const double psi_eps = spec.psi_eps > 0.0 ? spec.psi_eps : eps;
    try {
      const double f_ref = force_cutoff_reference(curve, t0, model, spec.quad);
      const double cf_ref = force_nonsingular_reference(curve, t0, model, spec.quad);
      const ForceBreakdown cf = force_nonsingular_expansion(curve, t0, model, psi_eps, spec.quad);
      const double f_exp = cf.total - cf.model_shift;
      table.rows[k] = {t0,           eps, f_ref, f_exp, cf_ref, cf.total, std::abs(f_ref - f_exp),
                       std::abs(cf_ref - cf.total)};
    } catch (const Error& e) {
      std::ostringstream ctx;
      ctx << "study-eps row t0=" << t0 << " eps=" << eps;
      rethrow_with_context(e, ctx.str());
    }
  });
  for (std::size_t p = 0; p < spec.points.size(); ++p) {
    std::vector<double> eps, err_f, err_cf;
    for (std::size_t k = 0; k < n_eps; ++k) {
      const auto& row = table.rows[p * n_eps + k];
      eps.push_back(row[1]);
      err_f.push_back(row[6]);
      err_cf.push_back(row[7]);
    }
    table.footer.push_back("t0=" + format_number(spec.points[p]) +
                           " slope_err_F=" + fitted(eps, err_f) +
                           " slope_err_cF=" + fitted(eps, err_cf));
  }
  return table;
}

Table study_h(const ClosedCurve& curve, const HStudySpec& spec) {
  require_sorted_positive(spec.n_values, "N sweep");
  if (!std::is_sorted(spec.n_values.begin(), spec.n_values.end())) {
    throw Error(ErrorCode::InvalidArgument, "N sweep must be ascending");
  }
  const ElasticModel model{spec.nu, spec.eps};
  model.validate();
  const std::size_t n_max = spec.n_values.back();
  const PolygonLoop finest = sample_polygon(curve, n_max, spec.mesh_constant);

  std::vector<PolygonLoop> loops;
  std::vector<std::vector<std::size_t>> vertices;
  for (std::size_t n : spec.n_values) {
    PolygonLoop loop = n_max % n == 0 ? finest.subsample(n_max / n)
                                      : sample_polygon(curve, n, spec.mesh_constant);
    const auto m = neighborhood_count(loop.h());
    if (n <= 2 * m + 2) {
      std::ostringstream msg;
      msg << "study-h row N=" << n << ": mesh too coarse (N must exceed 2 m^h + 2 = " << 2 * m + 2
          << ")";
      throw Error(ErrorCode::Mesh, msg.str());
    }
    std::vector<std::size_t> idx;
    if (spec.points.empty()) {
      idx.resize(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    } else {
      for (double t : spec.points) idx.push_back(nearest_vertex(loop, t));
    }
    loops.push_back(std::move(loop));
    vertices.push_back(std::move(idx));
  }

  // Reference quadratures, once per distinct vertex parameter.
  std::map<double, std::size_t> slot;
  for (std::size_t r = 0; r < loops.size(); ++r) {
    for (std::size_t i : vertices[r]) slot.emplace(loops[r].parameters()[i], 0);
  }
  std::vector<double> params;
  for (auto& [t, s] : slot) {
    s = params.size();
    params.push_back(t);
  }
  std::vector<double> ref_f(params.size());
  std::vector<double> ref_cf(params.size());
  detail::parallel_for(params.size(), [&](std::size_t k) {
    try {
      ref_f[k] = force_cutoff_reference(curve, params[k], model, spec.quad);
      ref_cf[k] = force_nonsingular_reference(curve, params[k], model, spec.quad);
    } catch (const Error& e) {
      rethrow_with_context(e, "study-h reference at t=" + format_number(params[k]));
    }
  });

  Table table;
  table.header = {"N",          "h",          "eps",   "max_err_F", "mean_err_F",
                  "max_err_cF", "bound",      "ratio"};
  std::vector<double> hs, max_errs, ratios;
  for (std::size_t r = 0; r < loops.size(); ++r) {
    const PolygonLoop& loop = loops[r];
    const auto& idx = vertices[r];
    std::vector<double> err_f(idx.size());
    std::vector<double> err_cf(idx.size());
    detail::parallel_for(idx.size(), [&](std::size_t k) {
      const auto i = static_cast<std::ptrdiff_t>(idx[k]);
      const std::size_t s = slot.at(loop.parameters()[idx[k]]);
      try {
        err_f[k] = std::abs(force_cutoff_discrete(loop, i, model) - ref_f[s]);
        err_cf[k] = std::abs(force_nonsingular_discrete(loop, i, model) - ref_cf[s]);
      } catch (const Error& e) {
        rethrow_with_context(e, "study-h row N=" + std::to_string(loop.size()));
      }
    });
    const double max_f = *std::max_element(err_f.begin(), err_f.end());
    const double max_cf = *std::max_element(err_cf.begin(), err_cf.end());
    double mean_f = 0.0;
    for (double e : err_f) mean_f += e;
    mean_f /= static_cast<double>(err_f.size());
    const double h = loop.h();
    const double bound = spec.eps + h * std::abs(std::log(spec.eps)) + std::cbrt(h * h);
    table.rows.push_back({static_cast<double>(loop.size()), h, spec.eps, max_f, mean_f, max_cf,
                          bound, max_f / bound});
    hs.push_back(h);
    max_errs.push_back(max_f);
    ratios.push_back(max_f / bound);
  }
  const double max_ratio = *std::max_element(ratios.begin(), ratios.end());
  const double min_ratio = *std::min_element(ratios.begin(), ratios.end());
  table.footer.push_back("max_ratio=" + format_number(max_ratio));
  table.footer.push_back("ratio_spread=" +
                         (min_ratio > 0.0 ? format_number(max_ratio / min_ratio) : "inf"));
  table.footer.push_back("h_order=" + fitted(hs, max_errs));
  return table;
}

Table compare_models(const ClosedCurve& curve, const CompareSpec& spec) {
  spec.model.validate();
  if (spec.points.empty()) throw Error(ErrorCode::InvalidArgument, "no evaluation points");
  Table table;
  table.header = {"t0", "phi", "kappa", "diff_ref", "kappaC", "residual"};
  table.rows.resize(spec.points.size());
  detail::parallel_for(spec.points.size(), [&](std::size_t k) {
    const double t0 = spec.points[k];
    try {
      const LocalFrame frame = curve.frame_at(t0);
      const double diff = force_nonsingular_reference(curve, t0, spec.model, spec.quad) -
                          force_cutoff_reference(curve, t0, spec.model, spec.quad);
      const double shift = frame.kappa * const_C(frame.phi, spec.model.nu);
      table.rows[k] = {t0, frame.phi, frame.kappa, diff, shift, diff - shift};
    } catch (const Error& e) {
      rethrow_with_context(e, "compare-models row t0=" + format_number(t0));
    }
  });
  double worst = 0.0;
  for (const auto& row : table.rows) worst = std::max(worst, std::abs(row[5]));
  table.footer.push_back("max_abs_residual=" + format_number(worst));
  table.footer.push_back("max_abs_residual_over_eps=" + format_number(worst / spec.model.eps));
  return table;
}

}  // namespace loopforce
