#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace minbis::detail {

struct SimplexResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

// Plain Nelder-Mead minimization with restarts around the incumbent.
// Non-finite values are treated as +infinity, which keeps the simplex
// inside the region where the objective is defined.
inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                                 double initial_step, double xtol = 1e-11, int max_evals = 20000, int restarts = 3) {
  const std::size_t d = x0.size();
  SimplexResult best;
  auto eval = [&](const std::vector<double>& x) {
    ++best.evaluations;
    double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  double step = initial_step;
  for (int round = 0; round <= restarts; ++round) {
    std::vector<std::vector<double>> pts(d + 1, x0);
    std::vector<double> vals(d + 1);
    for (std::size_t i = 0; i < d; ++i) pts[i + 1][i] += step;
    for (std::size_t i = 0; i <= d; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> idx(d + 1);
    while (best.evaluations < max_evals) {
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
      const auto lo = idx.front(), hi = idx.back(), second = idx[d - 1];

      double spread = 0;
      for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t k = 0; k < d; ++k) spread = std::max(spread, std::abs(pts[i][k] - pts[lo][k]));
      if (spread < xtol) break;

      std::vector<double> centroid(d, 0.0);
      for (std::size_t i = 0; i <= d; ++i)
        if (i != hi)
          for (std::size_t k = 0; k < d; ++k) centroid[k] += pts[i][k] / static_cast<double>(d);
      auto along = [&](double t) {
        std::vector<double> x(d);
        for (std::size_t k = 0; k < d; ++k) x[k] = centroid[k] + t * (pts[hi][k] - centroid[k]);
        return x;
      };

      auto xr = along(-1.0);
      double fr = eval(xr);
      if (fr < vals[lo]) {
        auto xe = along(-2.0);
        double fe = eval(xe);
        if (fe < fr) {
          pts[hi] = xe;
          vals[hi] = fe;
        } else {
          pts[hi] = xr;
          vals[hi] = fr;
        }
      } else if (fr < vals[second]) {
        pts[hi] = xr;
        vals[hi] = fr;
      } else {
        auto xc = fr < vals[hi] ? along(-0.5) : along(0.5);
        double fc = eval(xc);
        if (fc < std::min(fr, vals[hi])) {
          pts[hi] = xc;
          vals[hi] = fc;
        } else {
          for (std::size_t i = 0; i <= d; ++i) {
            if (i == lo) continue;
            for (std::size_t k = 0; k < d; ++k) pts[i][k] = pts[lo][k] + 0.5 * (pts[i][k] - pts[lo][k]);
            vals[i] = eval(pts[i]);
          }
        }
      }
    }
    auto lo = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    const bool improved = vals[lo] < best.value;
    if (improved) {
      best.value = vals[lo];
      best.x = pts[lo];
    }
    if (!improved && round > 0) break;
    x0 = best.x;
    step = std::max(initial_step * 1e-2, 1e3 * xtol);
  }
  return best;
}

}  // namespace minbis::detail
