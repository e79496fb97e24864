#pragma once

// Shared fixtures and independent reference oracles for the test suite.
// The oracles deliberately avoid the library's own building blocks wherever
// a bug could hide: they re-derive dominance, filtering, the biobjective
// value, and the indicator values from first principles.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "domove/geometry.hpp"

namespace testutil {

using domove::Point;
using domove::PointSet;

inline PointSet random_set(std::string label, std::size_t n, std::size_t m,
                           std::mt19937& rng, double lo = 0.0,
                           double hi = 10.0, bool integer_grid = false) {
  std::uniform_real_distribution<double> real(lo, hi);
  std::uniform_int_distribution<int> grid(static_cast<int>(lo),
                                          static_cast<int>(hi));
  std::vector<Point> pts(n, Point(m));
  for (Point& p : pts) {
    for (double& v : p) v = integer_grid ? grid(rng) : real(rng);
  }
  return PointSet(std::move(label), m, std::move(pts));
}

// The worked three-objective example used throughout the suite.
inline PointSet worked_p() {
  return PointSet("P", 3,
                  {{2.0, 2.0, 2.0}, {2.0, 2.2, 1.5}, {3.0, 1.6, 1.6}});
}
inline PointSet worked_q() {
  return PointSet("Q", 3,
                  {{2.0, 1.2, 2.1}, {2.0, 2.1, 1.0}, {4.0, 1.5, 1.5}});
}

inline bool dominates_leq(const Point& a, const Point& b) {
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m] > b[m]) return false;
  }
  return true;
}

// Quadratic-time filter, written independently of the library: a point is
// dropped when another point is no worse everywhere and either strictly
// better somewhere or an earlier exact duplicate.
inline std::vector<Point> naive_filter(const std::vector<Point>& pts) {
  std::vector<Point> kept;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < pts.size() && !drop; ++j) {
      if (i == j || !dominates_leq(pts[j], pts[i])) continue;
      drop = pts[j] != pts[i] || j < i;
    }
    if (!drop) kept.push_back(pts[i]);
  }
  return kept;
}

inline double naive_igd(const PointSet& approx, const PointSet& ref) {
  double sum = 0.0;
  for (const Point& r : ref.points()) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& a : approx.points()) {
      double d = 0.0;
      for (std::size_t m = 0; m < r.size(); ++m) {
        d += (a[m] - r[m]) * (a[m] - r[m]);
      }
      best = std::min(best, std::sqrt(d));
    }
    sum += best;
  }
  return sum / static_cast<double>(ref.size());
}

struct McEstimate {
  double value;
  double sigma;
};

// Monte-Carlo hypervolume over the bounding box [componentwise min, ref].
inline McEstimate mc_hypervolume(const PointSet& s, const Point& ref,
                                 std::size_t samples, std::mt19937& rng) {
  const std::size_t m = s.dim();
  Point lo = ref;
  for (const Point& p : s.points()) {
    for (std::size_t k = 0; k < m; ++k) lo[k] = std::min(lo[k], p[k]);
  }
  double box = 1.0;
  for (std::size_t k = 0; k < m; ++k) box *= std::max(0.0, ref[k] - lo[k]);
  if (box == 0.0) return {0.0, 0.0};

  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t hit = 0;
  Point sample(m);
  for (std::size_t t = 0; t < samples; ++t) {
    for (std::size_t k = 0; k < m; ++k) {
      sample[k] = lo[k] + u(rng) * (ref[k] - lo[k]);
    }
    for (const Point& p : s.points()) {
      if (dominates_leq(p, sample)) {
        ++hit;
        break;
      }
    }
  }
  const double frac = static_cast<double>(hit) / samples;
  return {box * frac, box * std::sqrt(frac * (1.0 - frac) / samples)};
}

// Independent biobjective dominance-move oracle. After removing covered and
// dominated targets, the survivors form a strict staircase in x; an optimal
// grouping splits it into consecutive runs, each served by one mover at the
// cost max(0, px - run min x) + max(0, py - run min y). Dynamic program over
// split positions; letting two runs share a mover can only be pessimal, so
// the relaxation is exact.
inline double dp2d(const PointSet& p, const PointSet& q) {
  const std::vector<Point> keep_q_all = naive_filter(q.points());
  std::vector<Point> qs;
  for (const Point& t : keep_q_all) {
    bool covered = false;
    for (const Point& s : p.points()) {
      if (dominates_leq(s, t)) {
        covered = true;
        break;
      }
    }
    if (!covered) qs.push_back(t);
  }
  if (qs.empty()) return 0.0;
  std::sort(qs.begin(), qs.end(),
            [](const Point& a, const Point& b) { return a[0] < b[0]; });

  const std::size_t n = qs.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n + 1, inf);
  best[0] = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t i = 1; i <= j; ++i) {
      double run = inf;
      for (const Point& mover : p.points()) {
        run = std::min(run, std::max(0.0, mover[0] - qs[i - 1][0]) +
                                std::max(0.0, mover[1] - qs[j - 1][1]));
      }
      best[j] = std::min(best[j], best[i - 1] + run);
    }
  }
  return best[n];
}

}  // namespace testutil
