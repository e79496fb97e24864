#include "domove/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace domove {

double igd(const PointSet& approx, const PointSet& reference) {
  if (approx.dim() != reference.dim()) {
    throw std::invalid_argument("igd: dimension mismatch");
  }
  double total = 0.0;
  for (const Point& r : reference.points()) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& a : approx.points()) {
      double d2 = 0.0;
      for (std::size_t m = 0; m < r.size(); ++m) {
        const double d = a[m] - r[m];
        d2 += d * d;
      }
      best = std::min(best, d2);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

namespace {

// Points sorted ascending by the last active coordinate are swept as slabs:
// each slab's width times the hypervolume of the prefix projected one
// dimension down. Recursion bottoms out at one dimension.
double hv_recursive(std::vector<Point> pts, std::size_t dim, const Point& ref) {
  if (pts.empty()) return 0.0;
  if (dim == 1) {
    double lo = ref[0];
    for (const Point& p : pts) lo = std::min(lo, p[0]);
    return ref[0] - lo;
  }
  const std::size_t d = dim - 1;
  std::sort(pts.begin(), pts.end(), [d](const Point& a, const Point& b) {
    return a[d] < b[d];
  });
  double volume = 0.0;
  std::vector<Point> prefix;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Point proj(pts[i].begin(), pts[i].begin() + d);
    // Keep the prefix non-dominated so the projected subproblem stays small.
    bool dominated = false;
    for (const Point& q : prefix) {
      if (weakly_dominates(q, proj)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      prefix.erase(std::remove_if(prefix.begin(), prefix.end(),
                                  [&](const Point& q) {
                                    return weakly_dominates(proj, q);
                                  }),
                   prefix.end());
      prefix.push_back(std::move(proj));
    }
    const double upper = i + 1 < pts.size() ? pts[i + 1][d] : ref[d];
    const double width = upper - pts[i][d];
    if (width > 0.0) {
      volume += width * hv_recursive(prefix, d, ref);
    }
  }
  return volume;
}

}  // namespace

double hypervolume(const PointSet& set, const Point& ref) {
  if (ref.size() != set.dim()) {
    throw std::invalid_argument("hypervolume: reference dimension mismatch");
  }
  for (double v : ref) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("hypervolume: non-finite reference");
    }
  }
  std::vector<Point> inside;
  for (const Point& p : set.points()) {
    bool in = true;
    for (std::size_t m = 0; m < ref.size(); ++m) {
      if (p[m] >= ref[m]) {
        in = false;
        break;
      }
    }
    if (in) inside.push_back(p);
  }
  return hv_recursive(std::move(inside), set.dim(), ref);
}

}  // namespace domove
