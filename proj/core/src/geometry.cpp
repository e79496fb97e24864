#include "domove/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace domove {

namespace {

void validate(const std::string& label, std::size_t dim,
              const std::vector<Point>& points) {
  if (dim == 0) {
    throw std::invalid_argument("point set '" + label +
                                "': dimension must be positive");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      throw std::invalid_argument(
          "point set '" + label + "': point " + std::to_string(i) + " has " +
          std::to_string(points[i].size()) + " coordinates, expected " +
          std::to_string(dim));
    }
    for (double v : points[i]) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("point set '" + label + "': point " +
                                    std::to_string(i) +
                                    " has a non-finite coordinate");
      }
    }
  }
}

}  // namespace

PointSet::PointSet(std::string label, std::size_t dim,
                   std::vector<Point> points)
    : label_(std::move(label)), dim_(dim), points_(std::move(points)) {
  validate(label_, dim_, points_);
}

PointSet::PointSet(std::string label, std::vector<Point> points)
    : label_(std::move(label)),
      dim_(points.empty() ? 0 : points.front().size()),
      points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("point set '" + label_ +
                                "': cannot infer dimension of an empty set");
  }
  validate(label_, dim_, points_);
}

bool weakly_dominates(const Point& p, const Point& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("weakly_dominates: dimension mismatch (" +
                                std::to_string(p.size()) + " vs " +
                                std::to_string(q.size()) + ")");
  }
  for (std::size_t m = 0; m < p.size(); ++m) {
    if (p[m] > q[m]) return false;
  }
  return true;
}

bool set_weakly_dominates(const PointSet& s, const Point& q) {
  for (const Point& p : s.points()) {
    if (weakly_dominates(p, q)) return true;
  }
  return false;
}

std::vector<std::size_t> pareto_filter_indices(const PointSet& s) {
  const auto& pts = s.points();
  std::vector<std::size_t> kept;
  kept.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dropped = false;
    for (std::size_t j = 0; j < pts.size() && !dropped; ++j) {
      if (j == i) continue;
      if (!weakly_dominates(pts[j], pts[i])) continue;
      // Dominator must be strictly better somewhere, or an earlier duplicate.
      if (pts[j] != pts[i] || j < i) dropped = true;
    }
    if (!dropped) kept.push_back(i);
  }
  return kept;
}

PointSet pareto_filter(const PointSet& s) {
  std::vector<Point> kept;
  for (std::size_t i : pareto_filter_indices(s)) kept.push_back(s[i]);
  return PointSet(s.label(), s.dim(), std::move(kept));
}

ReducedInstance reduce_instance(const PointSet& p, const PointSet& q) {
  if (p.empty()) {
    throw std::invalid_argument("reduce_instance: empty dominating set");
  }
  if (!q.empty() && p.dim() != q.dim()) {
    throw std::invalid_argument("reduce_instance: dimension mismatch (" +
                                std::to_string(p.dim()) + " vs " +
                                std::to_string(q.dim()) + ")");
  }

  std::vector<std::size_t> p_kept = pareto_filter_indices(p);
  std::vector<Point> p_pts;
  p_pts.reserve(p_kept.size());
  for (std::size_t i : p_kept) p_pts.push_back(p[i]);

  std::vector<std::size_t> q_kept;
  std::vector<Point> q_pts;
  for (std::size_t j : pareto_filter_indices(q)) {
    bool covered = false;
    for (const Point& pp : p_pts) {
      if (weakly_dominates(pp, q[j])) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      q_kept.push_back(j);
      q_pts.push_back(q[j]);
    }
  }

  return ReducedInstance{std::move(p_kept), std::move(q_kept),
                         PointSet(p.label(), p.dim(), std::move(p_pts)),
                         PointSet(q.label(), q.empty() ? p.dim() : q.dim(),
                                  std::move(q_pts))};
}

GroupMove group_cost(const Point& p, const std::vector<Point>& group) {
  GroupMove r{p, 0.0};
  if (group.empty()) return r;
  for (const Point& q : group) {
    if (q.size() != p.size()) {
      throw std::invalid_argument("group_cost: dimension mismatch");
    }
  }
  for (std::size_t m = 0; m < p.size(); ++m) {
    double lo = group.front()[m];
    for (const Point& q : group) lo = std::min(lo, q[m]);
    if (lo < p[m]) {
      r.cost += p[m] - lo;
      r.moved[m] = lo;
    }
  }
  return r;
}

double single_move_cost(const Point& mover, const Point& target) {
  if (mover.size() != target.size()) {
    throw std::invalid_argument("single_move_cost: dimension mismatch");
  }
  double c = 0.0;
  for (std::size_t m = 0; m < mover.size(); ++m) {
    if (mover[m] > target[m]) c += mover[m] - target[m];
  }
  return c;
}

}  // namespace domove
