#pragma once

#include "domove/geometry.hpp"

namespace domove {

// Mean Euclidean distance from each reference point to its nearest point in
// `approx`. Lower is better; zero means every reference point is matched
// exactly. Both sets must share a dimension and be non-empty.
double igd(const PointSet& approx, const PointSet& reference);

// Lebesgue measure of the region dominated by `set` and bounded above by
// `ref`, for minimization. Points with any coordinate at or beyond the
// reference contribute nothing; a set fully outside the reference box has
// hypervolume zero. Exact dimension-sweep computation, so cost grows quickly
// with dimension; intended for the small fronts this library works with.
double hypervolume(const PointSet& set, const Point& ref);

}  // namespace domove
