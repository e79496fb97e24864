#pragma once

#include <cstddef>
#include <string>
#include <vector>

/// Objective-space geometry: point sets under the minimization convention,
/// weak Pareto dominance, value-preserving instance reduction, and the
/// group move-cost kernel shared by every dominance-move solver.
namespace domove {

/// An objective vector. Coordinates are objective values to be minimized.
using Point = std::vector<double>;

/// A labeled, ordered collection of points with a fixed dimension.
///
/// Immutable after construction. Duplicates are legal input. Construction
/// rejects non-finite coordinates and dimension mismatches.
class PointSet {
 public:
  PointSet(std::string label, std::size_t dim, std::vector<Point> points);

  /// Convenience constructor inferring the dimension from the first point.
  /// Rejects empty point lists (the dimension would be unknown).
  PointSet(std::string label, std::vector<Point> points);

  const std::string& label() const { return label_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }

 private:
  std::string label_;
  std::size_t dim_;
  std::vector<Point> points_;
};

/// True iff p is no worse than q in every coordinate (p_m <= q_m for all m).
/// Comparisons are exact; inputs are taken at face value.
/// Throws std::invalid_argument on dimension mismatch.
bool weakly_dominates(const Point& p, const Point& q);

/// True iff the set weakly dominates q: some member weakly dominates q.
bool set_weakly_dominates(const PointSet& s, const Point& q);

/// Removes points dominated within the set: a point is dropped when another
/// point weakly dominates it and is strictly better in at least one
/// coordinate. Among exact duplicates the first occurrence survives.
/// Survivors keep their input order. Empty input yields empty output.
PointSet pareto_filter(const PointSet& s);

/// Index-tracking variant: returns the original indices of the survivors.
std::vector<std::size_t> pareto_filter_indices(const PointSet& s);

/// A preprocessed instance: both sets Pareto-filtered, plus every q weakly
/// dominated by a kept p removed. Preserves the dominance-move value.
struct ReducedInstance {
  std::vector<std::size_t> p_kept;  ///< original indices of surviving P points
  std::vector<std::size_t> q_kept;  ///< original indices of surviving Q points
  PointSet p_set;
  PointSet q_set;
};

/// Applies the reduction above. P must be non-empty ("empty dominating set");
/// Q may be empty or may reduce to empty (then the dominance move is 0).
ReducedInstance reduce_instance(const PointSet& p, const PointSet& q);

/// Result of moving a point to weakly dominate a group.
struct GroupMove {
  Point moved;  ///< componentwise min(p_m, min over the group)
  double cost;  ///< L1 move distance, sum_m max(0, p_m - min_g q_m)
};

/// Cheapest decrease-only L1 move of p that weakly dominates every point of
/// the group. An empty group costs nothing and leaves p in place.
GroupMove group_cost(const Point& p, const std::vector<Point>& group);

/// L1 move cost of `mover` to weakly dominate the single point `target`.
/// Equivalent to group_cost(mover, {target}).cost without the copy.
double single_move_cost(const Point& mover, const Point& target);

}  // namespace domove
