#pragma once

#include "domove/geometry.hpp"
#include "domove/solver.hpp"

/// Dedicated biobjective (M = 2) dominance-move algorithm.
///
/// After reduction, both sets are mutually nondominated staircases. Every
/// kept q starts as its own group; each group repeatedly looks up its inward
/// neighbor, the point of the working set that can move to dominate it most
/// cheaply. Mutual neighbor pairs (loops) are replaced by their ideal point,
/// which preserves all future move costs because for L1 moves
///   group_cost(p, g1 u g2) = group_cost(p, g1) + group_cost(min(p, g1), g2).
/// When no loop remains, every neighbor chain ends at a P-point and the
/// chains define the optimal grouping.
namespace domove {

/// Index of the point of r_union (other than q itself, compared by value)
/// whose L1 move cost onto q is smallest; ties break to the lowest index.
/// Requires M = 2 and q present in r_union; all points equal to q makes the
/// instance degenerate.
std::size_t inward_neighbor(const Point& q, const PointSet& r_union);

/// Exact dominance move for biobjective instances via neighbor grouping.
/// Matches the assignment-space optimum; indices in the certificate refer to
/// the original inputs. Throws unless both sets are two-dimensional.
DomCertificate dom_biobjective(const PointSet& p, const PointSet& q);

}  // namespace domove
