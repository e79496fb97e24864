#pragma once

#include <cstdint>
#include <map>

#include "domove/geometry.hpp"

/// Exact dominance-move solvers over the assignment space.
///
/// For L1 decrease-only moves the optimal moved position of a point p, given
/// the set of q's it must dominate, is the componentwise minimum. The search
/// therefore ranges over assignments of Q-points to P-points; its optimum
/// equals the optimum of the mixed-integer model built by build_model.
namespace domove {

/// A witness for a dominance-move value: who covers whom, where the movers
/// end up, and what each group costs. Indices refer to the original input
/// sets, including any points removed by preprocessing.
struct DomCertificate {
  double value = 0.0;
  /// assignment[j] = index of the P-point covering Q-point j.
  std::vector<std::size_t> assignment;
  /// Final position of every P-point with at least one assigned Q-point.
  std::map<std::size_t, Point> moved_points;
  /// L1 move cost per used P-point; sums to value.
  std::map<std::size_t, double> per_group_cost;
};

struct SolveStats {
  std::uint64_t nodes_explored = 0;
  std::uint64_t incumbent_updates = 0;
  std::uint64_t pruned = 0;
  double wall_time_seconds = 0.0;
};

struct SolveOptions {
  std::uint64_t node_cap = 10'000'000;
  double time_cap_seconds = 300.0;
  /// Apply reduce_instance before searching. Disabling is value-neutral and
  /// only enlarges the search space.
  bool preprocess = true;
};

struct SolveResult {
  DomCertificate certificate;
  SolveStats stats;
  /// False when a cap stopped the search; the certificate is then the best
  /// incumbent and its value is an upper bound on the true optimum.
  bool optimal = true;
};

/// Evaluates a fixed assignment (no optimization): groups Q-points by their
/// assigned P-point and sums the group move costs.
/// Throws on dimension mismatch or out-of-range indices.
DomCertificate evaluate_assignment(const PointSet& p, const PointSet& q,
                                   const std::vector<std::size_t>& assignment);

/// Completes an assignment over the reduced instance (indices into
/// red.p_set / red.q_set) to the full original index space. Points removed
/// by the reduction are covered at zero cost: a q weakly dominated by a kept
/// p joins that p's group without changing its minimum, and a q dominated
/// inside Q inherits the assignment of its kept dominator.
std::vector<std::size_t> complete_assignment(
    const PointSet& p, const PointSet& q, const ReducedInstance& red,
    const std::vector<std::size_t>& reduced_assignment);

/// Reference oracle: enumerates every assignment of Q-points to P-points in
/// lexicographic order and keeps the first optimum, so ties resolve to the
/// lexicographically smallest assignment vector.
/// Throws "instance too large for oracle" when the (reduced) instance has
/// more than `enumeration_cap` assignments.
DomCertificate solve_bruteforce(const PointSet& p, const PointSet& q,
                                const SolveOptions& opts = {},
                                std::uint64_t enumeration_cap = 10'000'000);

/// Depth-first branch and bound over assignments. Q-points are branched
/// hardest first (decreasing cheapest-single-assignment cost); at each node
/// candidate P-points are tried by ascending marginal cost. The node bound is
/// the exact cost of the groups formed so far, valid because group costs only
/// grow as groups grow. The initial incumbent is the greedy per-q cheapest
/// assignment. Hitting a cap returns the incumbent flagged non-optimal.
SolveResult solve_bb(const PointSet& p, const PointSet& q,
                     const SolveOptions& opts = {});

/// Checks a certificate against its instance: every Q-point assigned exactly
/// once, moved points equal to the componentwise group minimum, every moved
/// point weakly dominating its assigned Q-points, per-group costs and the
/// total value consistent to 1e-9. Throws on out-of-range indices.
bool verify_certificate(const PointSet& p, const PointSet& q,
                        const DomCertificate& cert);

}  // namespace domove
