#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "domove/geometry.hpp"
#include "domove/solver.hpp"

namespace domove {

struct RunConfig {
  SolveOptions solve;
  // When the sets are biobjective, additionally run the direct staircase
  // algorithm on every pair and fail loudly on disagreement.
  bool crosscheck_biobjective = false;
  unsigned jobs = 1;
};

struct PairOutcome {
  DomCertificate certificate;
  SolveStats stats;
  bool optimal = true;
};

// Square matrix of dominance-move values over a family of labeled sets.
// cells[i][j] describes the move of set i toward dominating set j; the
// diagonal is the zero-cost identity outcome.
struct ComparisonMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<PairOutcome>> cells;

  double value(std::size_t i, std::size_t j) const {
    return cells[i][j].certificate.value;
  }
};

// Solves every ordered pair, optionally in parallel. Results are
// deterministic for a given config regardless of the parallelism degree:
// each cell is an independent single-threaded solve. Throws on fewer than
// two sets, mismatched dimensions (naming the offending set), or duplicate
// labels.
ComparisonMatrix compare_matrix(const std::vector<PointSet>& sets,
                                const RunConfig& cfg = {});

struct RankEntry {
  std::size_t index;
  std::string label;
  double total;        // row sum of best-found values
  bool all_proven;     // false if any entry in the row hit a solver cap
};

// Ascending row-sum ranking (a smaller total move means the set is closer
// to dominating the others). Ties keep input order. Rows containing
// unproven entries are flagged: their displayed total uses incumbent
// values, so the true total can only be smaller or equal.
std::vector<RankEntry> rank_summary(const ComparisonMatrix& m);

}  // namespace domove
