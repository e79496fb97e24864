#pragma once

#include <cstddef>
#include <vector>

#include "domove/geometry.hpp"

/// Symbolic mixed-integer model of the dominance move.
///
/// Decision layout for an instance with NP movers, NQ targets, M objectives:
///   zp_i_m     >= 0   move of p_i in objective m (used movers only)
///   zpq_i_j_m  >= 0   residual shortfall of the moved p_i against q_j
///   pl_i_m            final position of p_i, bounded by lbp/ubp
///   xp_i       binary p_i moves at all
///   xpq_i_j    binary q_j is covered by p_i (each q covered exactly once)
///   xpqd_i_j_m binary selects the active side of the shortfall linearization
/// The objective minimizes total movement plus total shortfall; at the
/// optimum every shortfall is zero and the value is the dominance move.
namespace domove {

enum class VarKind { continuous, binary };

struct MipVariable {
  std::string name;
  VarKind kind = VarKind::continuous;
  double lower = 0.0;
  double upper = 0.0;

  bool operator==(const MipVariable&) const = default;
};

enum class Sense { le, ge, eq };

/// Linear row: terms reference variables by index into MipModel::variables.
/// Zero coefficients are never stored.
struct MipConstraint {
  std::string name;
  std::vector<std::pair<std::size_t, double>> terms;
  Sense sense = Sense::le;
  double rhs = 0.0;

  bool operator==(const MipConstraint&) const = default;
};

/// Per-pair big-M data and variable bounds kept alongside the rows.
/// lbp/ubp are flattened (i, m); big_m is flattened (i, j, m) with
/// big_m[(i*NQ + j)*M + m] = max(0, p_{i,m} - q_{j,m}).
struct MipMeta {
  std::size_t np = 0;
  std::size_t nq = 0;
  std::size_t m = 0;
  std::vector<double> lbp;
  std::vector<double> ubp;
  std::vector<double> big_m;

  bool operator==(const MipMeta&) const = default;
};

struct MipModel {
  std::vector<MipVariable> variables;
  /// Minimized; pairs of (variable index, coefficient).
  std::vector<std::pair<std::size_t, double>> objective;
  std::vector<MipConstraint> constraints;
  MipMeta meta;

  bool operator==(const MipModel&) const = default;
};

/// Canonical variable indices for a given (NP, NQ, M) shape, in declaration
/// order: zp block, zpq block, pl block, xp, xpq, xpqd.
struct MipLayout {
  std::size_t np, nq, m;
  std::size_t zp(std::size_t i, std::size_t mm) const { return i * m + mm; }
  std::size_t zpq(std::size_t i, std::size_t j, std::size_t mm) const {
    return np * m + (i * nq + j) * m + mm;
  }
  std::size_t pl(std::size_t i, std::size_t mm) const {
    return np * m + np * nq * m + i * m + mm;
  }
  std::size_t xp(std::size_t i) const { return 2 * np * m + np * nq * m + i; }
  std::size_t xpq(std::size_t i, std::size_t j) const {
    return 2 * np * m + np * nq * m + np + i * nq + j;
  }
  std::size_t xpqd(std::size_t i, std::size_t j, std::size_t mm) const {
    return 2 * np * m + np * nq * m + np + np * nq + (i * nq + j) * m + mm;
  }
  std::size_t total() const {
    return 2 * np * m + 2 * np * nq * m + np + np * nq;
  }
};

/// Builds the model for DoM(P, Q). Coordinates must be nonnegative (the zp
/// linearization needs pl >= 0); negative input raises "shift required".
/// With preprocess (default) the instance is reduced first and the model
/// covers the kept points; both sets must be non-empty afterwards.
MipModel build_model(const PointSet& p, const PointSet& q,
                     bool preprocess = true);

}  // namespace domove
