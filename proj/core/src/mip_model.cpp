#include "domove/mip_model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace domove {

namespace {

std::string idx2(const char* stem, std::size_t a, std::size_t b) {
  return std::string(stem) + "_" + std::to_string(a) + "_" + std::to_string(b);
}

std::string idx3(const char* stem, std::size_t a, std::size_t b,
                 std::size_t c) {
  return idx2(stem, a, b) + "_" + std::to_string(c);
}

void push_term(MipConstraint& row, std::size_t var, double coef) {
  if (coef != 0.0) row.terms.emplace_back(var, coef);
}

}  // namespace

MipModel build_model(const PointSet& p_in, const PointSet& q_in,
                     bool preprocess) {
  if (p_in.empty() || q_in.empty()) {
    throw std::invalid_argument("build_model: both sets must be non-empty");
  }
  if (p_in.dim() != q_in.dim()) {
    throw std::invalid_argument("build_model: dimension mismatch (" +
                                std::to_string(p_in.dim()) + " vs " +
                                std::to_string(q_in.dim()) + ")");
  }
  for (const PointSet* s : {&p_in, &q_in}) {
    for (const Point& pt : s->points()) {
      for (double v : pt) {
        if (v < 0.0) {
          throw std::invalid_argument(
              "build_model: negative coordinate in set '" + s->label() +
              "': shift required");
        }
      }
    }
  }

  std::vector<Point> p_pts = p_in.points();
  std::vector<Point> q_pts = q_in.points();
  if (preprocess) {
    ReducedInstance red = reduce_instance(p_in, q_in);
    p_pts = red.p_set.points();
    q_pts = red.q_set.points();
    if (q_pts.empty()) {
      throw std::invalid_argument(
          "build_model: Q is empty after preprocessing (dominance move is 0)");
    }
  }

  const std::size_t np = p_pts.size();
  const std::size_t nq = q_pts.size();
  const std::size_t m = p_in.dim();
  const MipLayout lay{np, nq, m};

  MipModel model;
  model.meta.np = np;
  model.meta.nq = nq;
  model.meta.m = m;
  model.meta.lbp.resize(np * m);
  model.meta.ubp.resize(np * m);
  model.meta.big_m.resize(np * nq * m);
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t mm = 0; mm < m; ++mm) {
      double lo = p_pts[i][mm];
      for (std::size_t j = 0; j < nq; ++j) lo = std::min(lo, q_pts[j][mm]);
      model.meta.lbp[i * m + mm] = lo;
      model.meta.ubp[i * m + mm] = p_pts[i][mm];
      for (std::size_t j = 0; j < nq; ++j) {
        model.meta.big_m[(i * nq + j) * m + mm] =
            std::max(0.0, p_pts[i][mm] - q_pts[j][mm]);
      }
    }
  }

  const double inf = std::numeric_limits<double>::infinity();
  model.variables.resize(lay.total());
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t mm = 0; mm < m; ++mm) {
      model.variables[lay.zp(i, mm)] = {idx2("zp", i, mm),
                                        VarKind::continuous, 0.0, inf};
      model.variables[lay.pl(i, mm)] = {idx2("pl", i, mm),
                                        VarKind::continuous,
                                        model.meta.lbp[i * m + mm],
                                        model.meta.ubp[i * m + mm]};
    }
    model.variables[lay.xp(i)] = {"xp_" + std::to_string(i), VarKind::binary,
                                  0.0, 1.0};
    for (std::size_t j = 0; j < nq; ++j) {
      model.variables[lay.xpq(i, j)] = {idx2("xpq", i, j), VarKind::binary,
                                        0.0, 1.0};
      for (std::size_t mm = 0; mm < m; ++mm) {
        model.variables[lay.zpq(i, j, mm)] = {idx3("zpq", i, j, mm),
                                              VarKind::continuous, 0.0, inf};
        model.variables[lay.xpqd(i, j, mm)] = {idx3("xpqd", i, j, mm),
                                               VarKind::binary, 0.0, 1.0};
      }
    }
  }

  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t mm = 0; mm < m; ++mm) {
      model.objective.emplace_back(lay.zp(i, mm), 1.0);
    }
  }
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      for (std::size_t mm = 0; mm < m; ++mm) {
        model.objective.emplace_back(lay.zpq(i, j, mm), 1.0);
      }
    }
  }

  // Movement block: zp >= p*xp - pl and zp <= p*xp. Together with zp >= 0
  // this makes zp the positive part of the movement of a used p.
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t mm = 0; mm < m; ++mm) {
      const double pv = p_pts[i][mm];
      MipConstraint lb{idx2("zp_lb", i, mm), {}, Sense::ge, 0.0};
      push_term(lb, lay.zp(i, mm), 1.0);
      push_term(lb, lay.xp(i), -pv);
      push_term(lb, lay.pl(i, mm), 1.0);
      model.constraints.push_back(std::move(lb));

      MipConstraint ub{idx2("zp_ub", i, mm), {}, Sense::le, 0.0};
      push_term(ub, lay.zp(i, mm), 1.0);
      push_term(ub, lay.xp(i), -pv);
      model.constraints.push_back(std::move(ub));
    }
  }

  // Shortfall block: for covered pairs zpq = max(0, pl - q), linearized with
  // the selector xpqd. The slack coefficient is big_m - (lbp - q), which is
  // nonnegative and large enough on both sides.
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      for (std::size_t mm = 0; mm < m; ++mm) {
        const double pv = p_pts[i][mm];
        const double qv = q_pts[j][mm];
        const double big = model.meta.big_m[(i * nq + j) * m + mm];
        const double slack = big - (model.meta.lbp[i * m + mm] - qv);

        MipConstraint lb{idx3("zpq_lb", i, j, mm), {}, Sense::ge, -(pv + qv)};
        push_term(lb, lay.zpq(i, j, mm), 1.0);
        push_term(lb, lay.pl(i, mm), -1.0);
        push_term(lb, lay.xpq(i, j), -pv);
        model.constraints.push_back(std::move(lb));

        MipConstraint ub1{idx3("zpq_ub1", i, j, mm), {}, Sense::le,
                          slack - qv};
        push_term(ub1, lay.zpq(i, j, mm), 1.0);
        push_term(ub1, lay.pl(i, mm), -1.0);
        push_term(ub1, lay.xpqd(i, j, mm), slack);
        model.constraints.push_back(std::move(ub1));

        MipConstraint ub2{idx3("zpq_ub2", i, j, mm), {}, Sense::le, 0.0};
        push_term(ub2, lay.zpq(i, j, mm), 1.0);
        push_term(ub2, lay.xpqd(i, j, mm), -big);
        model.constraints.push_back(std::move(ub2));
      }
    }
  }

  // Linking: xp_i is set iff p_i covers at least one q.
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      MipConstraint row{idx2("link_xp", i, j), {}, Sense::ge, 0.0};
      push_term(row, lay.xp(i), 1.0);
      push_term(row, lay.xpq(i, j), -1.0);
      model.constraints.push_back(std::move(row));
    }
  }
  for (std::size_t i = 0; i < np; ++i) {
    MipConstraint row{"link_xpsum_" + std::to_string(i), {}, Sense::le, 0.0};
    push_term(row, lay.xp(i), 1.0);
    for (std::size_t j = 0; j < nq; ++j) push_term(row, lay.xpq(i, j), -1.0);
    model.constraints.push_back(std::move(row));
  }
  // Every q is covered exactly once.
  for (std::size_t j = 0; j < nq; ++j) {
    MipConstraint row{"assign_" + std::to_string(j), {}, Sense::eq, 1.0};
    for (std::size_t i = 0; i < np; ++i) push_term(row, lay.xpq(i, j), 1.0);
    model.constraints.push_back(std::move(row));
  }

  return model;
}

}  // namespace domove
