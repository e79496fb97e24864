#include "domove/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <utility>

namespace domove {

namespace {

constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

void check_instance(const PointSet& p, const PointSet& q, const char* who) {
  if (p.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty dominating set");
  }
  if (!q.empty() && p.dim() != q.dim()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                std::to_string(p.dim()) + " vs " +
                                std::to_string(q.dim()) + ")");
  }
}

// Canonical certificate for a full original-space assignment.
DomCertificate make_certificate(const PointSet& p, const PointSet& q,
                                std::vector<std::size_t> assignment) {
  DomCertificate cert;
  std::map<std::size_t, std::vector<Point>> groups;
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    groups[assignment[j]].push_back(q[j]);
  }
  double total = 0.0;
  for (auto& [i, g] : groups) {
    GroupMove gm = group_cost(p[i], g);
    total += gm.cost;
    cert.per_group_cost[i] = gm.cost;
    cert.moved_points[i] = std::move(gm.moved);
  }
  cert.value = total;
  cert.assignment = std::move(assignment);
  return cert;
}

ReducedInstance identity_instance(const PointSet& p, const PointSet& q) {
  std::vector<std::size_t> pk(p.size()), qk(q.size());
  for (std::size_t i = 0; i < pk.size(); ++i) pk[i] = i;
  for (std::size_t j = 0; j < qk.size(); ++j) qk[j] = j;
  return ReducedInstance{std::move(pk), std::move(qk), p,
                         PointSet(q.label(), q.empty() ? p.dim() : q.dim(),
                                  q.points())};
}

// Depth-first search state shared across recursion levels.
struct BbSearch {
  const std::vector<Point>& P;
  const std::vector<Point>& Q;
  std::size_t np, nq, m;
  std::vector<std::size_t> order;        // branch order over reduced Q
  std::vector<double> moved;             // np x m, current moved positions
  std::vector<double> partial;           // partial cost per depth
  std::vector<std::size_t> assign;       // by reduced q index
  std::vector<std::vector<std::pair<double, std::size_t>>> cand;

  double best_val = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_assign;

  SolveStats stats;
  bool aborted = false;
  std::uint64_t node_cap;
  double time_cap;
  std::chrono::steady_clock::time_point t0;

  BbSearch(const std::vector<Point>& p_pts, const std::vector<Point>& q_pts,
           const SolveOptions& opts)
      : P(p_pts),
        Q(q_pts),
        np(p_pts.size()),
        nq(q_pts.size()),
        m(p_pts.front().size()),
        partial(q_pts.size() + 1, 0.0),
        assign(q_pts.size(), kUnassigned),
        cand(q_pts.size()),
        node_cap(opts.node_cap),
        time_cap(opts.time_cap_seconds),
        t0(std::chrono::steady_clock::now()) {
    moved.reserve(np * m);
    for (const Point& pt : P) moved.insert(moved.end(), pt.begin(), pt.end());
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
  }

  double marginal(std::size_t i, std::size_t j) const {
    const double* mp = &moved[i * m];
    const Point& qq = Q[j];
    double d = 0.0;
    for (std::size_t mm = 0; mm < m; ++mm) {
      if (mp[mm] > qq[mm]) d += mp[mm] - qq[mm];
    }
    return d;
  }

  void dfs(std::size_t depth) {
    if (aborted) return;
    if (depth == nq) {
      // Reached only through strict bound improvements, so this is a new
      // incumbent.
      best_val = partial[depth];
      best_assign = assign;
      ++stats.incumbent_updates;
      return;
    }
    const std::size_t j = order[depth];
    auto& c = cand[depth];
    c.clear();
    for (std::size_t i = 0; i < np; ++i) c.emplace_back(marginal(i, j), i);
    std::stable_sort(c.begin(), c.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> saved(m);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double bound = partial[depth] + c[k].first;
      if (bound >= best_val) {
        stats.pruned += c.size() - k;
        return;
      }
      ++stats.nodes_explored;
      if (stats.nodes_explored >= node_cap) aborted = true;
      if ((stats.nodes_explored & 1023u) == 0 && elapsed() > time_cap) {
        aborted = true;
      }
      if (aborted) return;

      const std::size_t i = c[k].second;
      double* mp = &moved[i * m];
      std::copy(mp, mp + m, saved.begin());
      for (std::size_t mm = 0; mm < m; ++mm) {
        mp[mm] = std::min(mp[mm], Q[j][mm]);
      }
      partial[depth + 1] = bound;
      assign[j] = i;
      dfs(depth + 1);
      std::copy(saved.begin(), saved.end(), mp);
      assign[j] = kUnassigned;
      if (aborted) return;
    }
  }
};

}  // namespace

std::vector<std::size_t> complete_assignment(
    const PointSet& p, const PointSet& q, const ReducedInstance& red,
    const std::vector<std::size_t>& reduced_assignment) {
  std::vector<std::size_t> full(q.size(), kUnassigned);
  for (std::size_t jr = 0; jr < reduced_assignment.size(); ++jr) {
    full[red.q_kept[jr]] = red.p_kept[reduced_assignment[jr]];
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (full[j] != kUnassigned) continue;
    for (std::size_t ip : red.p_kept) {
      if (weakly_dominates(p[ip], q[j])) {
        full[j] = ip;
        break;
      }
    }
    if (full[j] != kUnassigned) continue;
    for (std::size_t jr = 0; jr < red.q_kept.size(); ++jr) {
      if (weakly_dominates(q[red.q_kept[jr]], q[j])) {
        full[j] = full[red.q_kept[jr]];
        break;
      }
    }
    if (full[j] == kUnassigned) {
      throw std::logic_error("complete_assignment: uncovered dropped point");
    }
  }
  return full;
}

DomCertificate evaluate_assignment(
    const PointSet& p, const PointSet& q,
    const std::vector<std::size_t>& assignment) {
  check_instance(p, q, "evaluate_assignment");
  if (assignment.size() != q.size()) {
    throw std::invalid_argument(
        "evaluate_assignment: assignment covers " +
        std::to_string(assignment.size()) + " points, expected " +
        std::to_string(q.size()));
  }
  for (std::size_t v : assignment) {
    if (v >= p.size()) {
      throw std::out_of_range("evaluate_assignment: p index out of range");
    }
  }
  return make_certificate(p, q, assignment);
}

DomCertificate solve_bruteforce(const PointSet& p, const PointSet& q,
                                const SolveOptions& opts,
                                std::uint64_t enumeration_cap) {
  check_instance(p, q, "solve_bruteforce");
  ReducedInstance red =
      opts.preprocess ? reduce_instance(p, q) : identity_instance(p, q);
  const std::size_t np = red.p_set.size();
  const std::size_t nq = red.q_set.size();
  if (nq == 0) {
    return make_certificate(p, q, complete_assignment(p, q, red, {}));
  }

  std::uint64_t combos = 1;
  for (std::size_t j = 0; j < nq; ++j) {
    if (combos > enumeration_cap / np) {
      throw std::runtime_error("solve_bruteforce: instance too large for oracle");
    }
    combos *= np;
  }

  const std::size_t m = red.p_set.dim();
  const auto& P = red.p_set.points();
  const auto& Q = red.q_set.points();

  std::vector<double> minv(np * m);
  std::vector<std::uint64_t> stamp(np, 0);
  std::vector<std::size_t> used;
  std::uint64_t iter = 0;

  std::vector<std::size_t> a(nq, 0);
  std::vector<std::size_t> best;
  double best_val = std::numeric_limits<double>::infinity();

  while (true) {
    ++iter;
    used.clear();
    for (std::size_t j = 0; j < nq; ++j) {
      const std::size_t i = a[j];
      double* mv = &minv[i * m];
      if (stamp[i] != iter) {
        stamp[i] = iter;
        std::copy(P[i].begin(), P[i].end(), mv);
        used.push_back(i);
      }
      for (std::size_t mm = 0; mm < m; ++mm) {
        mv[mm] = std::min(mv[mm], Q[j][mm]);
      }
    }
    double v = 0.0;
    for (std::size_t i : used) {
      const double* mv = &minv[i * m];
      for (std::size_t mm = 0; mm < m; ++mm) v += P[i][mm] - mv[mm];
    }
    if (v < best_val) {
      best_val = v;
      best = a;
    }
    // Odometer increment; the last index is least significant, so
    // assignments appear in lexicographic order.
    std::size_t j = nq;
    while (j > 0) {
      --j;
      if (++a[j] < np) break;
      a[j] = 0;
      if (j == 0) {
        return make_certificate(p, q, complete_assignment(p, q, red, best));
      }
    }
  }
}

SolveResult solve_bb(const PointSet& p, const PointSet& q,
                     const SolveOptions& opts) {
  check_instance(p, q, "solve_bb");
  ReducedInstance red =
      opts.preprocess ? reduce_instance(p, q) : identity_instance(p, q);
  const std::size_t np = red.p_set.size();
  const std::size_t nq = red.q_set.size();

  SolveResult result;
  if (nq == 0) {
    result.certificate = make_certificate(p, q, complete_assignment(p, q, red, {}));
    return result;
  }

  const auto& P = red.p_set.points();
  const auto& Q = red.q_set.points();
  BbSearch search(P, Q, opts);

  // Greedy seed: every q independently takes its cheapest p.
  std::vector<std::size_t> seed(nq);
  std::vector<double> cheapest(nq);
  for (std::size_t j = 0; j < nq; ++j) {
    double best_c = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < np; ++i) {
      const double c = single_move_cost(P[i], Q[j]);
      if (c < best_c) {
        best_c = c;
        best_i = i;
      }
    }
    seed[j] = best_i;
    cheapest[j] = best_c;
  }
  {
    std::map<std::size_t, std::vector<Point>> groups;
    for (std::size_t j = 0; j < nq; ++j) groups[seed[j]].push_back(Q[j]);
    double v = 0.0;
    for (auto& [i, g] : groups) v += group_cost(P[i], g).cost;
    search.best_val = v;
    search.best_assign = seed;
  }

  // Branch hardest q first.
  search.order.resize(nq);
  for (std::size_t j = 0; j < nq; ++j) search.order[j] = j;
  std::stable_sort(search.order.begin(), search.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return cheapest[a] > cheapest[b];
                   });

  search.dfs(0);

  result.certificate =
      make_certificate(p, q, complete_assignment(p, q, red, search.best_assign));
  result.stats = search.stats;
  result.stats.wall_time_seconds = search.elapsed();
  result.optimal = !search.aborted;
  return result;
}

bool verify_certificate(const PointSet& p, const PointSet& q,
                        const DomCertificate& cert) {
  check_instance(p, q, "verify_certificate");
  if (cert.assignment.size() != q.size()) return false;
  for (std::size_t v : cert.assignment) {
    if (v >= p.size()) {
      throw std::out_of_range("verify_certificate: p index out of range");
    }
  }
  for (const auto& [i, pt] : cert.moved_points) {
    if (i >= p.size()) {
      throw std::out_of_range("verify_certificate: p index out of range");
    }
    if (pt.size() != p.dim()) return false;
  }

  std::map<std::size_t, std::vector<Point>> groups;
  for (std::size_t j = 0; j < q.size(); ++j) {
    groups[cert.assignment[j]].push_back(q[j]);
  }
  if (cert.moved_points.size() != groups.size()) return false;
  if (cert.per_group_cost.size() != groups.size()) return false;

  constexpr double kTol = 1e-9;
  double total = 0.0;
  double declared = 0.0;
  for (auto& [i, g] : groups) {
    auto mv = cert.moved_points.find(i);
    auto pc = cert.per_group_cost.find(i);
    if (mv == cert.moved_points.end() || pc == cert.per_group_cost.end()) {
      return false;
    }
    GroupMove gm = group_cost(p[i], g);
    if (mv->second != gm.moved) return false;
    for (const Point& qq : g) {
      if (!weakly_dominates(mv->second, qq)) return false;
    }
    if (std::abs(pc->second - gm.cost) > kTol) return false;
    total += gm.cost;
    declared += pc->second;
  }
  if (std::abs(cert.value - total) > kTol) return false;
  if (std::abs(cert.value - declared) > kTol) return false;
  return true;
}

}  // namespace domove
