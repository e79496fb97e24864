#include "domove/biobjective.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace domove {

namespace {

struct Node {
  Point pt;
  bool is_p = false;
  bool alive = true;
  std::size_t orig = 0;                // P nodes: original p index
  std::vector<std::size_t> members;    // Q nodes: original q indices
};

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

Point componentwise_min(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) r[m] = std::min(a[m], b[m]);
  return r;
}

}  // namespace

std::size_t inward_neighbor(const Point& q, const PointSet& r_union) {
  if (q.size() != 2 || r_union.dim() != 2) {
    throw std::invalid_argument("inward_neighbor: biobjective (M = 2) only");
  }
  bool present = false;
  bool found = false;
  std::size_t best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r_union.size(); ++i) {
    if (r_union[i] == q) {
      present = true;
      continue;
    }
    const double c = single_move_cost(r_union[i], q);
    if (c < best_cost) {
      best_cost = c;
      best = i;
      found = true;
    }
  }
  if (!present) {
    throw std::invalid_argument("inward_neighbor: q not in r_union");
  }
  if (!found) {
    throw std::invalid_argument("inward_neighbor: degenerate instance");
  }
  return best;
}

DomCertificate dom_biobjective(const PointSet& p, const PointSet& q) {
  if (p.dim() != 2 || (!q.empty() && q.dim() != 2)) {
    throw std::invalid_argument("dom_biobjective: biobjective (M = 2) only");
  }
  if (p.empty()) {
    throw std::invalid_argument("dom_biobjective: empty dominating set");
  }

  ReducedInstance red = reduce_instance(p, q);
  const std::size_t nq = red.q_set.size();
  if (nq == 0) {
    return evaluate_assignment(p, q, complete_assignment(p, q, red, {}));
  }

  std::vector<Node> nodes;
  nodes.reserve(red.p_set.size() + nq);
  for (std::size_t i = 0; i < red.p_set.size(); ++i) {
    Node n;
    n.pt = red.p_set[i];
    n.is_p = true;
    n.orig = red.p_kept[i];
    nodes.push_back(std::move(n));
  }
  for (std::size_t j = 0; j < nq; ++j) {
    Node n;
    n.pt = red.q_set[j];
    n.members = {red.q_kept[j]};
    nodes.push_back(std::move(n));
  }

  std::vector<std::size_t> neigh(nodes.size(), 0);
  for (std::size_t round = 0; round <= nq + 1; ++round) {
    if (round > nq) {
      throw std::logic_error("dom_biobjective: grouping failed to converge");
    }
    // Inward neighbor of every live group, over the whole working set.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].alive || nodes[i].is_p) continue;
      double best_cost = std::numeric_limits<double>::infinity();
      std::size_t best = nodes.size();
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (j == i || !nodes[j].alive) continue;
        const double c = single_move_cost(nodes[j].pt, nodes[i].pt);
        if (c < best_cost) {
          best_cost = c;
          best = j;
        }
      }
      if (best == nodes.size()) {
        throw std::invalid_argument("dom_biobjective: degenerate instance");
      }
      neigh[i] = best;
    }

    // Loops in the pointer graph (mutual neighbors in the regular case)
    // collapse into their ideal point. Colors: 0 new, 1 on path, 2 done.
    std::vector<int> color(nodes.size(), 0);
    bool collapsed = false;
    for (std::size_t s = 0; s < nodes.size(); ++s) {
      if (!nodes[s].alive || nodes[s].is_p || color[s] != 0) continue;
      std::vector<std::size_t> path;
      std::size_t x = s;
      while (!nodes[x].is_p && color[x] == 0) {
        color[x] = 1;
        path.push_back(x);
        x = neigh[x];
      }
      if (!nodes[x].is_p && color[x] == 1) {
        // Found a cycle: the suffix of `path` starting at x.
        auto it = std::find(path.begin(), path.end(), x);
        std::vector<std::size_t> cycle(it, path.end());
        const std::size_t keep =
            *std::min_element(cycle.begin(), cycle.end());
        for (std::size_t c : cycle) {
          if (c == keep) continue;
          nodes[keep].pt = componentwise_min(nodes[keep].pt, nodes[c].pt);
          nodes[keep].members.insert(nodes[keep].members.end(),
                                     nodes[c].members.begin(),
                                     nodes[c].members.end());
          nodes[c].alive = false;
        }
        collapsed = true;
      }
      for (std::size_t v : path) color[v] = 2;
    }
    if (!collapsed) break;
  }

  // No loops remain: every chain ends at a P node. Merge chains into groups
  // and anchor each group at its terminal P point.
  Dsu dsu(nodes.size());
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> anchor(nodes.size(), kNone);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].alive || nodes[i].is_p) continue;
    const std::size_t t = neigh[i];
    if (nodes[t].is_p) {
      const std::size_t r = dsu.find(i);
      if (anchor[r] != kNone && anchor[r] != t) {
        throw std::logic_error("dom_biobjective: conflicting anchors");
      }
      anchor[r] = t;
    } else {
      const std::size_t ra = dsu.find(i);
      const std::size_t rb = dsu.find(t);
      if (ra == rb) continue;
      const std::size_t a = anchor[ra] != kNone ? anchor[ra] : anchor[rb];
      if (anchor[ra] != kNone && anchor[rb] != kNone &&
          anchor[ra] != anchor[rb]) {
        throw std::logic_error("dom_biobjective: conflicting anchors");
      }
      dsu.unite(ra, rb);
      anchor[dsu.find(ra)] = a;
    }
  }

  std::vector<std::size_t> full(q.size(), kNone);
  std::vector<std::size_t> red_assign(nq, kNone);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].alive || nodes[i].is_p) continue;
    const std::size_t a = anchor[dsu.find(i)];
    if (a == kNone) {
      throw std::logic_error("dom_biobjective: group without anchor");
    }
    for (std::size_t orig_q : nodes[i].members) full[orig_q] = nodes[a].orig;
  }
  for (std::size_t jr = 0; jr < nq; ++jr) {
    red_assign[jr] = full[red.q_kept[jr]];
  }
  // Map anchors back through the reduction for the dropped points.
  std::vector<std::size_t> red_idx(nq);
  for (std::size_t jr = 0; jr < nq; ++jr) {
    // complete_assignment expects indices into red.p_set.
    const std::size_t orig_p = red_assign[jr];
    const auto it =
        std::find(red.p_kept.begin(), red.p_kept.end(), orig_p);
    red_idx[jr] = static_cast<std::size_t>(it - red.p_kept.begin());
  }
  return evaluate_assignment(p, q, complete_assignment(p, q, red, red_idx));
}

}  // namespace domove
