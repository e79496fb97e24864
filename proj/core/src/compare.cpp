#include "domove/compare.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "domove/biobjective.hpp"

namespace domove {

namespace {

PairOutcome identity_outcome(const PointSet& s) {
  std::vector<std::size_t> ident(s.size());
  std::iota(ident.begin(), ident.end(), std::size_t{0});
  PairOutcome out;
  out.certificate = evaluate_assignment(s, s, ident);
  return out;
}

}  // namespace

ComparisonMatrix compare_matrix(const std::vector<PointSet>& sets,
                                const RunConfig& cfg) {
  if (sets.size() < 2) {
    throw std::invalid_argument("compare_matrix: need at least two sets");
  }
  const std::size_t dim = sets[0].dim();
  std::unordered_set<std::string> seen;
  for (const PointSet& s : sets) {
    if (s.dim() != dim) {
      throw std::invalid_argument(
          "compare_matrix: set '" + s.label() + "' has dimension " +
          std::to_string(s.dim()) + ", expected " + std::to_string(dim));
    }
    if (!seen.insert(s.label()).second) {
      throw std::invalid_argument("compare_matrix: duplicate set label '" +
                                  s.label() + "'");
    }
  }

  const std::size_t n = sets.size();
  ComparisonMatrix mat;
  mat.labels.reserve(n);
  for (const PointSet& s : sets) mat.labels.push_back(s.label());
  mat.cells.resize(n);
  for (std::size_t i = 0; i < n; ++i) mat.cells[i].resize(n);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    mat.cells[i][i] = identity_outcome(sets[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) pairs.emplace_back(i, j);
    }
  }

  const bool crosscheck = cfg.crosscheck_biobjective && dim == 2;
  auto solve_pair = [&](std::size_t i, std::size_t j) {
    SolveResult r = solve_bb(sets[i], sets[j], cfg.solve);
    if (crosscheck && r.optimal) {
      const DomCertificate direct = dom_biobjective(sets[i], sets[j]);
      if (std::abs(direct.value - r.certificate.value) > 1e-9) {
        throw std::logic_error(
            "compare_matrix: biobjective cross-check failed for pair '" +
            sets[i].label() + "' vs '" + sets[j].label() + "'");
      }
    }
    mat.cells[i][j] = PairOutcome{std::move(r.certificate), r.stats,
                                  r.optimal};
  };

  const unsigned jobs =
      std::max(1u, std::min<unsigned>(cfg.jobs,
                                      static_cast<unsigned>(pairs.size())));
  if (jobs == 1) {
    for (const auto& [i, j] : pairs) solve_pair(i, j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= pairs.size()) break;
            solve_pair(pairs[k].first, pairs[k].second);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : workers) t.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return mat;
}

std::vector<RankEntry> rank_summary(const ComparisonMatrix& m) {
  std::vector<RankEntry> out;
  out.reserve(m.labels.size());
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    RankEntry e{i, m.labels[i], 0.0, true};
    for (std::size_t j = 0; j < m.labels.size(); ++j) {
      e.total += m.cells[i][j].certificate.value;
      e.all_proven = e.all_proven && m.cells[i][j].optimal;
    }
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankEntry& a, const RankEntry& b) {
                     return a.total < b.total;
                   });
  return out;
}

}  // namespace domove
