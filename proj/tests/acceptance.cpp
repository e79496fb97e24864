// Acceptance gate for the toolkit. Each numbered criterion prints exactly
// one PASS/FAIL line (the facet suite also prints lettered sub-lines); the
// process exits non-zero if any criterion fails. All randomness is seeded,
// so the run is reproducible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "domove/biobjective.hpp"
#include "domove/indicators.hpp"
#include "domove/lp_format.hpp"
#include "domove/mip_model.hpp"
#include "domove/solver.hpp"
#include "helpers.hpp"

using namespace domove;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!ok) ++g_failures;
}

void report_sub(char letter, bool ok, const std::string& detail) {
  std::printf("  [%s] (%c) %s\n", ok ? "PASS" : "FAIL", letter,
              detail.c_str());
  if (!ok) ++g_failures;
}

constexpr double kTol = 1e-9;

bool close(double a, double b) { return std::abs(a - b) <= kTol; }

// ---------------------------------------------------------------------------

void criterion_worked_example() {
  const PointSet p = testutil::worked_p();
  const PointSet q = testutil::worked_q();
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<std::size_t> ident{0, 1, 2};
  const double identity_value = evaluate_assignment(p, q, ident).value;
  const DomCertificate bf = solve_bruteforce(p, q);
  const SolveResult bb = solve_bb(p, q);

  bool rejected_dim = false;
  try {
    dom_biobjective(p, q);
  } catch (const std::invalid_argument&) {
    rejected_dim = true;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const bool ok = close(bb.certificate.value, 1.5) && bb.optimal &&
                  close(bf.value, 1.5) && close(identity_value, 1.6) &&
                  verify_certificate(p, q, bb.certificate) &&
                  verify_certificate(p, q, bf) && rejected_dim &&
                  elapsed < 1.0;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "search %.10g, enumeration %.10g, identity grouping %.10g, "
                "%.3fs",
                bb.certificate.value, bf.value, identity_value, elapsed);
  report("worked-example", ok, detail);
}

void criterion_oracle_equivalence() {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  std::uniform_int_distribution<std::size_t> dims(2, 4);
  int bad = 0;
  const int trials = 200;
  double max_gap = 0.0;
  for (int t = 0; t < trials; ++t) {
    const PointSet p = testutil::random_set("P", size(rng), dims(rng), rng);
    const PointSet q = testutil::random_set("Q", size(rng), p.dim(), rng);
    const DomCertificate bf = solve_bruteforce(p, q);
    const SolveResult bb = solve_bb(p, q);
    max_gap = std::max(max_gap, std::abs(bf.value - bb.certificate.value));
    if (!close(bf.value, bb.certificate.value) || !bb.optimal ||
        !verify_certificate(p, q, bf) ||
        !verify_certificate(p, q, bb.certificate)) {
      ++bad;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%d instances, %d disagreements, largest gap %.3g", trials,
                bad, max_gap);
  report("search-equals-enumeration", bad == 0, detail);
}

void criterion_biobjective_equivalence() {
  std::mt19937 rng(12);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  int bad = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const PointSet p = testutil::random_set("P", size(rng), 2, rng);
    const PointSet q = testutil::random_set("Q", size(rng), 2, rng);
    const DomCertificate direct = dom_biobjective(p, q);
    const SolveResult bb = solve_bb(p, q);
    if (!close(direct.value, bb.certificate.value) ||
        !verify_certificate(p, q, direct)) {
      ++bad;
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "%d instances, %d disagreements",
                trials, bad);
  report("staircase-equals-search", bad == 0, detail);
}

void criterion_facets() {
  std::mt19937 rng(13);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  std::uniform_real_distribution<double> noise(0.1, 1.0);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  std::uniform_real_distribution<double> scale(0.1, 4.0);
  std::uniform_real_distribution<double> coord(0.0, 10.0);

  int bad_zero = 0, bad_mono = 0, bad_affine = 0, bad_reduce = 0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 2 + t % 3;
    const PointSet p = testutil::random_set("P", size(rng), m, rng);

    // (a) covered targets cost zero; the uncovered reverse costs more.
    std::vector<Point> worse = p.points();
    for (Point& x : worse) {
      for (double& v : x) v += noise(rng);
    }
    const PointSet q_dominated("Q", m, std::move(worse));
    if (solve_bb(p, q_dominated).certificate.value != 0.0) ++bad_zero;
    if (!(solve_bb(q_dominated, p).certificate.value > 0.0)) ++bad_zero;

    // (b) an extra mover never hurts.
    const PointSet q = testutil::random_set("Q", size(rng), m, rng);
    const double base = solve_bb(p, q).certificate.value;
    std::vector<Point> grown = p.points();
    Point extra(m);
    for (double& v : extra) v = coord(rng);
    grown.push_back(std::move(extra));
    if (solve_bb(PointSet("P2", m, std::move(grown)), q).certificate.value >
        base + kTol) {
      ++bad_mono;
    }

    // (c) translation invariance and positive-scale equivariance.
    Point delta(m);
    for (double& v : delta) v = shift(rng);
    const double factor = scale(rng);
    auto moved = [&](const PointSet& s, bool scaled) {
      std::vector<Point> pts = s.points();
      for (Point& x : pts) {
        for (std::size_t k = 0; k < m; ++k) {
          x[k] = scaled ? x[k] * factor : x[k] + delta[k];
        }
      }
      return PointSet(s.label(), m, std::move(pts));
    };
    if (!close(solve_bb(moved(p, false), moved(q, false)).certificate.value,
               base)) {
      ++bad_affine;
    }
    if (std::abs(solve_bb(moved(p, true), moved(q, true)).certificate.value -
                 base * factor) > kTol * std::max(1.0, factor)) {
      ++bad_affine;
    }

    // (d) the dominated-point reduction does not change the value.
    SolveOptions raw;
    raw.preprocess = false;
    if (!close(solve_bb(p, q, raw).certificate.value, base)) ++bad_reduce;
  }

  report_sub('a', bad_zero == 0,
             "dominating sets score 0, dominated ones above 0");
  report_sub('b', bad_mono == 0, "adding a mover never increases the value");
  report_sub('c', bad_affine == 0,
             "translation invariant, scales with positive factors");
  report_sub('d', bad_reduce == 0, "reduction preserves the value");
  report("facet-properties",
         bad_zero + bad_mono + bad_affine + bad_reduce == 0,
         "40 randomized rounds per property");
}

void criterion_model_structure() {
  std::mt19937 rng(14);
  std::uniform_int_distribution<std::size_t> size(1, 7);
  std::uniform_int_distribution<std::size_t> dims(1, 5);
  int bad = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = dims(rng);
    const std::size_t np = size(rng);
    const std::size_t nq = size(rng);
    const PointSet p = testutil::random_set("P", np, m, rng);
    const PointSet q = testutil::random_set("Q", nq, m, rng);
    const MipModel model = build_model(p, q, false);
    const std::size_t want_vars = 2 * np * m + 2 * np * nq * m + np + np * nq;
    const std::size_t want_rows =
        2 * np * m + 3 * np * nq * m + np * nq + np + nq;
    const std::string text = export_lp(model);
    const bool ok = model.variables.size() == want_vars &&
                    model.constraints.size() == want_rows &&
                    text == export_lp(build_model(p, q, false)) &&
                    parse_lp(text) == model &&
                    export_lp(parse_lp(text)) == text;
    if (!ok) ++bad;
  }
  report("model-structure", bad == 0,
         "20 random shapes: closed-form sizes, deterministic export, "
         "byte-exact round trip");
}

void criterion_indicators() {
  const PointSet corner("S", 2, {{0.0, 0.0}});
  const bool unit = close(hypervolume(corner, {1.0, 1.0}), 1.0);
  const PointSet two("S", 2, {{0.0, 0.5}, {0.5, 0.0}});
  const bool incl = close(hypervolume(two, {1.0, 1.0}), 0.75);
  const PointSet self = testutil::worked_p();
  const bool zero = igd(self, self) == 0.0;

  std::mt19937 rng(15);
  bool mc_ok = true;
  for (int t = 0; t < 3; ++t) {
    const PointSet s = testutil::random_set("S", 3 + t, 3, rng, 0.0, 1.0);
    const Point ref(3, 1.0);
    const double exact = hypervolume(s, ref);
    const testutil::McEstimate mc =
        testutil::mc_hypervolume(s, ref, 1'000'000, rng);
    if (std::abs(exact - mc.value) > 3.0 * mc.sigma + 1e-12) mc_ok = false;
  }
  report("indicators", unit && incl && zero && mc_ok,
         "unit square 1.0, staggered pair 0.75, self-igd 0, "
         "3 sigma against 1e6-sample Monte Carlo");
}

void criterion_desk_scale() {
  int proven = 0;
  double worst = 0.0;
  for (unsigned seed = 1; seed <= 20; ++seed) {
    std::mt19937 rng(seed);
    const PointSet p = testutil::random_set("P", 20, 10, rng);
    const PointSet q = testutil::random_set("Q", 20, 10, rng);
    const SolveResult r = solve_bb(p, q);
    if (r.optimal) ++proven;
    worst = std::max(worst, r.stats.wall_time_seconds);
  }

  // A cap hit must surface as incomplete, with the incumbent intact.
  std::mt19937 rng(99);
  const PointSet p = testutil::random_set("P", 20, 10, rng);
  const PointSet q = testutil::random_set("Q", 20, 10, rng);
  SolveOptions tight;
  tight.node_cap = 2;
  const SolveResult capped = solve_bb(p, q, tight);
  const bool cap_flagged =
      !capped.optimal && verify_certificate(p, q, capped.certificate);

  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%d/20 proven optimal within caps (worst %.3fs); capped run "
                "reported incomplete",
                proven, worst);
  report("desk-scale-performance", proven >= 18 && cap_flagged, detail);
}

}  // namespace

int main() {
  criterion_worked_example();
  criterion_oracle_equivalence();
  criterion_biobjective_equivalence();
  criterion_facets();
  criterion_model_structure();
  criterion_indicators();
  criterion_desk_scale();
  if (g_failures == 0) {
    std::printf("all acceptance criteria hold\n");
  } else {
    std::printf("%d acceptance check(s) failed\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
