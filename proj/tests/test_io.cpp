#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "domove/compare.hpp"
#include "domove/csv.hpp"
#include "domove/solver.hpp"
#include "helpers.hpp"

using namespace domove;
namespace fs = std::filesystem;

namespace {

// --------------------------------------------------------------------------
// CSV

TEST_CASE("csv parsing reads the worked example set") {
  const PointSet p = parse_pointset_csv(
      "f1,f2,f3\n2.0,2.0,2.0\n2.0,2.2,1.5\n3.0,1.6,1.6\n", "P");
  CHECK(p.points() == testutil::worked_p().points());
  CHECK(p.label() == "P");
}

TEST_CASE("csv parsing tolerates layout noise") {
  const PointSet p = parse_pointset_csv(
      "\r\n 1.0 , 2.0 \r\n\n3,4\n+5,6e-1", "S");
  REQUIRE(p.size() == 3);
  CHECK(p[0] == Point{1.0, 2.0});
  CHECK(p[1] == Point{3.0, 4.0});
  CHECK(p[2] == Point{5.0, 0.6});
}

TEST_CASE("csv parsing reports malformed rows by number") {
  CHECK_THROWS_WITH_AS(parse_pointset_csv("", "S"), "empty set",
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_pointset_csv("f1,f2\n", "S"), "empty set",
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_pointset_csv("1,2\n3\n", "S"),
                       "row 2: expected 2 columns, got 1",
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_pointset_csv("1,2\n1,x\n", "S"),
                       "row 2: invalid number 'x'", std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_pointset_csv("1,2\n1,inf\n", "S"),
                       "row 2: non-finite value", std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_pointset_csv("a,b\nc,d\n", "S"),
                       "row 2: invalid number 'c'", std::runtime_error);
}

TEST_CASE("csv serialization round-trips exactly") {
  std::mt19937 rng(6001);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::vector<Point> pts(1000, Point(4));
  for (Point& p : pts) {
    for (double& v : p) v = u(rng);
  }
  const PointSet s("fuzz", 4, std::move(pts));
  const PointSet back = parse_pointset_csv(pointset_to_csv(s), "fuzz");
  CHECK(back.points() == s.points());
}

TEST_CASE("reading a missing file names the path") {
  CHECK_THROWS_WITH_AS(read_pointset_csv("/nonexistent/nope.csv"),
                       "/nonexistent/nope.csv: cannot open file",
                       std::runtime_error);
}

// --------------------------------------------------------------------------
// Comparison matrix

TEST_CASE("comparison matrix has a zero diagonal and solver-exact entries") {
  std::mt19937 rng(6002);
  std::vector<PointSet> sets;
  sets.push_back(testutil::random_set("a", 4, 3, rng));
  sets.push_back(testutil::random_set("b", 5, 3, rng));
  sets.push_back(testutil::random_set("c", 3, 3, rng));
  const ComparisonMatrix mat = compare_matrix(sets);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(mat.value(i, i) == 0.0);
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      const SolveResult direct = solve_bb(sets[i], sets[j]);
      CHECK(mat.value(i, j) ==
            doctest::Approx(direct.certificate.value).epsilon(1e-12));
      CHECK(mat.cells[i][j].optimal);
      CHECK(verify_certificate(sets[i], sets[j],
                               mat.cells[i][j].certificate));
    }
  }
}

TEST_CASE("a dominating set scores zero against the dominated one") {
  const std::vector<PointSet> sets{
      PointSet("winner", 2, {{0.0, 0.0}}),
      PointSet("loser", 2, {{1.0, 1.0}, {2.0, 0.5}})};
  const ComparisonMatrix mat = compare_matrix(sets);
  CHECK(mat.value(0, 1) == 0.0);
  CHECK(mat.value(1, 0) > 0.0);
  const std::vector<RankEntry> rank = rank_summary(mat);
  CHECK(rank[0].label == "winner");
}

TEST_CASE("parallel and serial comparison agree") {
  std::mt19937 rng(6003);
  std::vector<PointSet> sets;
  for (int k = 0; k < 4; ++k) {
    sets.push_back(
        testutil::random_set("s" + std::to_string(k), 6, 2, rng));
  }
  RunConfig serial;
  RunConfig parallel;
  parallel.jobs = 4;
  parallel.crosscheck_biobjective = true;  // also exercises the cross-check
  const ComparisonMatrix a = compare_matrix(sets, serial);
  const ComparisonMatrix b = compare_matrix(sets, parallel);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < sets.size(); ++j) {
      CHECK(a.value(i, j) == b.value(i, j));
      CHECK(a.cells[i][j].certificate.assignment ==
            b.cells[i][j].certificate.assignment);
      CHECK(a.cells[i][j].stats.nodes_explored ==
            b.cells[i][j].stats.nodes_explored);
    }
  }
}

TEST_CASE("comparison rejects malformed families") {
  const PointSet a("a", 2, {{1.0, 1.0}});
  CHECK_THROWS_AS(compare_matrix({a}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      compare_matrix({a, PointSet("b", 3, {{1.0, 1.0, 1.0}})}),
      "compare_matrix: set 'b' has dimension 3, expected 2",
      std::invalid_argument);
  CHECK_THROWS_WITH_AS(compare_matrix({a, PointSet("a", 2, {{2.0, 2.0}})}),
                       "compare_matrix: duplicate set label 'a'",
                       std::invalid_argument);
}

TEST_CASE("ranking sorts ascending totals and keeps ties stable") {
  auto cell = [](double v) {
    PairOutcome o;
    o.certificate.value = v;
    return o;
  };
  ComparisonMatrix mat;
  mat.labels = {"first", "second"};
  mat.cells = {{cell(0.0), cell(2.424)}, {cell(4.175), cell(0.0)}};
  const std::vector<RankEntry> rank = rank_summary(mat);
  REQUIRE(rank.size() == 2);
  CHECK(rank[0].label == "first");
  CHECK(rank[0].total == doctest::Approx(2.424));
  CHECK(rank[1].label == "second");
  CHECK(rank[1].total == doctest::Approx(4.175));

  ComparisonMatrix zeros;
  zeros.labels = {"x", "y", "z"};
  zeros.cells.assign(3, std::vector<PairOutcome>(3));
  const std::vector<RankEntry> tied = rank_summary(zeros);
  CHECK(tied[0].label == "x");
  CHECK(tied[1].label == "y");
  CHECK(tied[2].label == "z");

  std::mt19937 rng(6004);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  ComparisonMatrix randomized;
  randomized.labels = {"a", "b", "c", "d"};
  randomized.cells.assign(4, std::vector<PairOutcome>(4));
  std::vector<double> sums(4, 0.0);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      randomized.cells[i][j] = cell(u(rng));
      sums[i] += randomized.value(i, j);
    }
  }
  const std::vector<RankEntry> order = rank_summary(randomized);
  for (std::size_t k = 1; k < order.size(); ++k) {
    CHECK(order[k - 1].total <= order[k].total + 1e-12);
  }
  for (const RankEntry& e : order) {
    CHECK(e.total == doctest::Approx(sums[e.index]).epsilon(1e-12));
  }
}

TEST_CASE("unproven cells flag the ranking row") {
  PairOutcome capped;
  capped.certificate.value = 1.0;
  capped.optimal = false;
  ComparisonMatrix mat;
  mat.labels = {"a", "b"};
  mat.cells = {{PairOutcome{}, capped}, {PairOutcome{}, PairOutcome{}}};
  const std::vector<RankEntry> rank = rank_summary(mat);
  CHECK(rank[0].all_proven);       // row b is fully proven
  CHECK(rank[0].label == "b");
  CHECK_FALSE(rank[1].all_proven);
}

// --------------------------------------------------------------------------
// Command line

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class CliFixture {
 public:
  CliFixture() {
    dir_ = fs::temp_directory_path() /
           ("domove-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    write("P.csv", pointset_to_csv(testutil::worked_p()));
    write("Q.csv", pointset_to_csv(testutil::worked_q()));
    write("neg.csv", "f1,f2,f3\n-1.0,2.0,2.0\n");
    write("front.csv", "f1,f2\n0.0,0.5\n0.5,0.0\n");
    write("mixed.csv", "f1,f2\n1.0,1.0\n2.0,2.0\n0.0,3.0\n1.0,1.0\n");
    // An instance the search cannot close at the root: the greedy incumbent
    // is 3 while the optimum is 2, so a node cap of 1 stops before proof.
    write("hardP.csv",
          "f1,f2,f3\n6,0,7\n9,3,1\n5,6,9\n4,9,0\n1,0,2\n");
    write("hardQ.csv",
          "f1,f2,f3\n2,0,1\n4,7,0\n1,5,4\n7,2,3\n3,7,5\n");
  }
  ~CliFixture() { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream out(dir_ / name, std::ios::binary);
    out << content;
  }

  CliRun run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string(DOMOVE_CLI_PATH) + " " + args +
                            " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return CliRun{code, slurp(out), slurp(err)};
  }

  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

 private:
  fs::path dir_;
};

TEST_CASE("cli dom prints the worked-example certificate as json") {
  const CliFixture cli;
  const CliRun r = cli.run("dom " + cli.path("P.csv") + " " +
                           cli.path("Q.csv"));
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>() - 1.5) <= 1e-9);
  CHECK(j["optimal"].get<bool>());
  CHECK(j["p"] == "P");
  CHECK(j["assignment"].size() == 3);

  // The printed certificate verifies independently.
  DomCertificate cert;
  cert.value = j["value"].get<double>();
  cert.assignment.resize(3);
  for (const auto& [k, v] : j["assignment"].items()) {
    cert.assignment[std::stoul(k)] = v.get<std::size_t>();
  }
  for (const auto& [k, v] : j["moved_points"].items()) {
    cert.moved_points[std::stoul(k)] = v.get<Point>();
  }
  for (const auto& [k, v] : j["per_group_cost"].items()) {
    cert.per_group_cost[std::stoul(k)] = v.get<double>();
  }
  CHECK(verify_certificate(testutil::worked_p(), testutil::worked_q(), cert));
}

TEST_CASE("cli exit codes distinguish usage, data, and cap failures") {
  const CliFixture cli;
  CHECK(cli.run("compare " + cli.path("P.csv")).exit_code == 1);
  CHECK(cli.run("frobnicate").exit_code == 1);
  CHECK(cli.run("dom " + cli.path("P.csv") + " /missing.csv").exit_code == 2);
  CHECK(cli.run("dom " + cli.path("P.csv") + " " + cli.path("front.csv"))
            .exit_code == 2);  // dimension mismatch
  const CliRun capped = cli.run("dom " + cli.path("hardP.csv") + " " +
                                cli.path("hardQ.csv") + " --node-cap 1");
  CHECK(capped.exit_code == 3);
  const nlohmann::json j = nlohmann::json::parse(capped.out);
  CHECK_FALSE(j["optimal"].get<bool>());
  // The incumbent is still a valid upper bound, above the true optimum 2.
  CHECK(j["value"].get<double>() >= 2.0);
}

TEST_CASE("cli filter is idempotent") {
  const CliFixture cli;
  REQUIRE(cli.run("filter " + cli.path("mixed.csv") + " -o " +
                  cli.path("f1.csv"))
              .exit_code == 0);
  REQUIRE(cli.run("filter " + cli.path("f1.csv") + " -o " +
                  cli.path("f2.csv"))
              .exit_code == 0);
  const std::string once = slurp(cli.path("f1.csv"));
  CHECK(once == slurp(cli.path("f2.csv")));
  CHECK(parse_pointset_csv(once, "f").size() == 2);
}

TEST_CASE("cli compare output is byte-deterministic") {
  const CliFixture cli;
  const std::string cmd = "compare " + cli.path("P.csv") + " " +
                          cli.path("Q.csv") + " --format json --jobs 4";
  const CliRun first = cli.run(cmd);
  const CliRun second = cli.run(cmd);
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
  const nlohmann::json j = nlohmann::json::parse(first.out);
  CHECK(std::abs(j["values"][0][1].get<double>() - 1.5) <= 1e-9);
  CHECK(j["values"][0][0].get<double>() == 0.0);
  CHECK(j["ranking"][0]["label"] == "Q");
}

TEST_CASE("cli auto-shifts negative inputs and reports original positions") {
  const CliFixture cli;
  cli.write("negp.csv", "f1,f2\n-1.0,0.0\n");
  cli.write("negq.csv", "f1,f2\n-2.0,-1.0\n");
  const CliRun r = cli.run("dom " + cli.path("negp.csv") + " " +
                           cli.path("negq.csv"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.find("translated") != std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(2.0));
  // Moved point reported in the original, unshifted coordinates.
  CHECK(j["moved_points"]["0"][0].get<double>() == doctest::Approx(-2.0));
  CHECK(j["moved_points"]["0"][1].get<double>() == doctest::Approx(-1.0));
}

TEST_CASE("cli export-mip refuses negatives unless shifted") {
  const CliFixture cli;
  CHECK(cli.run("export-mip " + cli.path("neg.csv") + " " +
                cli.path("Q.csv"))
            .exit_code == 2);
  const CliRun shifted = cli.run("export-mip " + cli.path("neg.csv") + " " +
                                 cli.path("Q.csv") + " --shift -o " +
                                 cli.path("model.lp"));
  CHECK(shifted.exit_code == 0);
  const std::string lp = slurp(cli.path("model.lp"));
  CHECK(lp.rfind("\\ dominance-move mip:", 0) == 0);
  CHECK(lp.find("End\n") != std::string::npos);
}

TEST_CASE("cli hv and igd consume references") {
  const CliFixture cli;
  const CliRun hv = cli.run("hv " + cli.path("front.csv") + " --ref 1,1");
  REQUIRE(hv.exit_code == 0);
  CHECK(hv.out == "front: 0.750\n");

  const CliRun hv_auto = cli.run("hv " + cli.path("front.csv") +
                                 " --auto-ref --format json");
  REQUIRE(hv_auto.exit_code == 0);
  const nlohmann::json hj = nlohmann::json::parse(hv_auto.out);
  CHECK(hj["ref"] == nlohmann::json::array({0.5, 0.5}));

  const CliRun both = cli.run("hv " + cli.path("front.csv") +
                              " --ref 1,1 --auto-ref");
  CHECK(both.exit_code == 1);

  const CliRun igd_self = cli.run("igd " + cli.path("front.csv") +
                                  " --ref " + cli.path("front.csv"));
  REQUIRE(igd_self.exit_code == 0);
  CHECK(igd_self.out == "front: 0.000\n");
}

TEST_CASE("cli stats emits a per-pair csv with wall time") {
  const CliFixture cli;
  const CliRun r = cli.run("stats " + cli.path("P.csv") + " " +
                           cli.path("Q.csv"));
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "p,q,np,nq,m,value,optimal,nodes_explored,incumbent_updates,pruned,"
        "wall_time_s");
  std::string row;
  int rows = 0;
  while (std::getline(lines, row)) {
    if (!row.empty()) ++rows;
  }
  CHECK(rows == 2);
  CHECK(r.out.find("P,Q,3,3,3,") != std::string::npos);
}

}  // namespace
