#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "rapnc/io.hpp"
#include "rapnc/mda.hpp"
#include "rapnc/reductions.hpp"
#include "rapnc/svorex.hpp"

using namespace rapnc;

namespace {

NestedInstance quad_fixture() {
  return NestedInstance::make({1, 2}, {0, 4}, {1, 4}, {0, 0}, {4, 4},
                              ObjectiveSpec::quadratic({1, 1}, {0, 0}));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  std::string path;
  TempDir() {
    char tmpl[] = "/tmp/rapnc_cli_test_XXXXXX";
    path = mkdtemp(tmpl);
  }
  std::string file(const std::string& name) const { return path + "/" + name; }
};

// Runs the CLI, captures stdout/stderr to files, returns the exit code.
int run_cli(const TempDir& dir, const std::string& args) {
  const std::string cmd = std::string(RAPNC_CLI_PATH) + " " + args + " > " +
                          dir.file("stdout.txt") + " 2> " +
                          dir.file("stderr.txt");
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("instance documents round-trip through JSON") {
  InstanceDoc doc;
  doc.instance = quad_fixture();
  doc.mode = Mode::kInteger;
  std::stringstream buf;
  write_instance(buf, doc);
  const InstanceDoc back = read_instance(buf);
  CHECK(back.instance.n == 2);
  CHECK(back.instance.m == 2);
  CHECK(back.instance.sigma == doc.instance.sigma);
  CHECK(back.instance.a == doc.instance.a);
  CHECK(back.instance.b == doc.instance.b);
  CHECK(back.instance.c == doc.instance.c);
  CHECK(back.instance.d == doc.instance.d);
  CHECK(back.instance.objective.kind == ObjectiveKind::kQuadratic);
  CHECK(back.instance.objective.w == doc.instance.objective.w);
  CHECK(back.mode == Mode::kInteger);
}

TEST_CASE("integer-mode documents reject fractional bounds") {
  InstanceDoc doc;
  doc.instance = quad_fixture();
  doc.instance.c[0] = 0.5;
  doc.mode = Mode::kInteger;
  std::stringstream buf;
  write_instance(buf, doc);
  CHECK_THROWS_AS(read_instance(buf), DomainError);
}

TEST_CASE("generic custom objectives have no file representation") {
  ObjectiveSpec obj;
  obj.kind = ObjectiveKind::kCustom;
  obj.custom_eval = {[](double x) { return x * x; }};
  InstanceDoc doc;
  doc.instance = NestedInstance::make({1}, {1}, {1}, {0}, {2}, std::move(obj));
  std::stringstream buf;
  CHECK_THROWS_AS(write_instance(buf, doc), DomainError);
}

TEST_CASE("speed objectives round-trip under their tag") {
  SpeedOptInstance so;
  so.n = 2;
  so.leg_length = {10, 20};
  so.window_lo = {0, 5};
  so.window_hi = {4, 9};
  so.v_max = 10;
  so.fuel_price = {1, 2};
  so.v_opt = {5, 0};
  InstanceDoc doc;
  doc.instance = speed_opt_to_rapnc(so);
  std::stringstream buf;
  write_instance(buf, doc);
  const InstanceDoc back = read_instance(buf);
  CHECK(back.instance.objective.kind == ObjectiveKind::kCustom);
  CHECK(back.instance.objective.custom_tag == "speed");
  for (double x : {1.0, 2.0, 3.0}) {
    for (int i = 0; i < 3; ++i) {
      CHECK(back.instance.objective.value(i, x) ==
            doctest::Approx(doc.instance.objective.value(i, x)));
    }
  }
}

TEST_CASE("allocations round-trip") {
  Allocation alloc;
  alloc.x = {1.0, 3.0};
  alloc.objective_value = 10.0;
  alloc.mode = Mode::kInteger;
  std::stringstream buf;
  write_allocation(buf, alloc);
  const Allocation back = read_allocation(buf);
  CHECK(back.x == alloc.x);
  CHECK(back.objective_value == alloc.objective_value);
  CHECK(back.mode == Mode::kInteger);
}

TEST_CASE("cli solve prints the fixture solution and exits 0") {
  TempDir dir;
  InstanceDoc doc;
  doc.instance = quad_fixture();
  doc.mode = Mode::kInteger;
  write_instance_file(dir.file("ins.json"), doc);
  const int code = run_cli(
      dir, "solve " + dir.file("ins.json") + " --out " + dir.file("out.json"));
  CHECK(code == 0);
  const std::string out = slurp(dir.file("stdout.txt"));
  CHECK(out.find("x = [1, 3]") != std::string::npos);
  CHECK(out.find("objective = 10") != std::string::npos);
  CHECK(out.find("rap_solves") != std::string::npos);
  // The written allocation re-parses and is feasible for the instance.
  const Allocation alloc = read_allocation_file(dir.file("out.json"));
  CHECK(check_feasibility(doc.instance, alloc.x).all_zero());
}

TEST_CASE("cli solve on an infeasible instance exits 1 with a witness") {
  TempDir dir;
  InstanceDoc doc;
  doc.instance = NestedInstance::make({1}, {6}, {6}, {0}, {5},
                                      ObjectiveSpec::linear({1}));
  write_instance_file(dir.file("bad.json"), doc);
  const int code = run_cli(dir, "solve " + dir.file("bad.json"));
  CHECK(code == 1);
  const std::string err = slurp(dir.file("stderr.txt"));
  CHECK(err.find("infeasible") != std::string::npos);
  CHECK(err.find("witness") != std::string::npos);
}

TEST_CASE("cli usage errors exit 2") {
  TempDir dir;
  CHECK(run_cli(dir, "solve") == 2);                 // missing argument
  CHECK(run_cli(dir, "frobnicate") == 2);            // unknown subcommand
  CHECK(run_cli(dir, "gen --n 5 --family bogus") == 2);
  CHECK(run_cli(dir, "solve /no/such/file.json") == 2);
}

TEST_CASE("cli gen is deterministic and produces loadable instances") {
  TempDir dir;
  CHECK(run_cli(dir, "gen --n 100 --m 100 --seed 7 --out " +
                         dir.file("a.json")) == 0);
  CHECK(run_cli(dir, "gen --n 100 --m 100 --seed 7 --out " +
                         dir.file("b.json")) == 0);
  CHECK(slurp(dir.file("a.json")) == slurp(dir.file("b.json")));
  const InstanceDoc doc = read_instance_file(dir.file("a.json"));
  CHECK(doc.instance.n == 100);
  CHECK(validate(doc.instance, Mode::kContinuous).ok);
  // gen output feeds straight back into solve.
  CHECK(run_cli(dir, "solve " + dir.file("a.json")) == 0);
}

TEST_CASE("cli oracle solves small integer instances") {
  TempDir dir;
  InstanceDoc doc;
  doc.instance = quad_fixture();
  doc.mode = Mode::kInteger;
  write_instance_file(dir.file("ins.json"), doc);
  CHECK(run_cli(dir, "oracle " + dir.file("ins.json")) == 0);
  const std::string out = slurp(dir.file("stdout.txt"));
  CHECK(out.find("objective = 10") != std::string::npos);
}

TEST_CASE("cli reduce converts both application models") {
  TempDir dir;
  {
    std::ofstream f(dir.file("ls.json"));
    f << R"({"n":2,"demand":[1,1],"initial_inventory":0,
            "inventory_cap":[1,1],"production_cap":[2,2],
            "holding_cost":[0,0],
            "production_cost":{"kind":"linear","p":[1,2]}})";
  }
  CHECK(run_cli(dir, "reduce --kind lotsizing --in " + dir.file("ls.json") +
                         " --out " + dir.file("ls_ins.json")) == 0);
  const InstanceDoc ls = read_instance_file(dir.file("ls_ins.json"));
  CHECK(ls.instance.n == 3);
  CHECK(run_cli(dir, "solve " + dir.file("ls_ins.json")) == 0);

  {
    std::ofstream f(dir.file("so.json"));
    f << R"({"n":1,"leg_length":[10],"window_lo":[2],"window_hi":[3],
            "v_max":10,"fuel_price":[1],"v_opt":[0]})";
  }
  CHECK(run_cli(dir, "reduce --kind speed --in " + dir.file("so.json") +
                         " --out " + dir.file("so_ins.json")) == 0);
  const InstanceDoc so = read_instance_file(dir.file("so_ins.json"));
  CHECK(so.instance.objective.custom_tag == "speed");
  CHECK(run_cli(dir, "solve " + dir.file("so_ins.json")) == 0);
}

TEST_CASE("cli bench emits the documented CSV") {
  TempDir dir;
  CHECK(run_cli(dir, "bench --sizes 50,100 --families linear,crash "
                     "--repeats 1 --csv " +
                         dir.file("bench.csv")) == 0);
  const std::string csv = slurp(dir.file("bench.csv"));
  CHECK(csv.substr(0, csv.find('\n')) ==
        "n,m,family,seed,mode,time_seconds,objective,rap_solves,shortcut_hits");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("cli svorex training and prediction round-trip") {
  TempDir dir;
  const OrdinalDataset data = make_synthetic_ordinal(40, 1, 3, 0.1, 5);
  write_ordinal_dataset_file(dir.file("train.txt"), data);
  CHECK(run_cli(dir, "svorex-train --data " + dir.file("train.txt") +
                         " --out " + dir.file("model.json")) == 0);
  CHECK(run_cli(dir, "svorex-predict --model " + dir.file("model.json") +
                         " --data " + dir.file("train.txt") + " --out " +
                         dir.file("pred.txt")) == 0);
  std::ifstream pred(dir.file("pred.txt"));
  int cls, count = 0;
  while (pred >> cls) {
    CHECK(cls >= 1);
    CHECK(cls <= 3);
    ++count;
  }
  CHECK(count == 40);
}
