#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "dhl/cli.hpp"
#include "dhl/error.hpp"
#include "dhl/gallery.hpp"
#include "dhl/io.hpp"

using namespace dhl;
using io::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("dhlab_test_" + name)).string();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("grid json round trip") {
    SplitMix64 rng(1);
    auto d = random_boundary(5, rng, "rational");
    auto u = solve_direct(d, DirectMode::ExactRational);
    auto back = io::grid_from_json(io::grid_to_json(u));
    CHECK(back == u);
    CHECK(io::grid_to_json(u)["values"][0].is_null());  // corner
    auto c = chelkak34(4);
    CHECK(io::grid_from_json(json::parse(io::grid_to_json(c).dump())) == c);
    auto U = to_sloped(c);
    CHECK(io::grid_from_json(io::grid_to_json(U)) == U);
  }

  TEST_CASE("boundary, lshape, seed and family round trips") {
    SplitMix64 rng(2);
    auto d = random_boundary(4, rng, "rational");
    auto d2 = io::boundary_from_json(io::boundary_to_json(d));
    CHECK(d2.values == d.values);
    auto l = LShapeData::from_function({1, 9, -3, 4}, ScalarKind::rational(), [&](SlopedCell) { return Scalar(rng.rational(-1, 1, 5)); });
    auto l2 = io::lshape_from_json(io::lshape_to_json(l));
    CHECK(l2.values == l.values);
    CHECK(l2.cells == l.cells);
    auto s = random_diagonal_seed(5, rng);
    CHECK(io::seed_from_json(io::seed_to_json(s)).t == s.t);
    SquareFamily f{SlopedRect::centered(4), {{-1, 3, 0, 4}, {2, 2, 0, 0}}};
    auto f2 = io::family_from_json(io::family_to_json(f));
    CHECK(f2.squares == f.squares);
    CHECK(f2.ambient == f.ambient);
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS_AS(io::grid_from_json(json::parse(R"({"coords":"standard"})")), io_error);
    CHECK_THROWS_AS(io::read_file("/nonexistent/dhlab"), io_error);
    json bad = io::lshape_to_json(LShapeData::from_function({0, 4, 0, 4}, ScalarKind::rational(), [](SlopedCell) {
      return Scalar::one(ScalarKind::rational());
    }));
    bad["values"].erase(0);
    CHECK_THROWS_AS(io::lshape_from_json(bad), precondition_error);
  }

  TEST_CASE("kernel table csv") {
    std::string csv = io::kernel_table_csv(build_kernel_table(1));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "xn,xm,yn,ym,value");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 4);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("every command has a help page") {
    for (const auto& name : cli::command_names()) {
      Run r = run({name, "--help"});
      CHECK(r.code == 0);
      CHECK(r.out.find("--out") != std::string::npos);
    }
    CHECK(cli::command_names().size() == 14);
  }

  TEST_CASE("header block") {
    Run r = run({"solve", "--n", "3", "--seed", "42"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["header"]["tool"] == "dhlab");
    CHECK(j["header"]["seed"] == 42);
    CHECK(j["header"]["scalar_kind"] == "float(53)");
    CHECK(j["header"]["config"]["n"] == "3");
    Run c = run({"growth", "--example", "chelkak34", "--radii", "1..5"});
    REQUIRE(c.code == 0);
    CHECK(c.out.rfind("# tool: dhlab\n", 0) == 0);
    CHECK(c.out.find("# scalar_kind: quadratic(3)") != std::string::npos);
    CHECK(c.out.find("K,M,log_M,fitted_slope\n") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    Run bad = run({"solve", "--n", "0"});
    CHECK(bad.code == 1);
    CHECK(json::parse(bad.err)["error"] == "precondition");
    Run io = run({"solve", "--boundary", "/nonexistent/b.json"});
    CHECK(io.code == 2);
    CHECK(json::parse(io.err)["error"] == "io");
    CHECK(run({"nope"}).code == 1);
    CHECK(run({"solve", "--bogus"}).code == 1);
    // gamma too small for a single small point
    CHECK(run({"propagate", "--n", "64", "--sigma", "1", "--gamma", "0.00006", "--seed", "7"}).code == 1);
  }

  TEST_CASE("config file with flag override") {
    const std::string cfg = tmp("cfg.json");
    io::write_file(cfg, R"({"n": 4, "seed": 9, "method": "exact"})");
    Run a = run({"solve", "--config", cfg});
    Run b = run({"solve", "--n", "4", "--seed", "9", "--method", "exact"});
    REQUIRE(a.code == 0);
    json ja = json::parse(a.out), jb = json::parse(b.out);
    CHECK(ja["grid"] == jb["grid"]);
    Run c = run({"solve", "--config", cfg, "--n", "2"});
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out)["grid"]["window"]["radius"] == 2);
    std::remove(cfg.c_str());
  }

  TEST_CASE("out file and byte-identical rerun") {
    const std::string f1 = tmp("u1.json"), f2 = tmp("u2.json");
    SplitMix64 rng(5);
    const std::string bfile = tmp("b.json");
    io::write_file(bfile, io::dump(io::boundary_to_json(random_boundary(8, rng, "rational"))));
    // the config echo records --out, so both runs target the same path
    CHECK(run({"solve", "--n", "8", "--boundary", bfile, "--method", "kernel", "--out", f1}).code == 0);
    const std::string first = io::read_file(f1);
    CHECK(run({"solve", "--n", "8", "--boundary", bfile, "--method", "kernel", "--out", f1}).code == 0);
    CHECK(io::read_file(f1) == first);
    CHECK(run({"solve", "--n", "8", "--boundary", bfile, "--method", "kernel", "--out", f2}).code == 0);
    CHECK(json::parse(io::read_file(f1))["header"]["seed"].is_null());
    for (const auto& f : {f1, f2, bfile}) std::remove(f.c_str());
  }

  TEST_CASE("extend-lshape and halfplane through files") {
    const std::string in = tmp("l.json");
    auto l = LShapeData::from_function({0, 2, 0, 2}, ScalarKind::rational(), [](SlopedCell p) {
      return Scalar::from_integer(p == SlopedCell{1, 1} ? 1 : 0, ScalarKind::rational());
    });
    io::write_file(in, io::dump(io::lshape_to_json(l)));
    Run r = run({"extend-lshape", "--input", in});
    REQUIRE(r.code == 0);
    auto U = io::grid_from_json(json::parse(r.out)["grid"]);
    CHECK(U.at(SlopedCell{2, 2}) == Scalar::from_integer(4, ScalarKind::rational()));
    std::remove(in.c_str());
    Run h = run({"halfplane", "--n", "10", "--seed", "3"});
    REQUIRE(h.code == 0);
    json jh = json::parse(h.out);
    CHECK(jh["vanishes_on_lower_half"] == true);
    CHECK(jh["harmonic"]["harmonic"] == true);
  }

  TEST_CASE("verify reports and fails on an injected fault") {
    Run ok = run({"verify", "--only", "1,5"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS [ 1]") != std::string::npos);
    CHECK(ok.out.find("PASS [ 5]") != std::string::npos);
    Run bad = run({"verify", "--only", "3", "--inject-fault", "kernel-sign"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL [ 3]") != std::string::npos);
    CHECK(bad.out.find("x=(0,0)") != std::string::npos);
  }

  TEST_CASE("remez-check") {
    Run r = run({"remez-check", "--poly", "0,1", "--lo", "0", "--hi", "1", "--intervals", "0:1/2", "--sup", "1/2"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["continuous_bound"] == "4");
    CHECK(j["continuous_dominates"] == true);
  }
}
