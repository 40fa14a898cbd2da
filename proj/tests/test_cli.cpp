#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "doctest.h"

#include "quivcon/axioms.hpp"

using namespace quivcon;
namespace fs = std::filesystem;

namespace {

  fs::path const kData = QUIVCON_TEST_DATA;

  struct Run {
    int         exit = -1;
    std::string out;
    Json        json() const {
      return Json::parse(out);
    }
  };

  Run run(std::string const& args) {
    std::string cmd = std::string(QUIVCON_CLI) + " " + args + " 2>/dev/null";
    Run         r;
    FILE*       p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    while (auto n = std::fread(buf.data(), 1, buf.size(), p)) {
      r.out.append(buf.data(), n);
    }
    int status = pclose(p);
    r.exit     = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string fixture(char const* name) {
    return (kData / "fixtures" / name).string();
  }

  fs::path scratch(char const* name) {
    auto dir = fs::temp_directory_path() / "quivcon_cli_test";
    fs::create_directories(dir);
    return dir / name;
  }

  Json read(fs::path const& p) {
    std::ifstream in(p);
    return Json::parse(in);
  }

  // Reports minus wall-clock fields.
  Json strip_times(Json j) {
    j.erase("seconds");
    for (auto& p : j["witnesses"]["properties"]) {
      p.erase("seconds");
    }
    return j;
  }

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("validate --json " + fixture("a2.json")).exit == 0);
  CHECK(run("validate --json " + fixture("loop_singular.json")).exit == 1);
  CHECK(run("present --json " + fixture("matrix_2x2.json")).exit == 1);
  CHECK(run("validate --json " + fixture("bad_rational.json")).exit == 2);
  CHECK(run("validate --json /nonexistent/file.json").exit == 2);
  CHECK(run("frobnicate").exit == 2);
  CHECK(run("functor --json " + fixture("loop_c3.json")).exit == 2);
  CHECK(run("check-axioms --json --count 1 --field gf 7").exit == 2);
  CHECK(run("check-axioms --json --count 1 --only nonsense").exit == 2);
}

TEST_CASE("validate reports the fixture invariants") {
  auto r = run("validate --json " + fixture("loop_x3.json"));
  REQUIRE(r.exit == 0);
  auto j = r.json();
  CHECK(j["status"] == "pass");
  CHECK(j["witnesses"]["dim"] == 3);
  CHECK(j["witnesses"]["radical_dims"] == Json({2, 1, 0}));
}

TEST_CASE("field override reinterprets literals") {
  auto r = run("validate --json --field gf 3 " + fixture("loop_c3.json"));
  // U = 3 vanishes mod 3.
  CHECK(r.exit == 1);
  CHECK(run("validate --json --field gf 5 " + fixture("loop_c3.json")).exit == 0);
}

TEST_CASE("present writes a bound quiver that reloads to the reported one") {
  auto out = scratch("ut.presentation.json");
  auto r   = run("present --json --out " + out.string() + " " + fixture("upper_triangular.json"));
  REQUIRE(r.exit == 0);
  auto bq = load_bound_quiver(out);
  CHECK(to_json(bq) == r.json()["witnesses"]["bound_quiver"]);
  CHECK(bq.quiver().vertex_count() == 2);
  CHECK(bq.quiver().edge_count() == 1);
  CHECK(bq.ideal().generators().empty());
  CHECK(run("validate --json " + out.string()).exit == 0);
}

TEST_CASE("functor output round-trips through the loader") {
  SUBCASE("bound quiver to algebra") {
    auto out = scratch("a2.P.json");
    REQUIRE(run("functor --json --out " + out.string() + " " + fixture("a2.json")).exit == 0);
    auto doc  = read(out);
    auto inst = read_instance(out);
    auto la   = algebra_from_json(inst.payload, inst.field, "/payload");
    REQUIRE(la.data);
    CHECK(la.data->dim() == 3);
    CHECK(to_json(*la.data) == doc["payload"]);
    CHECK(run("validate --json " + out.string()).exit == 0);
  }
  SUBCASE("connection to bimodule") {
    auto out = scratch("c3.P.json");
    auto src = fixture("loop_x3.json");
    REQUIRE(run("functor --json --out " + out.string() + " --source " + src + " --target " + src
                + " " + fixture("loop_c3.json"))
                .exit
            == 0);
    CHECK(fs::exists(scratch("c3.P.source.json")));
    CHECK(fs::exists(scratch("c3.P.target.json")));
    auto doc = read(out);
    auto m   = bimodule_from_instance(read_instance(out));
    CHECK(m.dim() == 3);
    CHECK(to_json(m, {doc["payload"]["left"]["id"], doc["payload"]["left"]["file"]},
                  {doc["payload"]["right"]["id"], doc["payload"]["right"]["file"]})
          == doc["payload"]);
    CHECK(run("validate --json " + out.string()).exit == 0);
    CHECK(run("roundtrip --json " + out.string()).exit == 0);
  }
}

TEST_CASE("functor rejects a connection that is not ideally connected") {
  auto r = run("functor --json --source " + fixture("loop_x2.json") + " --target "
               + fixture("loop_x3.json") + " " + fixture("loop_c3.json"));
  CHECK(r.exit == 1);
  CHECK(r.json()["witnesses"]["checks"]["ideally_connected"] != "pass");
}

TEST_CASE("check-axioms is a pure function of its seed") {
  auto args = std::string("check-axioms --json --count 3 --seed 77");
  auto a    = run(args);
  auto b    = run(args);
  REQUIRE(a.exit == 0);
  CHECK(strip_times(a.json()) == strip_times(b.json()));
  auto c = run("check-axioms --json --count 3 --seed 78");
  CHECK(c.exit == 0);
}

TEST_CASE("injected faults fail with a replayable counterexample") {
  for (auto fault : {"mu", "interchange"}) {
    CAPTURE(fault);
    auto out = scratch("fault.json");
    auto r   = run(std::string("check-axioms --json --count 5 --seed 3 --inject-fault ") + fault
                   + " --out " + out.string());
    CHECK(r.exit == 1);
    auto report = read(out);
    CHECK(report["status"] == "fail");
    bool found = false;
    for (auto const& p : report["witnesses"]["properties"]) {
      if (!p.contains("counterexample")) {
        continue;
      }
      found        = true;
      auto const& c = p["counterexample"];
      CHECK(!c["instance"].is_null());
      CHECK(!c["message"].get<std::string>().empty());

      // Replaying the recorded seed and bounds reproduces the failure.
      GeneratorBounds b;
      b.max_vertices   = c["bounds"]["max_vertices"];
      b.max_edges      = c["bounds"]["max_edges"];
      b.max_gamma_dim  = c["bounds"]["max_gamma_dim"];
      b.max_nilpotency = c["bounds"]["max_nilpotency"];
      auto const& props = axiom_properties();
      auto it = std::find_if(props.begin(), props.end(), [&](auto const& q) { return q.name == p["name"]; });
      REQUIRE(it != props.end());
      Rng  rng(c["seed"].get<std::uint64_t>());
      auto t = it->run(rng, b, parse_fault(fault));
      CHECK_FALSE(t.verdict.ok);
      CHECK(t.verdict.message == c["message"]);
      CHECK(t.instance == c["instance"]);
    }
    CHECK(found);
  }
}
