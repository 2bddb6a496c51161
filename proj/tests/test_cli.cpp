#include <filesystem>

#include "doctest.h"
#include "perdecomp/error.hpp"
#include "perdecomp/fuzz.hpp"
#include "perdecomp/run.hpp"
#include "support.hpp"

using namespace testing;
using Json = nlohmann::ordered_json;

namespace {

Report run_fixture(Command c, const std::string& name, RunOptions o = {}) {
  return run(c, load_instance(fixture(name)), o);
}

}  // namespace

TEST_CASE("parse_instance examples") {
  const Instance z = load_instance(fixture("z2z2.json"));
  CHECK(z.mode == Mode::AbelianFinite);
  CHECK(z.f == ints({0, 1, 1, 1}));
  CHECK(build_action(z) == z2z2());
  CHECK(z == z2z2_instance());

  try {
    load_instance(fixture("invalid/repeated_image.json"));
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.field == "perms[0][1]");
  }

  const Instance w = parse_instance(R"({"mode": "z_window", "periods": [2, 3], "window": 3, "f": [0, "0", "1/2"]})");
  CHECK(w.mode == Mode::ZWindow);
  CHECK(w.f == rats({"0", "0", "1/2"}));

  CHECK_THROWS_AS(parse_instance("{"), ParseError);
  CHECK_THROWS_AS(parse_instance("[]"), SchemaError);
  CHECK_THROWS_AS(parse_instance(R"({"mode": "nope"})"), SchemaError);
  CHECK_THROWS_AS(parse_instance(R"({"mode": "z_window", "periods": [2], "window": 1, "f": [0.5]})"), SchemaError);
  CHECK_THROWS_AS(parse_instance(R"({"mode": "z_window", "periods": [0], "window": 1, "f": [1]})"), SchemaError);
  CHECK_THROWS_AS(parse_instance(R"({"mode": "z_window", "periods": [1], "window": 2, "f": [1]})"), SchemaError);
  CHECK_THROWS_AS(parse_instance(R"({"mode": "z_window", "periods": [1], "window": 1, "f": [1], "x": 0})"), SchemaError);
  CHECK_THROWS_AS(parse_instance(R"({"mode": "tf_conditions", "dim": 1, "periods": [["0"]]})"), SchemaError);
  CHECK_THROWS_AS(load_instance(fixture("does_not_exist.json")), ParseError);
}

TEST_CASE("parse, serialize, parse round-trips") {
  for (const auto& entry : std::filesystem::directory_iterator(PERDECOMP_FIXTURE_DIR)) {
    if (entry.path().extension() != ".json") continue;
    const Instance a = load_instance(entry.path().string());
    const std::string text = serialize_instance(a);
    const Instance b = parse_instance(text);
    CHECK(a == b);
    CHECK(serialize_instance(b) == text);
  }
  FuzzRng rng(4);
  for (int i = 0; i < 50; ++i) {
    const FuzzCase c = random_case(rng, 20, 3);
    Instance inst;
    inst.mode = Mode::FiniteAction;
    inst.size = c.action.carrier_size();
    for (const auto& g : c.action.generators()) inst.perms.emplace_back(g.images().begin(), g.images().end());
    inst.f = c.f;
    CHECK(parse_instance(serialize_instance(inst)) == inst);
  }
}

TEST_CASE("run: decompose on the four-point group") {
  const Report rat = run_fixture(Command::Decompose, "z2z2.json", {false, Method::Default, Ring::Rational});
  CHECK(rat.verdict == Verdict::Decomposable);
  CHECK(exit_code(rat.verdict) == 0);
  REQUIRE(rat.parts);
  CHECK(verify_decomposition(z2z2(), ints({0, 1, 1, 1}), *rat.parts).valid);
  CHECK_FALSE(rat.certificate);

  const Report integer = run_fixture(Command::Decompose, "z2z2.json", {false, Method::Default, Ring::Integer});
  CHECK(integer.verdict == Verdict::NotDecomposable);
  CHECK(exit_code(integer.verdict) == 1);
  REQUIRE(integer.certificate);
  CHECK((*integer.certificate)["kind"] == "integer_lattice");
  CHECK_FALSE(integer.parts);

  const Report oracle = run_fixture(Command::Oracle, "z2z2.json");
  CHECK(oracle.verdict == Verdict::Decomposable);
  CHECK(oracle.diagnostics["method"] == "oracle");

  const Report bad = run_fixture(Command::Decompose, "z2z2.json", {false, Method::Constructive, Ring::Integer});
  CHECK(bad.verdict == Verdict::Error);
  CHECK(exit_code(bad.verdict) == 2);
}

TEST_CASE("run: certificates serialize with 1-based partitions") {
  const Report r = run_fixture(Command::Check, "z6_delta.json");
  CHECK(r.verdict == Verdict::NotDecomposable);
  REQUIRE(r.certificate);
  const Json& c = *r.certificate;
  CHECK(c["partition"] == Json::parse("[[1],[2]]"));
  CHECK(c["chosen"] == Json::parse("[[1,0],[0,1]]"));
  CHECK(c["witness"] == 0);
  CHECK(c["value"] == "1");

  const Report ok = run_fixture(Command::Check, "z2z2.json");
  CHECK(ok.verdict == Verdict::ConditionsOnly);
  CHECK(exit_code(ok.verdict) == 0);
  CHECK_FALSE(ok.parts);
  CHECK_FALSE(ok.certificate);
}

TEST_CASE("run: conditions on the sqrt 2 periods") {
  const Report r = run_fixture(Command::Conditions, "sqrt2.json");
  CHECK(r.verdict == Verdict::ConditionsOnly);
  CHECK(r.diagnostics["conditions"].size() == 2);
  CHECK(r.diagnostics["trivial_count"] == 3);
  CHECK(r.diagnostics["conditions"][0]["shifts"] == Json::parse(R"([["2","0"],["0","1"]])"));
}

TEST_CASE("run: window trap") {
  const Report c = run_fixture(Command::Check, "trap.json");
  CHECK(c.verdict == Verdict::NotDecomposable);
  CHECK((*c.certificate)["value"] == "3");
  CHECK((*c.certificate)["shifts"] == Json::parse("[3]"));
  for (Ring ring : {Ring::Rational, Ring::Integer}) {
    const Report d = run_fixture(Command::Decompose, "trap.json", {false, Method::Default, ring});
    CHECK(d.verdict == Verdict::NotDecomposable);
  }
  const Report k = run_fixture(Command::Decompose, "trap.json", {false, Method::Constructive, Ring::Rational});
  CHECK(k.verdict == Verdict::Error);
}

TEST_CASE("run: input errors map to exit code 2") {
  const Report nc = run_fixture(Command::Validate, "invalid/noncommuting.json");
  CHECK(nc.verdict == Verdict::Error);
  CHECK(nc.diagnostics["error"] == "NonCommuting");
  const Report tf = run_fixture(Command::Check, "sqrt2.json");
  CHECK(tf.verdict == Verdict::Error);
  CHECK(error_report(Error(ErrorKind::InternalInvariantFailure, "x")).verdict == Verdict::InternalError);
  CHECK(exit_code(Verdict::InternalError) == 3);
}

TEST_CASE("reports are deterministic and timings are opt-in") {
  for (const char* name : {"z2z2.json", "z6_periodic.json", "cycle_powers.json", "window_2_3.json"}) {
    const std::string a = run_fixture(Command::Decompose, name).dump();
    CHECK(a == run_fixture(Command::Decompose, name).dump());
    CHECK(a.find("elapsed_ms") == std::string::npos);
  }
  RunOptions timed;
  timed.timings = true;
  CHECK(run_fixture(Command::Check, "z2z2.json", timed).diagnostics.contains("elapsed_ms"));
}

TEST_CASE("demo z2z2") {
  const Report r = demo_z2z2();
  CHECK(r.verdict == Verdict::Decomposable);
  CHECK(r.diagnostics["half_valued_triple_verifies"] == true);
  CHECK(r.diagnostics["integer_verdict"] == "not_decomposable");
}

TEST_CASE("fuzz: deterministic summaries and fault detection") {
  FuzzOptions o;
  o.seed = 1;
  o.count = 10;
  const Report a = fuzz(o);
  CHECK(a.verdict == Verdict::ConditionsOnly);
  CHECK(a.diagnostics["agreements"] == 10);
  CHECK(a.dump() == fuzz(o).dump());
  o.seed = 2;
  CHECK(a.dump() != fuzz(o).dump());

  o.fault = Fault::DropLastOperator;
  o.count = 30;
  const Report bad = fuzz(o);
  CHECK(bad.verdict == Verdict::InternalError);
  CHECK(exit_code(bad.verdict) == 3);
  const Json& fail = bad.diagnostics["first_failure"];
  REQUIRE(fail.is_object());
  // The reproducer is a valid instance that still exhibits the fault.
  const Instance repro = parse_instance(fail["reproducer"].dump());
  CHECK_FALSE(cross_check(build_action(repro), repro.f, Fault::DropLastOperator).agree);
  CHECK(cross_check(build_action(repro), repro.f, Fault::None).agree);
}
