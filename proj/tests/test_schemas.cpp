#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "doctest.h"
#include "json.hpp"
#include "schema_validator.hpp"

// Holds every subcommand's JSON output to its published schema under
// schemas/. The first group of cases pins down the validator itself so a
// green schema check means what it claims.

using cli::cli_result;
using cli::parse;
using cli::parse_lines;
using cli::run;
using nlohmann::json;

#ifndef PERCOLAB_SCHEMA_DIR
#error "PERCOLAB_SCHEMA_DIR must be defined by the build"
#endif

namespace {

json load_schema(const std::string& name) {
  return parse(cli::slurp(std::string(PERCOLAB_SCHEMA_DIR) + "/" + name + ".json"));
}

void expect_valid(const json& value, const json& schema) {
  std::vector<std::string> errors = schemacheck::validate(value, schema);
  for (const std::string& e : errors) MESSAGE(e);
  CHECK(errors.empty());
}

}  // namespace

TEST_CASE("validator: type, bounds, and length keywords reject violations") {
  json schema = json::parse(R"({
    "type": "object",
    "required": ["n", "tag"],
    "additionalProperties": false,
    "properties": {
      "n": {"type": "integer", "minimum": 1, "maximum": 10},
      "tag": {"type": "string", "minLength": 2, "maxLength": 4},
      "ratio": {"type": ["number", "null"]}
    }
  })");
  CHECK(schemacheck::validate(json{{"n", 3}, {"tag", "abc"}}, schema).empty());
  CHECK(schemacheck::validate(json{{"n", 3}, {"tag", "abc"}, {"ratio", nullptr}}, schema).empty());
  CHECK(schemacheck::validate(json{{"n", 3}, {"tag", "abc"}, {"ratio", 0.5}}, schema).empty());
  // each violation yields at least one error
  CHECK(!schemacheck::validate(json{{"n", 0}, {"tag", "abc"}}, schema).empty());     // minimum
  CHECK(!schemacheck::validate(json{{"n", 11}, {"tag", "abc"}}, schema).empty());    // maximum
  CHECK(!schemacheck::validate(json{{"n", 2.5}, {"tag", "abc"}}, schema).empty());   // integer
  CHECK(!schemacheck::validate(json{{"n", 3}, {"tag", "a"}}, schema).empty());       // minLength
  CHECK(!schemacheck::validate(json{{"n", 3}, {"tag", "abcde"}}, schema).empty());   // maxLength
  CHECK(!schemacheck::validate(json{{"n", 3}}, schema).empty());                     // required
  CHECK(!schemacheck::validate(json{{"n", 3}, {"tag", "ab"}, {"x", 1}}, schema).empty());
  CHECK(!schemacheck::validate(json{{"n", 3}, {"tag", "ab"}, {"ratio", "x"}}, schema).empty());
  CHECK(!schemacheck::validate(json::array(), schema).empty());                      // type
}

TEST_CASE("validator: enum, items, and local refs") {
  json schema = json::parse(R"({
    "type": "object",
    "properties": {
      "mode": {"enum": [0, 1, "auto"]},
      "cis": {"type": "array", "minItems": 1, "items": {"$ref": "#/definitions/ci"}}
    },
    "definitions": {
      "ci": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "number"}}
    }
  })");
  json good = {{"mode", "auto"}, {"cis", json::array({json::array({0.1, 0.9})})}};
  CHECK(schemacheck::validate(good, schema).empty());
  json bad_enum = {{"mode", "manual"}};
  CHECK(!schemacheck::validate(bad_enum, schema).empty());
  json bad_items = {{"cis", json::array({json::array({0.1})})}};
  CHECK(!schemacheck::validate(bad_items, schema).empty());
  json bad_ref = json::parse(R"({"$ref": "#/definitions/nope"})");
  CHECK(!schemacheck::validate(json(1), bad_ref).empty());
  // booleans are not numbers: enum 0/1 must not admit false/true
  json state_schema = json::parse(R"({"enum": [0, 1]})");
  CHECK(!schemacheck::validate(json(true), state_schema).empty());
}

TEST_CASE("validator: unsupported keywords are loud") {
  json schema = json::parse(R"({"type": "string", "pattern": "^x"})");
  CHECK(!schemacheck::validate(json("xyz"), schema).empty());
}

TEST_CASE("schema: gen output, plain and molecular") {
  json schema = load_schema("graph");
  cli_result plain = run("gen -g \"complete(6)\"");
  REQUIRE(plain.code == 0);
  expect_valid(parse(plain.out), schema);

  cli_result mol = run("gen -g \"molecular(cycle(4),3)\"");
  REQUIRE(mol.code == 0);
  json j = parse(mol.out);
  REQUIRE(j.contains("witness"));
  expect_valid(j, schema);
}

TEST_CASE("schema: sample output") {
  cli_result r = run("sample -g \"torus(3,4)\" --p 0.45 --seed 13 --replica 3");
  REQUIRE(r.code == 0);
  expect_valid(parse(r.out), load_schema("sample"));
}

TEST_CASE("schema: sweep output") {
  cli_result r = run("sweep -g \"cycle(8)\" --p 0.2 --p 0.5 --p 0.8 --reps 100 --seed 1");
  REQUIRE(r.code == 0);
  expect_valid(parse(r.out), load_schema("sweep"));
}

TEST_CASE("schema: threshold output, bisection and spectral") {
  json schema = load_schema("threshold");
  cli_result emp = run("threshold -g \"complete(16)\" --delta 0.5 --reps 200 --tol 1e-3 --seed 2");
  REQUIRE(emp.code == 0);
  expect_valid(parse(emp.out), schema);

  cli_result sp = run("threshold --op spectral_threshold -g \"torus(4,4)\"");
  REQUIRE(sp.code == 0);
  json j = parse(sp.out);
  CHECK(j.at("method") == "spectral");
  expect_valid(j, schema);
}

TEST_CASE("schema: bounds output with and without the empirical leg") {
  json schema = load_schema("bounds");
  cli_result with = run("bounds -g \"complete(16)\" --delta 0.5 --reps 200 --tol 1e-3 --seed 2");
  REQUIRE(with.code == 0);
  json j = parse(with.out);
  REQUIRE(j.contains("estimate"));
  expect_valid(j, schema);

  cli_result without = run("bounds -g \"hypercube(3)\"");
  REQUIRE(without.code == 0);
  json k = parse(without.out);
  CHECK(!k.contains("estimate"));
  expect_valid(k, schema);
}

TEST_CASE("schema: domination report, canonical and overridden q") {
  json schema = load_schema("domination");
  cli_result canon = run("couple -g \"complete(5)\" --p 0.5 --alpha 0.5 --reps 500 --seed 9");
  REQUIRE(canon.code == 0);
  expect_valid(parse(canon.out), schema);

  cli_result forced =
      run("couple -g \"complete(4)\" --p 0.7 --alpha 0.6 --q 0.12 --reps 500 --seed 9");
  REQUIRE(forced.code == 0);
  json j = parse(forced.out);
  REQUIRE(j.contains("q_override"));
  expect_valid(j, schema);
}

TEST_CASE("schema: coupling outcome records") {
  json schema = load_schema("outcome");
  // canonical q is negative here, so the error event cannot fire
  cli_result quiet = run("couple --op run_coupling -g \"complete(4)\" --p 0.7 --alpha 0.6 --seed 5");
  REQUIRE(quiet.code == 0);
  json j = parse(quiet.out);
  CHECK(j.at("error_event_A") == false);
  expect_valid(j, schema);

  // a biting override makes some replicas fail; validate both branches
  bool saw_failure = false;
  for (int replica = 0; replica < 8; ++replica) {
    cli_result r = run("couple --op run_coupling -g \"complete(4)\" --p 0.7 --alpha 0.6 --q 0.5 "
                       "--seed 5 --replica " +
                       std::to_string(replica));
    REQUIRE(r.code == 0);
    json out = parse(r.out);
    expect_valid(out, schema);
    if (out.at("error_event_A").get<bool>()) {
      saw_failure = true;
      CHECK(out.contains("v_minus"));
      CHECK(out.contains("v_plus"));
    }
  }
  CHECK(saw_failure);
}

TEST_CASE("schema: exploration trace lines") {
  json schema = load_schema("trace");
  cli_result r = run("couple --op trace -g \"complete(5)\" --p 0.5 --alpha 0.5 --seed 4");
  REQUIRE(r.code == 0);
  std::vector<json> recs = parse_lines(r.out);
  REQUIRE(recs.size() == 10);
  for (const json& rec : recs) expect_valid(rec, schema);
}

TEST_CASE("schema: exact snapshots across conditioning branches") {
  json schema = load_schema("exact");
  cli_result bare = run("exact -g \"cycle(6)\" --p 0.3");
  REQUIRE(bare.code == 0);
  expect_valid(parse(bare.out), schema);

  cli_result cond = run("exact -g \"complete(4)\" --p 0.7 --alpha 0.6");
  REQUIRE(cond.code == 0);
  json j = parse(cond.out);
  REQUIRE(j.contains("constants"));
  expect_valid(j, schema);

  // inapplicable pair: constants go null, fail probability reported as null
  cli_result inapp = run("exact -g \"complete(4)\" --p 0.3 --alpha 0.4");
  REQUIRE(inapp.code == 0);
  json k = parse(inapp.out);
  REQUIRE(k.contains("constants"));
  CHECK(k.at("constants").at("applicable") == false);
  CHECK(k.at("tau_fail_prob").is_null());
  expect_valid(k, schema);

  cli_result forced = run("exact -g \"complete(4)\" --p 0.7 --alpha 0.6 --q 0.12");
  REQUIRE(forced.code == 0);
  json m = parse(forced.out);
  REQUIRE(m.contains("q_override"));
  expect_valid(m, schema);
}

TEST_CASE("schema: molecular reports") {
  json schema = load_schema("molecular");
  cli_result with = run(
      "molecular -g \"molecular(complete(4),2)\" --p 0.3 --beta 0.15 --reps 200 --seed 2");
  REQUIRE(with.code == 0);
  json j = parse(with.out);
  REQUIRE(j.contains("uniqueness"));
  expect_valid(j, schema);

  cli_result witness_only = run("molecular -g \"molecular(cycle(5),3)\"");
  REQUIRE(witness_only.code == 0);
  json k = parse(witness_only.out);
  CHECK(!k.contains("uniqueness"));
  expect_valid(k, schema);
}

TEST_CASE("schema: suite results") {
  cli_result r = run("suite coupling");
  REQUIRE(r.code == 0);
  json j = parse(r.out);
  CHECK(j.at("pass") == true);
  expect_valid(j, load_schema("suite"));
}

TEST_CASE("schema: error records from several failure modes") {
  json schema = load_schema("error");
  const char* cases[] = {
      "exact -g \"complete(4)\" --p 0.5 --op diagonalize",  // unknown-operation
      "sample --p 0.5",                                 // invalid-config
      "molecular -g \"complete(8)\"",                       // not-applicable
      "threshold -g \"complete(20)\" --delta 0.01",         // degenerate-threshold
  };
  for (const char* args : cases) {
    cli_result r = run(args);
    CHECK(r.code == 1);
    expect_valid(parse(r.out), schema);
  }
}
