#include <doctest.h>

#include <stdexcept>

#include <json.hpp>

#include "fairdiv/generators.hpp"
#include "fairdiv/instance_io.hpp"

using namespace fairdiv;
using nlohmann::json;

namespace {

const char* kSampleInstance = R"({
  "n": 2,
  "m": 3,
  "agents": [
    {"kind": "additive", "values": [4, 1, 1]},
    {"kind": "xos", "clauses": [[1, 4, 1], [2, 2, 2]]}
  ]
})";

}  // namespace

TEST_CASE("instance json load") {
    Instance inst = instance_from_json(json::parse(kSampleInstance));
    CHECK(inst.n == 2);
    CHECK(inst.m == 3);
    CHECK(inst.value(0, GoodSet({0, 2})) == 5.0);
    CHECK(inst.value(1, GoodSet({0, 2})) == 4.0);
}

TEST_CASE("instance json rejects unknown fields") {
    json j = json::parse(kSampleInstance);
    j["extra"] = 1;
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

    j = json::parse(kSampleInstance);
    j["agents"][0]["cap"] = 2.0;
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);
}

TEST_CASE("instance json rejects structural mistakes") {
    json j = json::parse(kSampleInstance);
    j["agents"].erase(1);
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);  // wrong agent count

    j = json::parse(kSampleInstance);
    j["agents"][0]["values"] = {1, 2};
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);  // wrong length

    j = json::parse(kSampleInstance);
    j["agents"][0]["values"][0] = -1;
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);

    j = json::parse(kSampleInstance);
    j["agents"][0]["kind"] = "mystery";
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);
}

TEST_CASE("serialize/load round trip is byte-identical") {
    for (OracleKind kind : {OracleKind::Additive, OracleKind::Xos, OracleKind::BudgetAdditive,
                            OracleKind::Coverage}) {
        Instance inst = gen_random(kind, 3, 5, 99);
        const std::string text = instance_to_string(inst);
        Instance reloaded = instance_from_json(json::parse(text));
        CHECK(instance_to_string(reloaded) == text);
    }

    Instance hard = gen_xos_hard(3, 0.1, 5, false);
    const std::string text = instance_to_string(hard);
    Instance reloaded = instance_from_json(json::parse(text));
    CHECK(instance_to_string(reloaded) == text);
    // the reconstructed oracles answer identically
    for (int i = 0; i < hard.n; ++i)
        for (std::uint64_t mask = 0; mask < 512; mask += 37)
            CHECK(hard.value(i, GoodSet::from_mask(mask)) ==
                  reloaded.value(i, GoodSet::from_mask(mask)));
}

TEST_CASE("xos_hard json consistency checks") {
    json j = json::parse(R"({"n": 2, "m": 3, "agents": [
        {"kind": "xos_hard", "n": 2, "delta": 0.1, "seed": 1, "identical": true},
        {"kind": "xos_hard", "n": 2, "delta": 0.1, "seed": 1, "identical": true}
    ]})");
    CHECK_THROWS_AS(instance_from_json(j), std::invalid_argument);  // m must be n^2
}
