#include "topospin/json_io.hpp"

#include "support/schema_check.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>
#include <vector>

using namespace topospin;

namespace {

json load_schema(const std::string& name) {
    const std::string path = std::string(TOPOSPIN_SOURCE_DIR) + "/schemas/" + name;
    std::ifstream in(path);
    REQUIRE(in.good());
    return json::parse(in);
}

void check_valid(const json& schema, const json& instance) {
    const std::vector<std::string> errors = testsupport::schema_errors(schema, instance);
    for (const std::string& e : errors) UNSCOPED_INFO(e);
    CHECK(errors.empty());
}

}  // namespace

TEST_CASE("complex and matrix helpers emit [re, im] layouts", "[json_io]") {
    CHECK(to_json_pair(Complex(1.5, -2.0)) == json::array({1.5, -2.0}));

    Operator m(2, 2);
    m << Complex(1, 0), Complex(0, 2), Complex(3, 0), Complex(0, -4);
    const json flat = to_json_flat(m);
    REQUIRE(flat.size() == 4);
    CHECK(flat[1] == json::array({0.0, 2.0}));
    CHECK(flat[3] == json::array({0.0, -4.0}));

    const json rows = to_json_rows(m);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][1] == json::array({0.0, 2.0}));
    CHECK(rows[1][0] == json::array({3.0, 0.0}));
}

TEST_CASE("evaluation results serialize for every result kind", "[json_io]") {
    const TLParams p{};
    const json schema = load_schema("diagram_result.schema.json");

    const json scalar = evaluate("cap(1,2:d1);cup(1,2:d1)", p);
    CHECK(scalar["kind"] == "scalar");
    CHECK(scalar["rows"] == 1);
    CHECK(scalar["cols"] == 1);
    CHECK(scalar["dim"] == 1);
    CHECK(scalar["in_sites"] == json::array());
    CHECK(scalar["out_sites"] == json::array());
    CHECK(scalar["data"][0][0].get<double>() == Catch::Approx(kLoopValue));
    CHECK(scalar["data"][0][1].get<double>() == Catch::Approx(0.0).margin(1e-15));
    check_valid(schema, scalar);

    const json state = evaluate("cup(1,2:d1)", p);
    CHECK(state["kind"] == "state");
    CHECK(state["rows"] == 4);
    CHECK(state["cols"] == 1);
    CHECK(state["dim"] == 4);
    CHECK(state["out_sites"] == json::array({1, 2}));
    CHECK(state["in_sites"] == json::array());
    check_valid(schema, state);

    const json costate = evaluate("cap(3,4:o2)", p);
    CHECK(costate["kind"] == "costate");
    CHECK(costate["rows"] == 1);
    CHECK(costate["cols"] == 4);
    CHECK(costate["dim"] == 4);
    CHECK(costate["in_sites"] == json::array({3, 4}));
    check_valid(schema, costate);

    const json op = evaluate("cup(1,2:d1);cap(1,2:d1)", p);
    CHECK(op["kind"] == "op");
    CHECK(op["rows"] == 4);
    CHECK(op["cols"] == 4);
    CHECK(op["dim"] == 4);
    CHECK(op["in_sites"] == json::array({1, 2}));
    CHECK(op["out_sites"] == json::array({1, 2}));
    REQUIRE(op["data"].size() == 16);
    check_valid(schema, op);
}

TEST_CASE("parameter and spectrum payloads match their schemas", "[json_io]") {
    ModelParams mp;
    mp.delta = 0.1;
    const json payload = {
        {"params", mp}, {"spectrum", spectrum(mp)}, {"splitting", splitting(mp)}};
    check_valid(load_schema("spectrum.schema.json"), payload);

    CHECK(payload["params"]["J"] == 1.0);
    CHECK(payload["params"]["eps"] == 1);
    CHECK(payload["spectrum"]["dimension"] == 16);
    CHECK(payload["spectrum"]["levels"][0]["multiplicity"] == 12);
    CHECK(payload["splitting"]["delta_freq"].get<double>() == Catch::Approx(0.2));
}

TEST_CASE("trace, measurement, and well payloads match their schemas", "[json_io]") {
    ModelParams mp;

    const json evolve_payload = {{"params", mp}, {"trace", tunneling_trace(mp, 5.0, 4)}};
    check_valid(load_schema("evolve_trace.schema.json"), evolve_payload);
    CHECK(evolve_payload["trace"]["times"].size() == 4);

    json runs = json::array();
    for (int n : {1, 10}) runs.push_back(zeno_run(mp, n));
    const json zeno_payload = {{"params", mp}, {"runs", runs}};
    check_valid(load_schema("zeno_runs.schema.json"), zeno_payload);
    CHECK(zeno_payload["runs"][1]["n"] == 10);

    const WellParams w;
    check_valid(load_schema("well.schema.json"), json(map_well(w)));

    const json sweep_payload = {
        {"params", w}, {"table", independent_wells_limit(w, {1.0, 1000.0})}};
    check_valid(load_schema("well_sweep.schema.json"), sweep_payload);
    CHECK(sweep_payload["table"]["rows"][0]["annotation"] == "");
    CHECK(sweep_payload["table"]["rows"][1]["annotation"] == "independent wells");
}

TEST_CASE("verification report validates against both schema layers", "[json_io]") {
    const json report = run_verification(ModelParams{});
    check_valid(load_schema("verify_report.schema.json"), report);
    check_valid(load_schema("consistency_report.schema.json"), report["consistency"]);

    CHECK(report["all_mandatory_passed"] == true);
    CHECK(report["perturbation"] == 0.0);
    bool found_informational = false;
    for (const auto& check : report["checks"]) {
        if (check["name"] == "single-basis-compatibility") {
            found_informational = true;
            CHECK(check["mandatory"] == false);
        }
    }
    CHECK(found_informational);
}

TEST_CASE("schema checker flags malformed payloads", "[json_io]") {
    const json schema = load_schema("diagram_result.schema.json");
    json good = evaluate("cup(1,2:d1)", TLParams{});
    REQUIRE(testsupport::schema_errors(schema, good).empty());

    json missing = good;
    missing.erase("kind");
    CHECK_FALSE(testsupport::schema_errors(schema, missing).empty());

    json bad_enum = good;
    bad_enum["kind"] = "matrix";
    CHECK_FALSE(testsupport::schema_errors(schema, bad_enum).empty());

    json extra = good;
    extra["surplus"] = 1;
    CHECK_FALSE(testsupport::schema_errors(schema, extra).empty());

    json bad_site = good;
    bad_site["out_sites"] = json::array({0});
    CHECK_FALSE(testsupport::schema_errors(schema, bad_site).empty());

    const json zeno_schema = load_schema("zeno_runs.schema.json");
    ModelParams mp;
    json payload = {{"params", mp}, {"runs", json::array({zeno_run(mp, 2)})}};
    REQUIRE(testsupport::schema_errors(zeno_schema, payload).empty());
    payload["runs"][0]["survival_exact"] = 1.5;
    CHECK_FALSE(testsupport::schema_errors(zeno_schema, payload).empty());
}

TEST_CASE("serialization is deterministic", "[json_io]") {
    ModelParams mp;
    mp.delta = 0.3;
    mp.phi = 1.2;
    const json a = {{"params", mp}, {"spectrum", spectrum(mp)}, {"splitting", splitting(mp)}};
    const json b = {{"params", mp}, {"spectrum", spectrum(mp)}, {"splitting", splitting(mp)}};
    CHECK(a.dump() == b.dump());

    const json r1 = evaluate("2i*cup(1,2:d2) | cap(5,6:o1)", TLParams{0.7, -1});
    const json r2 = evaluate("2i*cup(1,2:d2) | cap(5,6:o1)", TLParams{0.7, -1});
    CHECK(r1.dump(2) == r2.dump(2));
}
