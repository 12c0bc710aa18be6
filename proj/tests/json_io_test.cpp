#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "desat/json_io.hpp"

#include "support/fixture.hpp"

using namespace desat;
using desat::testing::paper_plant;

namespace {

std::string fixture(const std::string& name) { return std::string(DESAT_FIXTURE_DIR) + "/" + name; }

/// A well-formed little plant as a mutable JSON document for error tests.
nlohmann::json small_doc() {
    return nlohmann::json{
        {"states", {"0", "1"}},
        {"initial", "0"},
        {"events",
         {{"observable", {"a"}}, {"unobservable", nlohmann::json::array()},
          {"insertable", nlohmann::json::array()}, {"erasable", nlohmann::json::array()}}},
        {"transitions", {{"0", "a", "1"}}},
    };
}

std::string message_of(const std::string& text) {
    try {
        parse_plant_json(text);
    } catch (const MalformedInputError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("the shipped plant file is the plant the tests are built around") {
    const PlantModel loaded = load_plant_file(fixture("paper-fig2.json"));
    const PlantModel expected = paper_plant();
    CHECK(loaded.states == expected.states);
    CHECK(loaded.initial == expected.initial);
    CHECK(loaded.observable == expected.observable);
    CHECK(loaded.unobservable == expected.unobservable);
    CHECK(loaded.insertable == expected.insertable);
    CHECK(loaded.erasable == expected.erasable);
    CHECK(loaded.transitions == expected.transitions);
}

TEST_CASE("the shipped relation files load") {
    const PlantModel plant = paper_plant();

    const MisleadingRelation pairs = load_relation_file(fixture("relation-mislead5.json"), plant);
    REQUIRE(pairs.is_explicit());
    CHECK(pairs.pairs().size() == 7);
    CHECK(pairs.holds(Estimate::of({"5"}), Estimate::of({"6"})));
    CHECK_FALSE(pairs.holds(Estimate::of({"5"}), Estimate::of({"5"})));

    const MisleadingRelation crit = load_relation_file(fixture("relation-critical5.json"), plant);
    REQUIRE_FALSE(crit.is_explicit());
    CHECK(crit.critical_states() == std::set<StateId>{"5"});
}

TEST_CASE("plant parse errors are anchored and specific") {
    CHECK_THAT(message_of("{"), Catch::Matchers::ContainsSubstring("not valid JSON") &&
                                    Catch::Matchers::ContainsSubstring("line 1"));
    CHECK_THAT(message_of("[1, 2]"), Catch::Matchers::ContainsSubstring("must be a JSON object"));

    auto doc = small_doc();
    doc["surprise"] = 1;
    CHECK_THAT(message_of(doc.dump()), Catch::Matchers::ContainsSubstring("unknown key") &&
                                           Catch::Matchers::ContainsSubstring("surprise"));

    doc = small_doc();
    doc.erase("initial");
    CHECK_THAT(message_of(doc.dump()),
               Catch::Matchers::ContainsSubstring("missing key \"initial\""));

    doc = small_doc();
    doc["events"]["extra"] = nlohmann::json::array();
    CHECK_THAT(message_of(doc.dump()), Catch::Matchers::ContainsSubstring("unknown key") &&
                                           Catch::Matchers::ContainsSubstring("\"events\""));

    doc = small_doc();
    doc["states"] = {"0", 1};
    CHECK_THAT(message_of(doc.dump()),
               Catch::Matchers::ContainsSubstring("\"states\" must contain only strings"));

    doc = small_doc();
    doc["transitions"].push_back({"0", "a"});
    CHECK_THAT(message_of(doc.dump()),
               Catch::Matchers::ContainsSubstring("[src, event, dst]"));

    // A repeated pair is reported as duplicate, a conflicting one as
    // nondeterministic.
    doc = small_doc();
    doc["transitions"].push_back({"0", "a", "1"});
    CHECK_THAT(message_of(doc.dump()),
               Catch::Matchers::ContainsSubstring("duplicate transition") &&
                   !Catch::Matchers::ContainsSubstring("nondeterministic"));
    doc = small_doc();
    doc["transitions"].push_back({"0", "a", "0"});
    CHECK_THAT(message_of(doc.dump()),
               Catch::Matchers::ContainsSubstring("nondeterministic"));

    // Semantic validation failures surface through the same anchored channel.
    doc = small_doc();
    doc["initial"] = "9";
    CHECK_THAT(message_of(doc.dump()), Catch::Matchers::ContainsSubstring("initial"));
    doc = small_doc();
    doc["events"]["insertable"] = {"zz"};
    CHECK_THAT(message_of(doc.dump()), Catch::Matchers::ContainsSubstring("zz"));

    // The anchor names the line of the offending token in pretty-printed text.
    doc = small_doc();
    doc["surprise"] = 1;
    const std::string pretty = doc.dump(2);
    std::size_t line = 1;
    for (std::size_t i = 0; i < pretty.find("\"surprise\""); ++i)
        if (pretty[i] == '\n') ++line;
    CHECK_THAT(message_of(pretty),
               Catch::Matchers::ContainsSubstring("line " + std::to_string(line)));
}

TEST_CASE("relation parse errors are anchored and specific") {
    const PlantModel plant = paper_plant();
    auto message_rel = [&](const std::string& text) {
        try {
            parse_relation_json(text, plant);
        } catch (const MalformedInputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };

    CHECK_THAT(message_rel("{\"kind\": \"weird\"}"),
               Catch::Matchers::ContainsSubstring("unknown relation kind"));
    CHECK_THAT(message_rel("{\"kind\": \"critical\"}"),
               Catch::Matchers::ContainsSubstring("\"states\""));
    CHECK_THAT(message_rel("{\"kind\": \"critical\", \"states\": [\"77\"]}"),
               Catch::Matchers::ContainsSubstring("unknown plant state \"77\"") &&
                   Catch::Matchers::ContainsSubstring("line 1"));
    CHECK_THAT(message_rel("{\"kind\": \"explicit\", \"pairs\": [[[], [\"5\"]]]}"),
               Catch::Matchers::ContainsSubstring("non-empty"));
    CHECK_THAT(message_rel("{\"kind\": \"explicit\", \"pairs\": [[\"5\"]]}"),
               Catch::Matchers::ContainsSubstring("each pair"));
    CHECK_THAT(message_rel("{\"kind\": \"critical\", \"states\": [], \"pairs\": []}"),
               Catch::Matchers::ContainsSubstring("unknown key \"pairs\""));
}

TEST_CASE("file loading prefixes the path to every failure") {
    try {
        load_plant_file("/nonexistent/plant.json");
        FAIL("expected an error");
    } catch (const MalformedInputError& e) {
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("/nonexistent/plant.json") &&
                                 Catch::Matchers::ContainsSubstring("cannot open"));
    }
}

TEST_CASE("canonical serialization is stable and round-trips") {
    const PlantModel plant = paper_plant();
    const ObserverAutomaton obs = build_observer(plant);

    const nlohmann::json doc = observer_json(obs);
    CHECK(doc["type"] == "observer");
    CHECK(doc["initial"] == "{0}");
    CHECK(doc["states"].size() == 8);
    CHECK(doc["transitions"].size() == 9);
    CHECK(doc["alphabet"] == nlohmann::json({"a", "c", "d", "g"}));

    const std::string once = dump_json(doc);
    const std::string twice = dump_json(observer_json(build_observer(plant)));
    CHECK(once == twice);
    CHECK(once.back() == '\n');
    CHECK(nlohmann::json::parse(once) == doc);
}

TEST_CASE("structure and verdict serialization carry the fixture facts") {
    const PlantModel plant = paper_plant();
    const AttackStructure a = build_unbounded_attack_structure(plant);
    const nlohmann::json a_doc = attack_structure_json(a);
    CHECK(a_doc["type"] == "attack-structure");
    CHECK(a_doc["bound"] == "unbounded");
    CHECK(a_doc["states"].size() == 25);
    CHECK(a_doc["stealthy"].size() == 17);
    CHECK(a_doc["exposing"].size() == 8);
    CHECK(a_doc["alphabet"] ==
          nlohmann::json({"a", "c", "c+", "c-", "d", "d+", "g", "g-"}));

    const SupremalSubstructure sub = trim_supremal(a);
    const nlohmann::json s_doc = supremal_json(sub);
    CHECK(s_doc["type"] == "supremal-substructure");
    CHECK(s_doc["states"].size() == 14);
    CHECK(s_doc["transitions"].size() == 24);
    CHECK(s_doc["preempting"] == nlohmann::json({"({6}|{5})"}));
    CHECK(s_doc["initial"] == "({0}|{0})");

    const MisleadingRelation rel = load_relation_file(fixture("relation-mislead5.json"), plant);
    const nlohmann::json v_doc = verdict_json(check_harmful(sub, rel), sub.host.bound);
    CHECK(v_doc["type"] == "harm-verdict");
    CHECK(v_doc["bound"] == "unbounded");
    CHECK(v_doc["harmful"] == true);
    REQUIRE(v_doc["witnesses"].size() == 1);
    CHECK(v_doc["witnesses"][0]["state"] == "({5}|{6})");
    CHECK(v_doc["witnesses"][0]["word"] == nlohmann::json({"a", "a", "c+"}));
    CHECK(v_doc["witnesses"][0]["observation"] == nlohmann::json({"a", "a"}));
    CHECK(v_doc["witnesses"][0]["corrupted"] == nlohmann::json({"a", "a", "c"}));
    CHECK(v_doc["unwitnessed"].empty());

    const nlohmann::json b_doc = verdict_json(
        check_harmful(trim_supremal(build_bounded_attack_structure(a, 1)), rel), 1);
    CHECK(b_doc["bound"] == 1);
    CHECK(b_doc["witnesses"][0]["state"] == "({5}|{6}|1)");
}
