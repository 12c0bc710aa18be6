#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <set>
#include <vector>

#include "desat/supremal.hpp"

#include "support/enumerate.hpp"
#include "support/fixture.hpp"
#include "support/oracle.hpp"
#include "support/random_plants.hpp"

using namespace desat;
using desat::testing::for_each_language_word;
using desat::testing::paper_plant;
using desat::testing::random_plant;

namespace {

Estimate est(std::initializer_list<const char*> xs) {
    std::vector<StateId> v;
    for (const char* x : xs) v.push_back(x);
    return Estimate::of(std::move(v));
}

StatePair pair(Estimate a, Estimate o) { return StatePair{std::move(a), std::move(o), std::nullopt}; }

AttackWord parse_word(std::initializer_list<const char*> labels) {
    AttackWord out;
    for (const char* l : labels) out.push_back(parse_attack_label(l));
    return out;
}

StealthyRegion region_of(const StatePairAutomaton& a) {
    StealthyRegion out;
    for (const StatePair& r : a.states()) out.insert(r);
    return out;
}

std::set<AttackWord> language_of(const StatePairAutomaton& a, int max_len) {
    std::set<AttackWord> out;
    for_each_language_word<StatePair, AttackEvent>(
        a, max_len, [&](const std::vector<AttackEvent>& w) { out.insert(w); });
    return out;
}

} // namespace

TEST_CASE("one round of the safety operator on the paper structure") {
    const AttackStructure a = build_unbounded_attack_structure(paper_plant());

    const StealthyRegion settled = g1(a, a.stealthy_states);
    StealthyRegion expected_g1 = a.stealthy_states;
    expected_g1.erase(pair(est({"6"}), est({"5"})));
    expected_g1.erase(pair(est({"6"}), est({"4"})));
    CHECK(settled == expected_g1);

    // ({6}|{5}) is rescued by inserting c; ({6}|{4}) has no insertion story.
    const StealthyRegion rescued = g2(a, a.stealthy_states);
    CHECK(rescued == StealthyRegion{pair(est({"6"}), est({"5"}))});

    StealthyRegion after = a.stealthy_states;
    after.erase(pair(est({"6"}), est({"4"})));
    CHECK(g_step(a, a.stealthy_states) == after);

    CHECK_THROWS_AS(g1(a, StealthyRegion{pair(est({"0"}), Estimate::empty_sentinel())}),
                    DomainError);
}

TEST_CASE("supremal fixpoint of the paper structure drops three states") {
    const AttackStructure a = build_unbounded_attack_structure(paper_plant());
    StealthyRegion expected = a.stealthy_states;
    expected.erase(pair(est({"6"}), est({"4"})));  // round 1
    expected.erase(pair(est({"5"}), est({"4"})));  // round 2
    expected.erase(pair(est({"1", "2"}), est({"3"}))); // round 3
    const StealthyRegion fixed = supremal_fixed_point(a);
    CHECK(fixed.size() == 14);
    CHECK(fixed == expected);
    CHECK(g_step(a, fixed) == fixed);
}

TEST_CASE("trimmed supremal substructure of the paper plant") {
    const SupremalSubstructure sub = trim_supremal(build_unbounded_attack_structure(paper_plant()));
    CHECK(sub.automaton.num_states() == 14);
    CHECK(sub.automaton.num_transitions() == 24);

    const std::vector<std::tuple<StatePair, const char*, StatePair>> edges = {
        {pair(est({"0"}), est({"0"})), "a", pair(est({"1", "2"}), est({"1", "2"}))},
        {pair(est({"1", "2"}), est({"1", "2"})), "a", pair(est({"5"}), est({"5"}))},
        {pair(est({"1", "2"}), est({"1", "2"})), "c", pair(est({"3"}), est({"3"}))},
        {pair(est({"1", "2"}), est({"1", "2"})), "c-", pair(est({"3"}), est({"1", "2"}))},
        {pair(est({"3"}), est({"3"})), "a", pair(est({"4"}), est({"4"}))},
        {pair(est({"3"}), est({"1", "2"})), "a", pair(est({"4"}), est({"5"}))},
        {pair(est({"3"}), est({"1", "2"})), "c+", pair(est({"3"}), est({"3"}))},
        {pair(est({"5"}), est({"5"})), "c", pair(est({"6"}), est({"6"}))},
        {pair(est({"5"}), est({"5"})), "c-", pair(est({"6"}), est({"5"}))},
        {pair(est({"5"}), est({"5"})), "c+", pair(est({"5"}), est({"6"}))},
        {pair(est({"5"}), est({"6"})), "c-", pair(est({"6"}), est({"6"}))},
        {pair(est({"6"}), est({"5"})), "c+", pair(est({"6"}), est({"6"}))},
        {pair(est({"6"}), est({"6"})), "a", pair(est({"7", "8"}), est({"7", "8"}))},
        {pair(est({"4"}), est({"4"})), "g", pair(est({"4"}), est({"4"}))},
        {pair(est({"4"}), est({"4"})), "g-", pair(est({"4"}), est({"4"}))},
        {pair(est({"4"}), est({"5"})), "g-", pair(est({"4"}), est({"5"}))},
        {pair(est({"4"}), est({"5"})), "c+", pair(est({"4"}), est({"6"}))},
        {pair(est({"4"}), est({"6"})), "g-", pair(est({"4"}), est({"6"}))},
        {pair(est({"7", "8"}), est({"7", "8"})), "d", pair(est({"8"}), est({"8"}))},
        {pair(est({"7", "8"}), est({"7", "8"})), "d+", pair(est({"7", "8"}), est({"8"}))},
        {pair(est({"7", "8"}), est({"8"})), "d", pair(est({"8"}), est({"8"}))},
        {pair(est({"7", "8"}), est({"8"})), "d+", pair(est({"7", "8"}), est({"8"}))},
        {pair(est({"8"}), est({"8"})), "d", pair(est({"8"}), est({"8"}))},
        {pair(est({"8"}), est({"8"})), "d+", pair(est({"8"}), est({"8"}))},
    };
    for (const auto& [src, label, dst] : edges) {
        const auto got = sub.automaton.step(src, parse_attack_label(label));
        REQUIRE(got.has_value());
        CHECK(*got == dst);
    }

    // Only ({6}|{5}) must insert before the plant moves again.
    CHECK(sub.preempting == StealthyRegion{pair(est({"6"}), est({"5"}))});
    CHECK(sub.non_preempting.size() == 13);
    CHECK(sub.non_preempting.count(pair(est({"5"}), est({"6"}))) == 1);
}

TEST_CASE("insertion escapes at paper states") {
    const SupremalSubstructure sub = trim_supremal(build_unbounded_attack_structure(paper_plant()));

    const auto at_pre = insertion_escapes(sub, pair(est({"6"}), est({"5"})));
    REQUIRE(at_pre.size() == 1);
    CHECK(at_pre[0] == parse_word({"c+"}));

    const auto at_55 = insertion_escapes(sub, pair(est({"5"}), est({"5"})));
    REQUIRE(at_55.size() == 2);
    CHECK(at_55[0].empty());
    CHECK(at_55[1] == parse_word({"c+"}));

    const auto at_312 = insertion_escapes(sub, pair(est({"3"}), est({"1", "2"})));
    REQUIRE(at_312.size() == 2);
    CHECK(at_312[0].empty());
    CHECK(at_312[1] == parse_word({"c+"}));

    const auto at_root = insertion_escapes(sub, pair(est({"0"}), est({"0"})));
    REQUIRE(at_root.size() == 1);
    CHECK(at_root[0].empty());

    CHECK_THROWS_AS(insertion_escapes(sub, pair(est({"6"}), est({"4"}))), DomainError);
}

TEST_CASE("fixpoint region properties for random plants") {
    for (std::uint64_t seed = 500; seed < 525; ++seed) {
        const PlantModel plant = random_plant(seed);
        const AttackStructure a = build_unbounded_attack_structure(plant);
        const StealthyRegion fixed = supremal_fixed_point(a);

        // Stability.
        CHECK(g_step(a, fixed) == fixed);

        // Every fixed region is below the supremal one: iterate the operator
        // down from random seeds of stealthy states and compare.
        desat::testing::SplitMix64 rng(seed * 977);
        for (int round = 0; round < 5; ++round) {
            StealthyRegion start;
            for (const StatePair& r : a.stealthy_states)
                if (rng.chance(60)) start.insert(r);
            StealthyRegion cur = std::move(start);
            for (;;) {
                StealthyRegion next = g_step(a, cur);
                if (next == cur) break;
                cur = std::move(next);
            }
            for (const StatePair& r : cur) CHECK(fixed.count(r) == 1);
        }

        // Doing nothing is always stealthy, so the initial state survives and
        // the trim must go through.
        const SupremalSubstructure sub = trim_supremal(a);
        CHECK(sub.automaton.has_state(a.automaton.initial()));

        // The preempting states of the trimmed region are exactly the ones the
        // one-round operator would have to rescue by insertion.
        const StealthyRegion kept = region_of(sub.automaton);
        CHECK(sub.preempting == g2(a, kept));
        for (const StatePair& r : sub.preempting) CHECK(sub.non_preempting.count(r) == 0);

        // Escapes land on non-preempting states without leaving the structure,
        // and the empty escape marks exactly the non-preempting states.
        for (const StatePair& r : sub.automaton.states()) {
            const auto escapes = insertion_escapes(sub, r);
            const bool resting = sub.non_preempting.count(r) != 0;
            CHECK(!escapes.empty() || !resting);
            for (const AttackWord& w : escapes) {
                CHECK(w.empty() == resting);
                if (w.empty()) continue;
                for (const AttackEvent& sym : w) CHECK(sym.is_insert());
                const auto landed = sub.automaton.run_from(r, w);
                REQUIRE(landed.has_value());
                CHECK(sub.non_preempting.count(*landed) == 1);
                break; // first non-empty word is enough per state
            }
        }
    }
}

TEST_CASE("trimmed language equals the game-maintainable words on the paper plant") {
    const PlantModel plant = paper_plant();
    const SupremalSubstructure sub = trim_supremal(build_unbounded_attack_structure(plant));
    const auto expected = desat::oracle::oracle_maintainable(
        plant, plant.insertable_set(), plant.erasable_set(), std::nullopt, 6);
    CHECK(language_of(sub.automaton, 6) == expected);
}

TEST_CASE("trimmed language equals the game-maintainable words on random plants") {
    for (std::uint64_t seed = 600; seed < 615; ++seed) {
        const PlantModel plant = random_plant(seed);
        const AttackStructure a_inf = build_unbounded_attack_structure(plant);
        const auto e_ins = plant.insertable_set();
        const auto e_era = plant.erasable_set();

        const SupremalSubstructure unbounded = trim_supremal(a_inf);
        CHECK(language_of(unbounded.automaton, 5) ==
              desat::oracle::oracle_maintainable(plant, e_ins, e_era, std::nullopt, 5));

        for (int n = 0; n <= 1; ++n) {
            const SupremalSubstructure sub = trim_supremal(build_bounded_attack_structure(a_inf, n));
            CHECK(language_of(sub.automaton, 5) ==
                  desat::oracle::oracle_maintainable(plant, e_ins, e_era, n, 5));
        }
    }
}
