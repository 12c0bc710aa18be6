#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "desat/attack.hpp"
#include "desat/dual_observers.hpp"
#include "desat/observer.hpp"
#include "desat/plant.hpp"

namespace desat {

/// A joint tracking state: what the attacker believes the plant can be in and
/// what the operator's console shows. Bounded structures additionally carry
/// the number of consecutive insertions just performed.
struct StatePair {
    Estimate attacker;
    Estimate operator_view;
    std::optional<int> counter;

    bool is_exposing() const { return operator_view.is_empty_sentinel(); }

    /// "({1,2}|{3})", "({1,2}|∅)", or "({1,2}|{3}|1)" when counted.
    std::string to_string() const {
        std::string out = "(" + attacker.to_string() + "|" + operator_view.to_string();
        if (counter) out += "|" + std::to_string(*counter);
        out += ")";
        return out;
    }

    auto operator<=>(const StatePair&) const = default;
};

using StatePairAutomaton = Dfa<StatePair, AttackEvent>;

/// The meeting of the attacker's and the operator's views over the attack
/// alphabet: its language is every attack word the attacker can realize that
/// is stealthy or exposes itself on its last symbol.
struct AttackStructure {
    StatePairAutomaton automaton;
    std::optional<int> bound; // absent = unbounded insertions
    std::set<StatePair> stealthy_states;
    std::set<StatePair> exposing_states;
};

/// Splits reachable states by the operator view: pairs whose operator estimate
/// is empty are exposing, the rest stealthy.
inline std::pair<std::set<StatePair>, std::set<StatePair>>
classify_states(const StatePairAutomaton& a) {
    std::set<StatePair> stealthy, exposing;
    for (const StatePair& r : a.states())
        (r.is_exposing() ? exposing : stealthy).insert(r);
    return {std::move(stealthy), std::move(exposing)};
}

/// Composes the attacker and operator observers of `plant` into the
/// unbounded attack structure.
inline AttackStructure build_unbounded_attack_structure(const PlantModel& plant) {
    const ObserverAutomaton obs = build_observer(plant);
    const std::set<EventId> e_ins = plant.insertable_set();
    const std::set<EventId> e_era = plant.erasable_set();
    const AttackObserverAutomaton att = build_attacker_observer(obs, e_ins, e_era);
    const AttackObserverAutomaton opr = build_operator_observer(obs, e_ins, e_era);
    auto prod = concurrent_composition(att, opr);
    StatePairAutomaton automaton = map_states(prod, [](const std::pair<Estimate, Estimate>& p) {
        return StatePair{p.first, p.second, std::nullopt};
    });
    auto [stealthy, exposing] = classify_states(automaton);
    return AttackStructure{std::move(automaton), std::nullopt, std::move(stealthy),
                           std::move(exposing)};
}

/// Composes an unbounded structure with the insertion counter, capping
/// consecutive insertions at `n`. States gain the counter component.
inline AttackStructure build_bounded_attack_structure(const AttackStructure& a_inf, int n) {
    if (a_inf.bound)
        throw DomainError("bounded structures are built from the unbounded one");
    const InsertionCounterAutomaton counter =
        build_bounded_attack_automaton(a_inf.automaton.alphabet(), n);
    auto prod = concurrent_composition(a_inf.automaton, counter);
    StatePairAutomaton automaton = map_states(prod, [](const std::pair<StatePair, int>& p) {
        return StatePair{p.first.attacker, p.first.operator_view, p.second};
    });
    auto [stealthy, exposing] = classify_states(automaton);
    return AttackStructure{std::move(automaton), n, std::move(stealthy), std::move(exposing)};
}

} // namespace desat
