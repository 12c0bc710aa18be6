#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "desat/errors.hpp"
#include "desat/event.hpp"

namespace desat {

/// A partially observed plant: a partial deterministic automaton whose event
/// set is split into observable and unobservable events, with the sensor
/// events an attacker can insert or erase singled out among the observable
/// ones. Instances are plain data; validate() checks every structural rule.
struct PlantModel {
    std::vector<StateId> states;
    StateId initial;
    std::vector<EventId> observable;
    std::vector<EventId> unobservable;
    std::vector<EventId> insertable;
    std::vector<EventId> erasable;
    std::map<std::pair<StateId, EventId>, StateId> transitions;

    bool has_state(const StateId& x) const {
        for (const auto& s : states)
            if (s == x) return true;
        return false;
    }

    bool is_observable(const EventId& e) const { return contains(observable, e); }
    bool is_unobservable(const EventId& e) const { return contains(unobservable, e); }
    bool is_insertable(const EventId& e) const { return contains(insertable, e); }
    bool is_erasable(const EventId& e) const { return contains(erasable, e); }
    bool is_event(const EventId& e) const { return is_observable(e) || is_unobservable(e); }

    std::optional<StateId> step(const StateId& x, const EventId& e) const {
        auto it = transitions.find({x, e});
        if (it == transitions.end()) return std::nullopt;
        return it->second;
    }

    std::set<EventId> observable_set() const { return {observable.begin(), observable.end()}; }
    std::set<EventId> insertable_set() const { return {insertable.begin(), insertable.end()}; }
    std::set<EventId> erasable_set() const { return {erasable.begin(), erasable.end()}; }

    /// States reachable from the initial state under all events.
    std::set<StateId> reachable_states() const {
        std::set<StateId> seen{initial};
        std::vector<StateId> todo{initial};
        while (!todo.empty()) {
            StateId x = std::move(todo.back());
            todo.pop_back();
            for (const auto& [key, dst] : transitions) {
                if (key.first != x) continue;
                if (seen.insert(dst).second) todo.push_back(dst);
            }
        }
        return seen;
    }

    void validate() const {
        std::set<StateId> state_set;
        for (const auto& x : states) {
            require_valid_symbol_name(x, "state");
            if (!state_set.insert(x).second)
                throw MalformedInputError("duplicate state \"" + x + "\"");
        }
        if (states.empty()) throw MalformedInputError("plant has no states");
        if (!state_set.count(initial))
            throw MalformedInputError("initial state \"" + initial + "\" is not a declared state");

        std::set<EventId> event_set;
        for (const auto* list : {&observable, &unobservable}) {
            for (const auto& e : *list) {
                require_valid_symbol_name(e.name, "event");
                if (!event_set.insert(e).second)
                    throw MalformedInputError("event \"" + e.name +
                                              "\" declared twice across observable/unobservable");
            }
        }
        for (const auto& e : insertable)
            if (!is_observable(e))
                throw MalformedInputError("insertable event \"" + e.name + "\" is not observable");
        for (const auto& e : erasable)
            if (!is_observable(e))
                throw MalformedInputError("erasable event \"" + e.name + "\" is not observable");
        for (const auto* list : {&insertable, &erasable}) {
            std::set<EventId> seen;
            for (const auto& e : *list)
                if (!seen.insert(e).second)
                    throw MalformedInputError("event \"" + e.name + "\" listed twice");
        }

        for (const auto& [key, dst] : transitions) {
            const auto& [src, e] = key;
            if (!state_set.count(src))
                throw MalformedInputError("transition from undeclared state \"" + src + "\"");
            if (!state_set.count(dst))
                throw MalformedInputError("transition to undeclared state \"" + dst + "\"");
            if (!event_set.count(e))
                throw MalformedInputError("transition on undeclared event \"" + e.name + "\"");
        }
    }

private:
    static bool contains(const std::vector<EventId>& v, const EventId& e) {
        for (const auto& x : v)
            if (x == e) return true;
        return false;
    }
};

} // namespace desat
