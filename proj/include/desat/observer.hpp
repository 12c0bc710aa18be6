#pragma once

#include <set>
#include <span>
#include <vector>

#include "desat/dfa.hpp"
#include "desat/errors.hpp"
#include "desat/estimate.hpp"
#include "desat/plant.hpp"

namespace desat {

/// Subset-construction observer: states are estimates, symbols the plant's
/// observable events, and only estimates reachable from the initial one exist.
using ObserverAutomaton = Dfa<Estimate, EventId>;

/// Erases from `word` every event outside `sub_alphabet`, keeping order.
inline std::vector<EventId> natural_projection(std::span<const EventId> word,
                                               const std::set<EventId>& sub_alphabet) {
    std::vector<EventId> out;
    for (const EventId& e : word)
        if (sub_alphabet.count(e)) out.push_back(e);
    return out;
}

/// States reachable from `seed` through unobservable events alone, including
/// the seed itself.
inline std::set<StateId> unobservable_reach(const PlantModel& plant,
                                            const std::set<StateId>& seed) {
    for (const StateId& x : seed)
        if (!plant.has_state(x))
            throw MalformedInputError("unobservable_reach: state \"" + x +
                                      "\" is not in the plant");
    std::set<StateId> reach = seed;
    std::vector<StateId> todo(seed.begin(), seed.end());
    while (!todo.empty()) {
        StateId x = std::move(todo.back());
        todo.pop_back();
        for (const EventId& u : plant.unobservable) {
            auto next = plant.step(x, u);
            if (next && reach.insert(*next).second) todo.push_back(*next);
        }
    }
    return reach;
}

/// The estimate reached from `b` when `e` is observed: unobservable reach of
/// the e-successors of b's members. Empty set means the move is undefined.
inline std::set<StateId> observer_step_set(const PlantModel& plant, const Estimate& b,
                                           const EventId& e) {
    std::set<StateId> post;
    for (const StateId& x : b.members()) {
        auto next = plant.step(x, e);
        if (next) post.insert(*next);
    }
    if (post.empty()) return post;
    return unobservable_reach(plant, post);
}

/// Builds the observer of `plant` by breadth-first subset construction.
/// A (state, event) pair with no successor simply has no transition.
inline ObserverAutomaton build_observer(const PlantModel& plant) {
    plant.validate();
    const Estimate b0 = Estimate::of(unobservable_reach(plant, {plant.initial}));
    ObserverAutomaton obs(b0, std::vector<EventId>(plant.observable));

    std::vector<Estimate> frontier{b0};
    while (!frontier.empty()) {
        std::vector<Estimate> next_frontier;
        for (const Estimate& b : frontier) {
            for (const EventId& e : obs.alphabet()) {
                std::set<StateId> post = observer_step_set(plant, b, e);
                if (post.empty()) continue;
                Estimate dst = Estimate::of(post);
                const bool fresh = !obs.has_state(dst);
                obs.add_transition(b, e, dst);
                if (fresh) next_frontier.push_back(std::move(dst));
            }
        }
        frontier = std::move(next_frontier);
    }
    return obs;
}

} // namespace desat
