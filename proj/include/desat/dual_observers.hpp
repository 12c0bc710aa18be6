#pragma once

#include <set>

#include "desat/attack.hpp"
#include "desat/estimate.hpp"
#include "desat/observer.hpp"

namespace desat {

/// An observer lifted to the attack alphabet; states remain estimates.
using AttackObserverAutomaton = Dfa<Estimate, AttackEvent>;

namespace detail {
inline void require_subalphabets(const ObserverAutomaton& obs, const std::set<EventId>& e_ins,
                                 const std::set<EventId>& e_era) {
    for (const auto& e : e_ins)
        if (!obs.has_symbol(e))
            throw MalformedInputError("insertable event \"" + e.name +
                                      "\" is not an observable event of the observer");
    for (const auto& e : e_era)
        if (!obs.has_symbol(e))
            throw MalformedInputError("erasable event \"" + e.name +
                                      "\" is not an observable event of the observer");
}
} // namespace detail

/// How the attacker tracks the plant: genuine events (passed or erased) drive
/// the underlying observer, while its own insertions tell it nothing, so every
/// insertable event self-loops at every estimate.
inline AttackObserverAutomaton build_attacker_observer(const ObserverAutomaton& obs,
                                                       const std::set<EventId>& e_ins,
                                                       const std::set<EventId>& e_era) {
    detail::require_subalphabets(obs, e_ins, e_era);
    std::set<EventId> e_o(obs.alphabet().begin(), obs.alphabet().end());
    AttackObserverAutomaton att(obs.initial(), make_attack_alphabet(e_o, e_ins, e_era));
    for (const Estimate& b : obs.states()) att.add_state(b);
    obs.for_each_transition([&](const Estimate& src, const EventId& e, const Estimate& dst) {
        att.add_transition(src, AttackEvent::plain(e), dst);
        if (e_era.count(e)) att.add_transition(src, AttackEvent::erase(e), dst);
    });
    for (const Estimate& b : att.states())
        for (const EventId& e : e_ins) att.add_transition(b, AttackEvent::insert(e), b);
    return att;
}

/// How the operator tracks the plant: delivered events (plain or inserted)
/// drive the underlying observer, erased events are invisible self-loops, and
/// every remaining pair falls into the empty estimate, which has no way out.
inline AttackObserverAutomaton build_operator_observer(const ObserverAutomaton& obs,
                                                       const std::set<EventId>& e_ins,
                                                       const std::set<EventId>& e_era) {
    detail::require_subalphabets(obs, e_ins, e_era);
    std::set<EventId> e_o(obs.alphabet().begin(), obs.alphabet().end());
    AttackObserverAutomaton opr(obs.initial(), make_attack_alphabet(e_o, e_ins, e_era));
    for (const Estimate& b : obs.states()) opr.add_state(b);
    obs.for_each_transition([&](const Estimate& src, const EventId& e, const Estimate& dst) {
        opr.add_transition(src, AttackEvent::plain(e), dst);
        if (e_ins.count(e)) opr.add_transition(src, AttackEvent::insert(e), dst);
    });
    const Estimate dead = Estimate::empty_sentinel();
    opr.add_state(dead);
    for (const Estimate& b : opr.states()) {
        if (b.is_empty_sentinel()) continue;
        for (const EventId& e : e_era) opr.add_transition(b, AttackEvent::erase(e), b);
        for (const AttackEvent& a : opr.alphabet())
            if (!opr.defined(b, a)) opr.add_transition(b, a, dead);
    }
    return opr;
}

} // namespace desat
