#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "desat/attack_structure.hpp"

namespace desat {

/// A set of stealthy states of some attack structure, used as the iteration
/// variable of the safety fixpoint.
using StealthyRegion = std::set<StatePair>;

namespace detail {
inline void require_stealthy_region(const AttackStructure& a, const StealthyRegion& region) {
    for (const StatePair& r : region)
        if (!a.stealthy_states.count(r))
            throw DomainError("region contains " + r.to_string() +
                              ", which is not a stealthy state of the structure");
}

inline bool erasable_in(const StatePairAutomaton& a, const EventId& e) {
    return a.has_symbol(AttackEvent::erase(e));
}
} // namespace detail

/// States of `region` that survive one round of plant pressure: every genuine
/// event that would leave `region` can be hidden by erasing it without leaving
/// `region`. Events with no transition pose no threat.
inline StealthyRegion g1(const AttackStructure& a, const StealthyRegion& region) {
    detail::require_stealthy_region(a, region);
    StealthyRegion kept;
    for (const StatePair& r : region) {
        bool safe = true;
        for (const auto& [sym, dst] : a.automaton.successors(r)) {
            if (!sym.is_plain()) continue;
            if (region.count(dst)) continue;
            bool dodge = false;
            if (detail::erasable_in(a.automaton, sym.event)) {
                auto hidden = a.automaton.step(r, AttackEvent::erase(sym.event));
                dodge = hidden && region.count(*hidden) != 0;
            }
            if (!dodge) {
                safe = false;
                break;
            }
        }
        if (safe) kept.insert(r);
    }
    return kept;
}

/// States of `region` outside g1 that can reach g1 through one or more
/// insertions whose intermediate states all stay inside `region`.
inline StealthyRegion g2(const AttackStructure& a, const StealthyRegion& region) {
    const StealthyRegion settled = g1(a, region);

    // Reverse insertion edges within the region, then walk back from g1.
    std::map<StatePair, std::vector<StatePair>> preds;
    for (const StatePair& r : region)
        for (const auto& [sym, dst] : a.automaton.successors(r))
            if (sym.is_insert() && region.count(dst)) preds[dst].push_back(r);

    StealthyRegion can_reach;
    std::vector<StatePair> todo(settled.begin(), settled.end());
    while (!todo.empty()) {
        StatePair cur = std::move(todo.back());
        todo.pop_back();
        auto it = preds.find(cur);
        if (it == preds.end()) continue;
        for (const StatePair& p : it->second)
            if (can_reach.insert(p).second) todo.push_back(p);
    }

    StealthyRegion out;
    for (const StatePair& r : can_reach)
        if (!settled.count(r)) out.insert(r);
    return out;
}

/// One application of the safety operator.
inline StealthyRegion g_step(const AttackStructure& a, const StealthyRegion& region) {
    StealthyRegion out = g1(a, region);
    StealthyRegion insed = g2(a, region);
    out.insert(insed.begin(), insed.end());
    return out;
}

/// Largest region of stealthy states the attacker can hold forever: iterates
/// the safety operator down from all stealthy states until it stabilizes.
/// The operator is monotone and shrinking, so this takes at most |R_s| rounds.
inline StealthyRegion supremal_fixed_point(const AttackStructure& a) {
    StealthyRegion region = a.stealthy_states;
    for (;;) {
        StealthyRegion next = g_step(a, region);
        if (next == region) return region;
        region = std::move(next);
    }
}

/// The supremal stealthy substructure: the host restricted to the fixpoint
/// region, accessible part only, together with the preempting split of its
/// states.
struct SupremalSubstructure {
    StatePairAutomaton automaton; // the trimmed structure
    AttackStructure host;         // the structure it was carved from
    StealthyRegion preempting;     // states some genuine event forces out of
    StealthyRegion non_preempting; // states that can sit out any genuine event
};

/// States of the trimmed structure from which some genuine event exits the
/// kept region unavoidably (erasing it, if possible, also exits). At such a
/// state the attacker must insert its way out before the plant moves again.
inline StealthyRegion preempting_states(const StatePairAutomaton& trimmed,
                                        const AttackStructure& host) {
    StealthyRegion kept_set;
    for (const StatePair& r : trimmed.states()) kept_set.insert(r);

    StealthyRegion out;
    for (const StatePair& r : trimmed.states()) {
        for (const auto& [sym, dst] : host.automaton.successors(r)) {
            if (!sym.is_plain()) continue;
            if (kept_set.count(dst)) continue;
            bool dodge = false;
            if (detail::erasable_in(host.automaton, sym.event)) {
                auto hidden = host.automaton.step(r, AttackEvent::erase(sym.event));
                dodge = hidden && kept_set.count(*hidden) != 0;
            }
            if (!dodge) {
                out.insert(r);
                break;
            }
        }
    }
    return out;
}

inline StealthyRegion preempting_states(const SupremalSubstructure& sub) {
    return preempting_states(sub.automaton, sub.host);
}

inline SupremalSubstructure trim_supremal(const AttackStructure& a) {
    const StealthyRegion region = supremal_fixed_point(a);
    const StatePair r0 = a.automaton.initial();
    if (!region.count(r0))
        throw std::logic_error("initial state fell out of the supremal fixpoint");

    StatePairAutomaton trimmed(r0, a.automaton.alphabet());
    std::vector<StatePair> frontier{r0};
    while (!frontier.empty()) {
        std::vector<StatePair> next_frontier;
        for (const StatePair& r : frontier) {
            for (const auto& [sym, dst] : a.automaton.successors(r)) {
                if (!region.count(dst)) continue;
                const bool fresh = !trimmed.has_state(dst);
                trimmed.add_transition(r, sym, dst);
                if (fresh) next_frontier.push_back(dst);
            }
        }
        frontier = std::move(next_frontier);
    }

    StealthyRegion pre = preempting_states(trimmed, a);
    StealthyRegion non;
    for (const StatePair& r : trimmed.states())
        if (!pre.count(r)) non.insert(r);
    return SupremalSubstructure{std::move(trimmed), a, std::move(pre), std::move(non)};
}

namespace detail {
struct WordOrder {
    bool operator()(const AttackWord& a, const AttackWord& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};
} // namespace detail

/// Insertion words available at `r` for reaching a non-preempting state while
/// staying inside the trimmed structure. Enumerates words along simple paths
/// only (longer words revisit a state and add no new targets); contains the
/// empty word exactly when `r` itself is non-preempting. Sorted shortest
/// first, then lexicographically by label.
inline std::vector<AttackWord> insertion_escapes(const SupremalSubstructure& sub,
                                                 const StatePair& r) {
    if (!sub.automaton.has_state(r))
        throw DomainError("insertion_escapes: " + r.to_string() +
                          " is not a state of the supremal substructure");

    std::vector<AttackWord> out;
    if (sub.non_preempting.count(r)) out.push_back({});

    struct Path {
        AttackWord word;
        StatePair at;
        std::set<StatePair> visited;
    };
    std::vector<Path> stack{{{}, r, {r}}};
    while (!stack.empty()) {
        Path p = std::move(stack.back());
        stack.pop_back();
        for (const auto& [sym, dst] : sub.automaton.successors(p.at)) {
            if (!sym.is_insert()) continue;
            if (p.visited.count(dst)) continue;
            Path q;
            q.word = p.word;
            q.word.push_back(sym);
            q.at = dst;
            q.visited = p.visited;
            q.visited.insert(dst);
            if (sub.non_preempting.count(dst)) out.push_back(q.word);
            stack.push_back(std::move(q));
        }
    }
    std::sort(out.begin(), out.end(), detail::WordOrder{});
    return out;
}

} // namespace desat
