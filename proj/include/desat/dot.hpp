#pragma once

#include <set>
#include <string>

#include "desat/attack_structure.hpp"
#include "desat/observer.hpp"
#include "desat/supremal.hpp"

namespace desat {

namespace detail {
inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string dot_header(const std::string& name) {
    return "digraph " + name + " {\n  rankdir=LR;\n  node [shape=circle];\n  __init [shape=point, label=\"\"];\n";
}
} // namespace detail

inline std::string observer_dot(const ObserverAutomaton& obs) {
    std::string out = detail::dot_header("observer");
    for (const Estimate& b : obs.states())
        out += "  " + detail::dot_quote(b.to_string()) + ";\n";
    out += "  __init -> " + detail::dot_quote(obs.initial().to_string()) + ";\n";
    obs.for_each_transition([&](const Estimate& src, const EventId& e, const Estimate& dst) {
        out += "  " + detail::dot_quote(src.to_string()) + " -> " +
               detail::dot_quote(dst.to_string()) + " [label=" + detail::dot_quote(e.name) +
               "];\n";
    });
    out += "}\n";
    return out;
}

/// Exposing states are gray; stealthy states outside the supremal region
/// (weakly exposing) are yellow when that region is supplied.
inline std::string attack_structure_dot(const AttackStructure& a,
                                        const std::set<StatePair>* supremal_region = nullptr) {
    std::string out = detail::dot_header("attack_structure");
    for (const StatePair& r : a.automaton.states()) {
        std::string attrs;
        if (r.is_exposing())
            attrs = " [style=filled, fillcolor=gray]";
        else if (supremal_region && !supremal_region->count(r))
            attrs = " [style=filled, fillcolor=yellow]";
        out += "  " + detail::dot_quote(r.to_string()) + attrs + ";\n";
    }
    out += "  __init -> " + detail::dot_quote(a.automaton.initial().to_string()) + ";\n";
    a.automaton.for_each_transition(
        [&](const StatePair& src, const AttackEvent& e, const StatePair& dst) {
            out += "  " + detail::dot_quote(src.to_string()) + " -> " +
                   detail::dot_quote(dst.to_string()) + " [label=" + detail::dot_quote(e.label()) +
                   "];\n";
        });
    out += "}\n";
    return out;
}

/// Preempting states get a double border; states in `harmful` are green.
inline std::string supremal_dot(const SupremalSubstructure& sub,
                                const std::set<StatePair>* harmful = nullptr) {
    std::string out = detail::dot_header("supremal_substructure");
    for (const StatePair& r : sub.automaton.states()) {
        std::string attrs;
        if (sub.preempting.count(r)) attrs += ", peripheries=2";
        if (harmful && harmful->count(r)) attrs += ", style=filled, fillcolor=green";
        if (!attrs.empty()) attrs = " [" + attrs.substr(2) + "]";
        out += "  " + detail::dot_quote(r.to_string()) + attrs + ";\n";
    }
    out += "  __init -> " + detail::dot_quote(sub.automaton.initial().to_string()) + ";\n";
    sub.automaton.for_each_transition(
        [&](const StatePair& src, const AttackEvent& e, const StatePair& dst) {
            out += "  " + detail::dot_quote(src.to_string()) + " -> " +
                   detail::dot_quote(dst.to_string()) + " [label=" + detail::dot_quote(e.label()) +
                   "];\n";
        });
    out += "}\n";
    return out;
}

} // namespace desat
