#pragma once

#include <compare>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "desat/dfa.hpp"
#include "desat/errors.hpp"
#include "desat/event.hpp"

namespace desat {

/// How an attack symbol relates to the sensor channel: a genuine observable
/// event passed through, a fabricated copy inserted by the attacker, or a
/// genuine occurrence erased before the operator sees it.
enum class AttackKind { Plain, Insert, Erase };

/// A symbol of the attack alphabet. Rendered as "e", "e+", "e-"; the
/// enumerator order matches the label order because names never contain
/// '+' or '-'.
struct AttackEvent {
    EventId event;
    AttackKind kind = AttackKind::Plain;

    static AttackEvent plain(EventId e) { return {std::move(e), AttackKind::Plain}; }
    static AttackEvent insert(EventId e) { return {std::move(e), AttackKind::Insert}; }
    static AttackEvent erase(EventId e) { return {std::move(e), AttackKind::Erase}; }

    bool is_plain() const { return kind == AttackKind::Plain; }
    bool is_insert() const { return kind == AttackKind::Insert; }
    bool is_erase() const { return kind == AttackKind::Erase; }

    std::string label() const {
        switch (kind) {
            case AttackKind::Insert: return event.name + "+";
            case AttackKind::Erase: return event.name + "-";
            default: return event.name;
        }
    }

    auto operator<=>(const AttackEvent&) const = default;
};

using AttackWord = std::vector<AttackEvent>;

/// Parses "e" / "e+" / "e-" back into an attack event.
inline AttackEvent parse_attack_label(const std::string& label) {
    if (label.empty()) throw MalformedInputError("empty attack event label");
    const char tail = label.back();
    if (tail == '+' || tail == '-') {
        std::string name = label.substr(0, label.size() - 1);
        require_valid_symbol_name(name, "event");
        return tail == '+' ? AttackEvent::insert(EventId(name)) : AttackEvent::erase(EventId(name));
    }
    require_valid_symbol_name(label, "event");
    return AttackEvent::plain(EventId(label));
}

/// "a a c+" with "ε" for the empty word.
inline std::string word_label(std::span<const AttackEvent> word) {
    if (word.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += ' ';
        out += word[i].label();
    }
    return out;
}

/// "a a c" with "ε" for the empty observation.
inline std::string observation_label(std::span<const EventId> word) {
    if (word.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += ' ';
        out += word[i].name;
    }
    return out;
}

/// The attack alphabet over observable events `e_o` with insertable events
/// `e_ins` and erasable events `e_era` (both subsets of `e_o`, may overlap).
inline std::vector<AttackEvent> make_attack_alphabet(const std::set<EventId>& e_o,
                                                     const std::set<EventId>& e_ins,
                                                     const std::set<EventId>& e_era) {
    for (const auto& e : e_ins)
        if (!e_o.count(e))
            throw MalformedInputError("insertable event \"" + e.name + "\" is not observable");
    for (const auto& e : e_era)
        if (!e_o.count(e))
            throw MalformedInputError("erasable event \"" + e.name + "\" is not observable");
    std::vector<AttackEvent> out;
    for (const auto& e : e_o) out.push_back(AttackEvent::plain(e));
    for (const auto& e : e_ins) out.push_back(AttackEvent::insert(e));
    for (const auto& e : e_era) out.push_back(AttackEvent::erase(e));
    std::sort(out.begin(), out.end());
    return out;
}

/// What the operator's sensors deliver: erased events vanish, inserted and
/// plain ones arrive as the underlying observable event.
inline std::vector<EventId> reduction_projection(std::span<const AttackEvent> word) {
    std::vector<EventId> out;
    for (const AttackEvent& a : word)
        if (!a.is_erase()) out.push_back(a.event);
    return out;
}

/// What the plant actually produced: inserted events vanish, plain and erased
/// ones really happened.
inline std::vector<EventId> attacked_observation(std::span<const AttackEvent> word) {
    std::vector<EventId> out;
    for (const AttackEvent& a : word)
        if (!a.is_insert()) out.push_back(a.event);
    return out;
}

/// Length of the longest run of consecutive insertions in `word`.
inline int max_consecutive_insertions(std::span<const AttackEvent> word) {
    int best = 0, run = 0;
    for (const AttackEvent& a : word) {
        run = a.is_insert() ? run + 1 : 0;
        if (run > best) best = run;
    }
    return best;
}

/// Counter automaton bounding insertion bursts: states 0..n count consecutive
/// insertions, every non-insertion resets to 0, and an insertion at n is
/// undefined. Total over `attack_alphabet` otherwise.
using InsertionCounterAutomaton = Dfa<int, AttackEvent>;

inline InsertionCounterAutomaton
build_bounded_attack_automaton(const std::vector<AttackEvent>& attack_alphabet, int n) {
    if (n < 0) throw DomainError("insertion bound must be non-negative");
    InsertionCounterAutomaton counter(0, attack_alphabet);
    for (int i = 0; i <= n; ++i) counter.add_state(i);
    for (int i = 0; i <= n; ++i) {
        for (const AttackEvent& a : attack_alphabet) {
            if (a.is_insert()) {
                if (i < n) counter.add_transition(i, a, i + 1);
            } else {
                counter.add_transition(i, a, 0);
            }
        }
    }
    return counter;
}

} // namespace desat
