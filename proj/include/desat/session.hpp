#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "desat/supremal.hpp"

namespace desat {

/// One admissible reaction to a genuine event: pass it through or erase it,
/// then optionally insert an escape word. Escapes are exactly the insertion
/// words valid at the successor, shortest first.
struct SessionOption {
    AttackEvent first_move;
    std::vector<AttackWord> escapes;
};

/// A live attack run over a supremal substructure. Between genuine events the
/// session always rests at a non-preempting state, so any producible event can
/// be answered. The substructure must outlive the session.
class AttackSession {
public:
    const SupremalSubstructure& substructure() const { return *sub_; }
    const StatePair& current() const { return current_; }
    const AttackWord& transcript() const { return transcript_; }
    const std::vector<EventId>& observation() const { return observation_; }

    /// The attack function built so far: one entry per prefix of the
    /// observation, in order, mapping it to the corrupted run emitted by then.
    const std::vector<std::pair<std::vector<EventId>, AttackWord>>& attack_function_trace() const {
        return trace_;
    }

private:
    AttackSession(const SupremalSubstructure& sub, StatePair at, AttackWord transcript)
        : sub_(&sub), current_(std::move(at)), transcript_(std::move(transcript)) {
        trace_.emplace_back(observation_, transcript_);
    }

    const SupremalSubstructure* sub_;
    StatePair current_;
    AttackWord transcript_;
    std::vector<EventId> observation_;
    std::vector<std::pair<std::vector<EventId>, AttackWord>> trace_;

    friend AttackSession session_start(const SupremalSubstructure&, const AttackWord&);
    friend AttackSession session_step(const AttackSession&, const EventId&, const AttackEvent&,
                                      const AttackWord&);
};

/// Opens a session with an initial insertion word, which must be one of the
/// escapes available at the substructure's initial state.
inline AttackSession session_start(const SupremalSubstructure& sub, const AttackWord& w_plus) {
    const std::vector<AttackWord> escapes = insertion_escapes(sub, sub.automaton.initial());
    if (std::find(escapes.begin(), escapes.end(), w_plus) == escapes.end())
        throw InvalidChoiceError("initial insertion word " + word_label(w_plus) +
                                 " is not an escape at " + sub.automaton.initial().to_string());
    StatePair at = *sub.automaton.run_from(sub.automaton.initial(), w_plus);
    return AttackSession(sub, std::move(at), w_plus);
}

/// Reactions available when the plant produces observable event `e`: pass or
/// erase, whichever stay inside the substructure, each paired with the escape
/// words of its successor. `e` must be producible at the current attacker
/// estimate; options are never empty then.
inline std::vector<SessionOption> session_options(const AttackSession& sess, const EventId& e) {
    const SupremalSubstructure& sub = sess.substructure();
    if (!sub.automaton.has_symbol(AttackEvent::plain(e)))
        throw ProtocolError("event \"" + e.name + "\" is not an observable event");
    if (!sub.host.automaton.defined(sess.current(), AttackEvent::plain(e)))
        throw ProtocolError("the plant cannot produce \"" + e.name + "\" at " +
                            sess.current().to_string());

    std::vector<SessionOption> options;
    for (const AttackEvent move : {AttackEvent::plain(e), AttackEvent::erase(e)}) {
        if (!sub.automaton.has_symbol(move)) continue;
        auto dst = sub.automaton.step(sess.current(), move);
        if (!dst) continue;
        options.push_back(SessionOption{move, insertion_escapes(sub, *dst)});
    }
    return options;
}

/// Advances the session: genuine event `e` happened, the attacker reacts with
/// `first_move` and then inserts `w_plus`. The choice must come from
/// session_options(sess, e).
inline AttackSession session_step(const AttackSession& sess, const EventId& e,
                                  const AttackEvent& first_move, const AttackWord& w_plus) {
    const std::vector<SessionOption> options = session_options(sess, e);
    const SessionOption* chosen = nullptr;
    for (const SessionOption& opt : options)
        if (opt.first_move == first_move) chosen = &opt;
    if (!chosen)
        throw InvalidChoiceError("move " + first_move.label() + " is not admissible for \"" +
                                 e.name + "\" at " + sess.current().to_string());
    if (std::find(chosen->escapes.begin(), chosen->escapes.end(), w_plus) == chosen->escapes.end())
        throw InvalidChoiceError("insertion word " + word_label(w_plus) +
                                 " is not an escape after " + first_move.label());

    const SupremalSubstructure& sub = sess.substructure();
    StatePair at = *sub.automaton.step(sess.current(), first_move);
    if (!w_plus.empty()) at = *sub.automaton.run_from(at, w_plus);

    AttackSession next = sess;
    next.current_ = std::move(at);
    next.transcript_.push_back(first_move);
    next.transcript_.insert(next.transcript_.end(), w_plus.begin(), w_plus.end());
    next.observation_.push_back(e);
    next.trace_.emplace_back(next.observation_, next.transcript_);
    return next;
}

} // namespace desat
