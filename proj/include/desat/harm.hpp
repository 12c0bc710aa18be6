#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "desat/supremal.hpp"

namespace desat {

/// When is the operator dangerously misled? Either an explicit list of
/// (true view, shown view) estimate pairs, or a set of critical plant states:
/// misleading when the plant may be in a critical state while the operator's
/// view rules that out.
class MisleadingRelation {
public:
    static MisleadingRelation explicit_pairs(std::set<std::pair<Estimate, Estimate>> pairs) {
        for (const auto& [b, bb] : pairs)
            if (b.is_empty_sentinel() || bb.is_empty_sentinel())
                throw MalformedInputError("misleading pairs must use proper estimates");
        MisleadingRelation rel;
        rel.body_ = std::move(pairs);
        return rel;
    }

    static MisleadingRelation critical(std::set<StateId> states) {
        MisleadingRelation rel;
        rel.body_ = std::move(states);
        return rel;
    }

    bool is_explicit() const { return std::holds_alternative<ExplicitPairs>(body_); }

    const std::set<std::pair<Estimate, Estimate>>& pairs() const {
        return std::get<ExplicitPairs>(body_);
    }

    const std::set<StateId>& critical_states() const { return std::get<Critical>(body_); }

    /// True iff showing `shown` while the plant tracker says `actual` misleads
    /// the operator. Neither side may be the empty estimate.
    bool holds(const Estimate& actual, const Estimate& shown) const {
        if (actual.is_empty_sentinel() || shown.is_empty_sentinel())
            throw DomainError("the misleading relation is only defined on proper estimates");
        if (const auto* pairs = std::get_if<ExplicitPairs>(&body_))
            return pairs->count({actual, shown}) != 0;
        const auto& crit = std::get<Critical>(body_);
        return actual.intersects(crit) && !shown.intersects(crit);
    }

private:
    using ExplicitPairs = std::set<std::pair<Estimate, Estimate>>;
    using Critical = std::set<StateId>;

    MisleadingRelation() = default;
    std::variant<ExplicitPairs, Critical> body_;
};

inline bool relation_holds(const MisleadingRelation& rel, const Estimate& actual,
                           const Estimate& shown) {
    return rel.holds(actual, shown);
}

/// A reachable misleading configuration: the run reaching it, what the plant
/// really emitted, and what the operator was shown.
struct HarmWitness {
    StatePair state;
    AttackWord word;
    std::vector<EventId> observation; // genuine observable word
    std::vector<EventId> corrupted;   // word delivered to the operator
};

struct HarmVerdict {
    bool harmful = false;
    std::vector<HarmWitness> witnesses;
    /// Misleading non-preempting states no replayable run was found for.
    std::vector<StatePair> unwitnessed;
};

namespace detail {

/// Shortest words of runs the attacker could actually drive: genuine events
/// may only fire from non-preempting states (the attacker never rests
/// anywhere else), insertions may pass through anything. Ties broken
/// lexicographically by label sequence. Returns words for all states so
/// reachable.
inline std::map<StatePair, AttackWord> session_shortest_words(const SupremalSubstructure& sub) {
    std::map<StatePair, AttackWord> claimed;
    claimed.emplace(sub.automaton.initial(), AttackWord{});

    std::vector<std::pair<AttackWord, StatePair>> level{{{}, sub.automaton.initial()}};
    while (!level.empty()) {
        std::vector<std::pair<AttackWord, StatePair>> next;
        for (const auto& [word, r] : level) {
            const bool resting = sub.non_preempting.count(r) != 0;
            for (const auto& [sym, dst] : sub.automaton.successors(r)) {
                if (!sym.is_insert() && !resting) continue;
                if (claimed.count(dst)) continue;
                AttackWord w = word;
                w.push_back(sym);
                next.emplace_back(std::move(w), dst);
            }
        }
        std::sort(next.begin(), next.end());
        level.clear();
        for (auto& [w, r] : next)
            if (claimed.emplace(r, w).second) level.emplace_back(std::move(w), r);
    }
    return claimed;
}

} // namespace detail

/// Decides whether the supremal substructure can mislead the operator: it can
/// exactly when some non-preempting state's estimate pair is in the relation.
/// For each such state (up to `witness_cap`) the shortest drivable run is
/// reported; states only reachable through runs the attacker could not pace
/// are listed separately, not silently dropped.
inline HarmVerdict check_harmful(const SupremalSubstructure& sub, const MisleadingRelation& rel,
                                 std::size_t witness_cap = 16) {
    std::vector<StatePair> targets;
    for (const StatePair& r : sub.non_preempting)
        if (rel.holds(r.attacker, r.operator_view)) targets.push_back(r);

    HarmVerdict verdict;
    verdict.harmful = !targets.empty();
    if (targets.empty()) return verdict;

    const auto words = detail::session_shortest_words(sub);
    for (const StatePair& r : targets) {
        auto it = words.find(r);
        if (it == words.end()) {
            verdict.unwitnessed.push_back(r);
            continue;
        }
        HarmWitness w;
        w.state = r;
        w.word = it->second;
        w.observation = attacked_observation(w.word);
        w.corrupted = reduction_projection(w.word);
        verdict.witnesses.push_back(std::move(w));
    }
    std::sort(verdict.witnesses.begin(), verdict.witnesses.end(),
              [](const HarmWitness& a, const HarmWitness& b) {
                  if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
                  if (a.word != b.word) return a.word < b.word;
                  return a.state < b.state;
              });
    if (verdict.witnesses.size() > witness_cap) verdict.witnesses.resize(witness_cap);
    return verdict;
}

} // namespace desat
