#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace desat {

/// Partial deterministic automaton over an explicit alphabet. States and
/// symbols are immutable value types ordered by operator<. There is no
/// marking: the language is the set of words whose run is defined.
template <typename State, typename Symbol>
class Dfa {
public:
    Dfa(State initial, std::vector<Symbol> alphabet) : alphabet_(std::move(alphabet)) {
        std::sort(alphabet_.begin(), alphabet_.end());
        alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
        initial_ = intern(std::move(initial));
    }

    const State& initial() const { return by_id_[static_cast<std::size_t>(initial_)]; }

    const std::vector<Symbol>& alphabet() const { return alphabet_; }

    bool has_symbol(const Symbol& e) const {
        return std::binary_search(alphabet_.begin(), alphabet_.end(), e);
    }

    bool has_state(const State& s) const { return index_.count(s) != 0; }

    /// Registers `s` if new; idempotent.
    void add_state(const State& s) { intern(s); }

    /// Adds src --e--> dst, registering endpoints. Conflicting targets for the
    /// same (src, e) and symbols outside the alphabet are construction bugs.
    void add_transition(const State& src, const Symbol& e, const State& dst) {
        if (!has_symbol(e)) throw std::logic_error("transition symbol not in alphabet");
        const int s = intern(src);
        const int d = intern(dst);
        auto [it, fresh] = post_[static_cast<std::size_t>(s)].emplace(e, d);
        if (!fresh && it->second != d)
            throw std::logic_error("conflicting transition would make the automaton nondeterministic");
    }

    std::optional<State> step(const State& s, const Symbol& e) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        const auto& out = post_[static_cast<std::size_t>(it->second)];
        auto jt = out.find(e);
        if (jt == out.end()) return std::nullopt;
        return by_id_[static_cast<std::size_t>(jt->second)];
    }

    bool defined(const State& s, const Symbol& e) const { return step(s, e).has_value(); }

    std::optional<State> run_from(State s, std::span<const Symbol> word) const {
        for (const Symbol& e : word) {
            auto next = step(s, e);
            if (!next) return std::nullopt;
            s = std::move(*next);
        }
        return s;
    }

    std::optional<State> run(std::span<const Symbol> word) const {
        return run_from(initial(), word);
    }

    bool in_language(std::span<const Symbol> word) const { return run(word).has_value(); }

    std::size_t num_states() const { return by_id_.size(); }

    std::size_t num_transitions() const {
        std::size_t n = 0;
        for (const auto& out : post_) n += out.size();
        return n;
    }

    /// All states in canonical (sorted) order.
    std::vector<State> states() const {
        std::vector<State> out;
        out.reserve(index_.size());
        for (const auto& [s, id] : index_) out.push_back(s);
        return out;
    }

    /// Outgoing transitions of `s`, sorted by symbol.
    std::vector<std::pair<Symbol, State>> successors(const State& s) const {
        std::vector<std::pair<Symbol, State>> out;
        auto it = index_.find(s);
        if (it == index_.end()) return out;
        for (const auto& [e, d] : post_[static_cast<std::size_t>(it->second)])
            out.emplace_back(e, by_id_[static_cast<std::size_t>(d)]);
        return out;
    }

    /// Visits every transition in canonical order: by source state, then symbol.
    template <typename F>
    void for_each_transition(F&& f) const {
        for (const auto& [src, id] : index_)
            for (const auto& [e, d] : post_[static_cast<std::size_t>(id)])
                f(src, e, by_id_[static_cast<std::size_t>(d)]);
    }

private:
    int intern(State s) {
        auto it = index_.find(s);
        if (it != index_.end()) return it->second;
        const int id = static_cast<int>(by_id_.size());
        by_id_.push_back(std::move(s));
        post_.emplace_back();
        index_.emplace(by_id_.back(), id);
        return id;
    }

    std::vector<Symbol> alphabet_;
    std::vector<State> by_id_;
    std::vector<std::map<Symbol, int>> post_; // indexed like by_id_
    std::map<State, int> index_;
    int initial_ = 0;
};

/// Synchronous product, accessible part only: shared symbols move both
/// machines, symbols private to one alphabet move that machine alone. For
/// identical alphabets this intersects the languages.
template <typename S1, typename S2, typename Symbol>
Dfa<std::pair<S1, S2>, Symbol> concurrent_composition(const Dfa<S1, Symbol>& a1,
                                                      const Dfa<S2, Symbol>& a2) {
    std::vector<Symbol> alphabet = a1.alphabet();
    alphabet.insert(alphabet.end(), a2.alphabet().begin(), a2.alphabet().end());

    using Pair = std::pair<S1, S2>;
    Dfa<Pair, Symbol> prod(Pair(a1.initial(), a2.initial()), std::move(alphabet));

    std::vector<Pair> frontier{prod.initial()};
    while (!frontier.empty()) {
        std::vector<Pair> next_frontier;
        for (const Pair& sp : frontier) {
            for (const Symbol& e : prod.alphabet()) {
                const bool in1 = a1.has_symbol(e);
                const bool in2 = a2.has_symbol(e);
                std::optional<S1> t1 = in1 ? a1.step(sp.first, e) : std::optional<S1>(sp.first);
                std::optional<S2> t2 = in2 ? a2.step(sp.second, e) : std::optional<S2>(sp.second);
                if (!t1 || !t2) continue;
                Pair dst(std::move(*t1), std::move(*t2));
                const bool fresh = !prod.has_state(dst);
                prod.add_transition(sp, e, dst);
                if (fresh) next_frontier.push_back(std::move(dst));
            }
        }
        frontier = std::move(next_frontier);
    }
    return prod;
}

/// Rebuilds an automaton with every state replaced by f(state). `f` must be
/// injective on the automaton's states.
template <typename State, typename Symbol, typename F>
auto map_states(const Dfa<State, Symbol>& a, F&& f)
    -> Dfa<std::decay_t<decltype(f(a.initial()))>, Symbol> {
    using Out = std::decay_t<decltype(f(a.initial()))>;
    Dfa<Out, Symbol> out(f(a.initial()), a.alphabet());
    for (const State& s : a.states()) out.add_state(f(s));
    a.for_each_transition([&](const State& src, const Symbol& e, const State& dst) {
        out.add_transition(f(src), e, f(dst));
    });
    if (out.num_states() != a.num_states())
        throw std::logic_error("map_states requires an injective state mapping");
    return out;
}

} // namespace desat
