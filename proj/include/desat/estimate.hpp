#pragma once

#include <algorithm>
#include <compare>
#include <set>
#include <string>
#include <vector>

#include "desat/event.hpp"

namespace desat {

/// A state estimate: a non-empty set of plant states, or the distinguished
/// empty estimate the operator's tracker falls into once the observation can
/// no longer have been produced by the plant. The empty estimate compares
/// greater than every proper estimate so it sorts last in listings.
class Estimate {
public:
    Estimate() = default; // empty sentinel

    static Estimate empty_sentinel() { return Estimate{}; }

    static Estimate of(std::vector<StateId> members) {
        Estimate b;
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        b.members_ = std::move(members);
        return b;
    }

    static Estimate of(const std::set<StateId>& members) {
        return of(std::vector<StateId>(members.begin(), members.end()));
    }

    bool is_empty_sentinel() const { return members_.empty(); }

    /// Sorted member states; empty exactly for the sentinel.
    const std::vector<StateId>& members() const { return members_; }

    bool contains(const StateId& x) const {
        return std::binary_search(members_.begin(), members_.end(), x);
    }

    bool intersects(const std::set<StateId>& xs) const {
        for (const auto& x : members_)
            if (xs.count(x)) return true;
        return false;
    }

    /// "{1,2}" for proper estimates, "∅" for the sentinel.
    std::string to_string() const {
        if (is_empty_sentinel()) return "∅";
        std::string out = "{";
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (i) out += ',';
            out += members_[i];
        }
        out += '}';
        return out;
    }

    friend bool operator==(const Estimate&, const Estimate&) = default;

    friend std::strong_ordering operator<=>(const Estimate& a, const Estimate& b) {
        if (a.is_empty_sentinel() != b.is_empty_sentinel())
            return a.is_empty_sentinel() ? std::strong_ordering::greater
                                         : std::strong_ordering::less;
        return a.members_ <=> b.members_;
    }

private:
    std::vector<StateId> members_;
};

} // namespace desat
