#pragma once

#include <compare>
#include <string>

#include "desat/errors.hpp"

namespace desat {

/// Plant states are referred to by their declared name.
using StateId = std::string;

/// An event symbol. Names are restricted to [A-Za-z0-9_.]+ so that rendered
/// labels ("e", "e+", "e-") and set displays ("{1,2}") stay unambiguous.
struct EventId {
    std::string name;

    EventId() = default;
    explicit EventId(std::string n) : name(std::move(n)) {}

    auto operator<=>(const EventId&) const = default;
};

/// True iff `name` is usable as an event or state name.
inline bool valid_symbol_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '.';
        if (!ok) return false;
    }
    return true;
}

inline void require_valid_symbol_name(const std::string& name, const char* what) {
    if (!valid_symbol_name(name))
        throw MalformedInputError(std::string(what) + " name \"" + name +
                                  "\" is not of the form [A-Za-z0-9_.]+");
}

} // namespace desat
