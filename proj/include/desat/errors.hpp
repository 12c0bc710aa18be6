#pragma once

#include <stdexcept>
#include <string>

namespace desat {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally invalid input: bad plant/relation files, undeclared events,
/// nondeterministic transition tables, alphabet violations.
class MalformedInputError : public Error {
public:
    explicit MalformedInputError(const std::string& what) : Error(what) {}
};

/// An argument outside an operation's domain, e.g. querying the empty
/// estimate against a misleading relation or escaping from a pruned state.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// A session step with a move or insertion word that was not offered.
class InvalidChoiceError : public Error {
public:
    explicit InvalidChoiceError(const std::string& what) : Error(what) {}
};

/// A session driven with an event the plant cannot currently produce.
class ProtocolError : public Error {
public:
    explicit ProtocolError(const std::string& what) : Error(what) {}
};

} // namespace desat
