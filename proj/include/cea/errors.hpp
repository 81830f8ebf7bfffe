#pragma once

#include <stdexcept>
#include <string>

namespace cea {

/// A controller or matrix was evaluated outside its validated time range,
/// or an evaluation produced a non-finite value.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// The idempotent fallback solver ran and no start converged.
class SolverInconclusive : public std::runtime_error {
public:
    explicit SolverInconclusive(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was requested for a family that does not support it.
class UnsupportedFamily : public std::runtime_error {
public:
    explicit UnsupportedFamily(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition of an analysis routine does not hold for the given spec.
class PreconditionViolated : public std::runtime_error {
public:
    explicit PreconditionViolated(const std::string& what) : std::runtime_error(what) {}
};

/// A chain spec file could not be parsed (bad JSON, unknown keys, bad kinds).
class SpecParseError : public std::runtime_error {
public:
    explicit SpecParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cea
