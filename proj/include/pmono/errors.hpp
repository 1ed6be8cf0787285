#pragma once

#include <stdexcept>
#include <string>

namespace pmono {

// Caller passed something structurally wrong: mismatched dimensions, an
// index out of range, an unknown enum name.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// (g, s) outside the range where the surface data makes sense.
class InvalidParameters : public std::invalid_argument {
public:
    explicit InvalidParameters(const std::string& what) : std::invalid_argument(what) {}
};

// Parameters are well formed but violate a hypothesis the monodromy
// description depends on (genus at least 2).
class HypothesisViolation : public std::domain_error {
public:
    explicit HypothesisViolation(const std::string& what) : std::domain_error(what) {}
};

// A constructed object failed its own consistency check (e.g. d∘d != 0).
class IntegrityError : public std::logic_error {
public:
    explicit IntegrityError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace pmono
