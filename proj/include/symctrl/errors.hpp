#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace symctrl {

/// Malformed or out-of-range user input (bad indices, asymmetric edge declarations, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a trustworthy answer (non-finite data, solver failure).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an algorithm was violated by otherwise well-formed input.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised by cycle_cover when the restricted pattern admits no perfect matching.
/// Carries a subset S (0-based state indices) whose in-neighbourhood inside the
/// restriction is smaller than S.
class NoCycleCoverError : public PreconditionError {
public:
    NoCycleCoverError(const std::string& what, std::vector<std::size_t> violating)
        : PreconditionError(what), violating_(std::move(violating)) {}

    const std::vector<std::size_t>& violating_subset() const noexcept { return violating_; }

private:
    std::vector<std::size_t> violating_;
};

} // namespace symctrl
