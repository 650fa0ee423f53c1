#pragma once

#include <stdexcept>
#include <string>

namespace p4c {

// Raised when an exact computation would exceed its configured size or
// enumeration budget.  Distinct from a negative answer: the computation was
// refused, not resolved.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an input graph is not in the requested class.
class RejectionError : public std::runtime_error {
public:
    explicit RejectionError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation requires a connected graph and the input is not.
class DisconnectedError : public std::runtime_error {
public:
    explicit DisconnectedError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the input readers on malformed graph files.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

} // namespace p4c
