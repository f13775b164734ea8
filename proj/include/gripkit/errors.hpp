#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gripkit {

/// Invalid input or a violated model invariant. The CLI maps this to exit code 2.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& message) : std::domain_error(message) {}
};

/// Malformed input file. Carries the 1-based row where parsing failed (0 = unknown).
class ParseError : public DomainError {
public:
    explicit ParseError(const std::string& message, std::size_t row = 0)
        : DomainError(row > 0 ? message + " (row " + std::to_string(row) + ")" : message),
          row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// An iteration failed to converge. The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& message) : std::runtime_error(message) {}

    NumericError(const std::string& message, double last_iterate, double previous_iterate)
        : std::runtime_error(message),
          last_(last_iterate),
          previous_(previous_iterate),
          has_iterates_(true) {}

    bool has_iterates() const noexcept { return has_iterates_; }
    double last_iterate() const noexcept { return last_; }
    double previous_iterate() const noexcept { return previous_; }

private:
    double last_ = 0.0;
    double previous_ = 0.0;
    bool has_iterates_ = false;
};

}  // namespace gripkit
