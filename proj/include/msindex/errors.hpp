#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace msindex {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation exists but is not supported for the requested parameters.
class UnsupportedError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid sweep / search / CLI configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// No point of the simplex satisfies the requested max-entry cap.
class InfeasibleCapError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The form vanishes at the current point, so the growth transform is undefined.
class DegeneratePointError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Exhaustive enumeration would exceed the configured budget.
class BudgetExceededError : public ConfigError {
public:
    BudgetExceededError(std::uint64_t required, std::uint64_t budget)
        : ConfigError("exhaustive search needs " + std::to_string(required) +
                      " candidate graphs, budget is " + std::to_string(budget)),
          required_(required) {}

    std::uint64_t required() const noexcept { return required_; }

private:
    std::uint64_t required_;
};

/// Malformed input text; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace msindex
