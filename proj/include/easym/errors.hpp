#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace easym {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatches, out-of-range codes, bad flags.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Unsupported field size or other invalid configuration.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
};

/// A computation was refused because it would exceed a configured budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::string what, std::string required, std::string budget)
        : Error(what + " requires " + required + " but the budget is " + budget),
          required_(std::move(required)), budget_(std::move(budget)) {}

    const std::string& required() const noexcept { return required_; }
    const std::string& budget() const noexcept { return budget_; }

private:
    std::string required_;
    std::string budget_;
};

/// affine_fit found more candidate (Q, b) pairs than the fit budget allows.
class SolutionSpaceTooLarge : public Error {
public:
    explicit SolutionSpaceTooLarge(std::string size)
        : Error("affine fit solution space has " + size + " elements"), size_(std::move(size)) {}

    const std::string& size() const noexcept { return size_; }

private:
    std::string size_;
};

/// An exact identity that must hold (e.g. Burnside divisibility) did not.
class IntegralityViolation : public Error {
public:
    using Error::Error;
};

/// Function-table or element file could not be parsed.
class ParseError : public Error {
public:
    enum class Kind { syntax, header, table_length, code_range };

    ParseError(Kind kind, const std::string& message, std::size_t offset)
        : Error(message + " at byte " + std::to_string(offset)), kind_(kind), offset_(offset) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

}  // namespace easym
