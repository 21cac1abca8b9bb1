#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace easym {

/// Exact nonnegative integer for group orders, fixed-point counts and orbit sizes.
using BigCount = boost::multiprecision::cpp_int;
/// Exact rational for ratios and probabilities.
using BigRational = boost::multiprecision::cpp_rational;

BigCount big_pow(std::uint64_t base, std::uint64_t exponent);

/// Decimal string of an integer, never in scientific notation.
std::string to_string(const BigCount& value);
/// "num/den" in lowest terms, or just "num" when den = 1.
std::string to_string(const BigRational& value);
/// Fixed-point decimal with exactly `digits` fractional digits, rounded half
/// away from zero.
std::string to_decimal(const BigRational& value, unsigned digits = 20);

/// log2 of a positive integer, accurate to long double precision for any size.
long double log2_big(const BigCount& value);

/// A positive quantity written as factor * q^power with an exact rational
/// factor and an exact rational power. Used for values such as |Gamma| / q^{m q^n}
/// that are too large or small to print usefully. The log_q exponent itself is
/// generally irrational; exponent() evaluates it and compare() orders values
/// exactly.
class LogQValue {
public:
    LogQValue(unsigned q, BigRational factor, BigRational power);

    unsigned q() const noexcept { return q_; }
    const BigRational& factor() const noexcept { return factor_; }
    const BigRational& power() const noexcept { return power_; }

    /// log_q(value) = log_q(factor) + power.
    long double exponent() const;
    /// The exact value when |power| is small enough to materialize.
    BigRational exact_value() const;
    /// True when value >= 1; for a probability bound this means it says nothing.
    bool vacuous() const;
    /// "q^<exponent>" with 12 fractional digits.
    std::string render() const;

private:
    unsigned q_;
    BigRational factor_;
    BigRational power_;
};

/// Three-way comparison of the two values (and so of their exponents).
/// Both must use the same q. Exact: falls back to big-integer arithmetic
/// whenever the floating-point exponents are too close to call.
int compare(const LogQValue& lhs, const LogQValue& rhs);

}  // namespace easym
