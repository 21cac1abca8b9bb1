#include "easym/bigcount.hpp"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "easym/errors.hpp"

namespace easym {

namespace mp = boost::multiprecision;

BigCount big_pow(std::uint64_t base, std::uint64_t exponent) {
    BigCount result = 1;
    BigCount b = base;
    while (exponent != 0) {
        if (exponent & 1U) result *= b;
        exponent >>= 1U;
        if (exponent != 0) b *= b;
    }
    return result;
}

std::string to_string(const BigCount& value) { return value.str(); }

std::string to_string(const BigRational& value) {
    const BigCount num = mp::numerator(value);
    const BigCount den = mp::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string to_decimal(const BigRational& value, unsigned digits) {
    BigCount num = mp::numerator(value);
    const BigCount den = mp::denominator(value);
    const bool negative = num < 0;
    if (negative) num = -num;
    const BigCount scale = big_pow(10, digits);
    BigCount scaled = (num * scale * 2 + den) / (den * 2);
    BigCount whole = scaled / scale;
    BigCount frac = scaled % scale;
    std::string out = (negative && scaled != 0) ? "-" : "";
    out += whole.str();
    if (digits > 0) {
        std::string f = frac.str();
        out += "." + std::string(digits - f.size(), '0') + f;
    }
    return out;
}

long double log2_big(const BigCount& value) {
    if (value <= 0) throw ArgumentError("log2_big requires a positive value");
    const std::size_t bits = mp::msb(value) + 1;
    if (bits <= 60) return std::log2(static_cast<long double>(value.convert_to<std::uint64_t>()));
    const std::size_t shift = bits - 60;
    const auto top = static_cast<std::uint64_t>(value >> shift);
    return std::log2(static_cast<long double>(top)) + static_cast<long double>(shift);
}

namespace {

long double log2_rational(const BigRational& r) {
    return log2_big(mp::numerator(r)) - log2_big(mp::denominator(r));
}

// Exponents this far apart are ordered by floating point alone.
constexpr long double kFloatMargin = 1e-6L;
// Largest |power * denominator| materialized as q^k during exact comparison.
constexpr long long kMaxMaterializedPower = 1'000'000;

}  // namespace

LogQValue::LogQValue(unsigned q, BigRational factor, BigRational power)
    : q_(q), factor_(std::move(factor)), power_(std::move(power)) {
    if (q_ < 2) throw ArgumentError("LogQValue base must be at least 2");
    if (factor_ <= 0) throw ArgumentError("LogQValue factor must be positive");
}

long double LogQValue::exponent() const {
    const long double pw = mp::numerator(power_).convert_to<long double>() /
                           mp::denominator(power_).convert_to<long double>();
    return log2_rational(factor_) / std::log2(static_cast<long double>(q_)) + pw;
}

BigRational LogQValue::exact_value() const {
    if (mp::denominator(power_) != 1) {
        throw ArgumentError("value " + render() + " is irrational (non-integer power)");
    }
    const BigCount k = mp::numerator(power_);
    if (mp::abs(k) > kMaxMaterializedPower) throw ArgumentError("power too large to materialize");
    const auto kk = k.convert_to<long long>();
    const BigCount qp = big_pow(q_, static_cast<std::uint64_t>(kk < 0 ? -kk : kk));
    return kk >= 0 ? factor_ * BigRational(qp) : factor_ / BigRational(qp);
}

bool LogQValue::vacuous() const { return compare(*this, LogQValue(q_, 1, 0)) >= 0; }

std::string LogQValue::render() const {
    std::ostringstream os;
    os << q_ << "^" << std::fixed << std::setprecision(12) << static_cast<double>(exponent());
    return os.str();
}

int compare(const LogQValue& lhs, const LogQValue& rhs) {
    if (lhs.q() != rhs.q()) throw ArgumentError("cannot compare LogQValues with different bases");
    const long double diff = lhs.exponent() - rhs.exponent();
    if (diff > kFloatMargin) return 1;
    if (diff < -kFloatMargin) return -1;

    // lhs <=> rhs  iff  (f1/f2) * q^(p1 - p2) <=> 1. Raise to the common
    // denominator d of the powers: (f1/f2)^d * q^k <=> 1 with k integral.
    const BigRational ratio = lhs.factor() / rhs.factor();
    const BigRational dp = lhs.power() - rhs.power();
    const BigCount d = mp::denominator(dp);
    const BigCount k = mp::numerator(dp);
    if (d > 64 || mp::abs(k) > kMaxMaterializedPower) {
        throw ArgumentError("LogQValue comparison too close to decide exactly");
    }
    const auto dd = d.convert_to<unsigned>();
    const auto kk = k.convert_to<long long>();
    BigCount lhs_side = mp::pow(mp::numerator(ratio), dd);
    BigCount rhs_side = mp::pow(mp::denominator(ratio), dd);
    const BigCount qk = big_pow(lhs.q(), static_cast<std::uint64_t>(kk < 0 ? -kk : kk));
    if (kk >= 0) {
        lhs_side *= qk;
    } else {
        rhs_side *= qk;
    }
    if (lhs_side > rhs_side) return 1;
    if (lhs_side < rhs_side) return -1;
    return 0;
}

}  // namespace easym
