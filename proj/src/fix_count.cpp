#include "easym/fix_count.hpp"

#include "easym/errors.hpp"

namespace easym {

OrbitConstraint::OrbitConstraint(const AffineMap& output) : output_(&output) {}

std::optional<std::size_t> OrbitConstraint::solution_exponent(std::size_t length) {
    if (auto it = memo_.find(length); it != memo_.end()) return it->second;
    const FqMatrix& Q = output_->linear();
    const FqVector& b = output_->translation();
    const Field& f = Q.field();
    const std::size_t m = Q.rows();

    // Geometric sum by accumulation: S = b + Q b + ... + Q^{L-1} b.
    FqVector term = b;
    FqVector sum = b;
    for (std::size_t j = 1; j < length; ++j) {
        term = Q * term;
        sum = sum + term;
    }
    const FqMatrix lhs = FqMatrix::identity(f, m) - power(Q, length);
    const AffineSubspace solutions = solve_linear(lhs, sum);
    std::optional<std::size_t> result;
    if (!solutions.empty()) result = solutions.dimension();
    memo_.emplace(length, result);
    return result;
}

FixCountDetail fix_count_exact(const EAElement& g) {
    const Shape s = g.shape();
    const OrbitDecomposition orbits = orbits_affine(g.input());
    OrbitConstraint constraint(g.output());
    FixCountDetail detail;
    std::uint64_t exponent = 0;
    bool zero = false;
    for (const auto& orbit : orbits.orbits) {
        const auto k = constraint.solution_exponent(orbit.length);
        if (k) {
            exponent += *k;
            detail.per_orbit.push_back({orbit.length, big_pow(s.q, *k)});
        } else {
            zero = true;
            detail.per_orbit.push_back({orbit.length, 0});
        }
    }
    if (zero) {
        detail.total = 0;
    } else {
        detail.total = big_pow(s.q, exponent);
        detail.log_q_total = exponent;
    }
    return detail;
}

BigCount fix_count_bruteforce(const EAElement& g, const Limits& limits) {
    const Shape s = g.shape();
    check_budget("brute-force fixed-point count", function_space_size(s), limits.oracle);
    const std::uint64_t total = function_space_size(s).convert_to<std::uint64_t>();
    std::uint64_t fixed = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const FuncTable F = FuncTable::from_index(s, idx);
        if (apply(g, F) == F) ++fixed;
    }
    return fixed;
}

LogQValue FixCountBound::bound() const { return LogQValue(q, 1, exponent); }

FixCountBound fix_count_upper(const EAElement& g) {
    if (g.is_identity()) throw ArgumentError("the fixed-point bound applies to nontrivial elements only");
    const Shape s = g.shape();
    const BigRational qn = BigRational(s.domain_size());
    const BigRational m = BigRational(s.m);
    if (!g.input().is_identity()) {
        return {FixBoundCase::input_nontrivial, s.q, BigRational(s.q + 1, 2 * s.q) * m * qn};
    }
    return {FixBoundCase::input_identity, s.q, (m - 1) * qn};
}

BigRational fix_bound_constant(unsigned q, std::size_t m) {
    if (m == 0) throw ArgumentError("m must be positive");
    const BigRational case1(q + 1, 2 * q);
    const BigRational case2 = BigRational(1) - BigRational(1, m);
    return case1 > case2 ? case1 : case2;
}

}  // namespace easym
