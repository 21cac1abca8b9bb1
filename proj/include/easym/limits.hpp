#pragma once

#include <cstdint>

namespace easym {

/// Work budgets. Every exhaustive routine checks the relevant budget before
/// starting and throws BudgetExceeded instead of running unbounded.
struct Limits {
    /// Max size of an enumerated affine group (AGL(n,q), AGL(n+m,q)).
    std::uint64_t enumeration = 1'000'000;
    /// Max number of function tables visited by brute-force oracles and censuses.
    std::uint64_t oracle = std::uint64_t{1} << 24;
    /// Cap on the number of (Q, b) candidates an affine fit may enumerate.
    std::uint64_t fit = std::uint64_t{1} << 20;
    /// Max |Gamma| for exhaustive Burnside sums.
    std::uint64_t burnside = 10'000'000;
    /// Max |AGL(n,q)| per factor for conjugacy-class tables.
    std::uint64_t conjugacy = 100'000;
    /// Worker threads; results never depend on this value.
    unsigned threads = 1;

    /// Defaults overridden by EASYM_ENUMERATION_BUDGET, EASYM_ORACLE_BUDGET,
    /// EASYM_FIT_BUDGET, EASYM_BURNSIDE_BUDGET and EASYM_CONJUGACY_BUDGET.
    static Limits from_environment();
};

}  // namespace easym
