#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "easym/bigcount.hpp"
#include "easym/ea_action.hpp"

namespace easym {

struct FixCountDetail {
    struct OrbitCount {
        std::size_t length;
        /// Number of admissible values F(x_i) at the orbit's base point.
        BigCount solutions;
    };

    std::vector<OrbitCount> per_orbit;
    BigCount total;
    /// log_q(total); absent exactly when total == 0 (every nonzero total is a power of q).
    std::optional<std::uint64_t> log_q_total;
};

/// Counts, for a fixed output map y -> Q y + b, the solutions of
///     (I - Q^L) y = sum_{j<L} Q^j b
/// for a sigma-orbit of length L. Memoized by L.
class OrbitConstraint {
public:
    explicit OrbitConstraint(const AffineMap& output);

    /// k with q^k solutions, or nullopt when the system is inconsistent.
    std::optional<std::size_t> solution_exponent(std::size_t length);

private:
    const AffineMap* output_;
    std::map<std::size_t, std::optional<std::size_t>> memo_;
};

/// |{F : g.F = F}| exactly: product over the sigma-orbits of U (sigma = the
/// input map) of the per-orbit constraint counts.
FixCountDetail fix_count_exact(const EAElement& g);

/// The same count by testing every function table. Throws BudgetExceeded when
/// q^{m q^n} > limits.oracle.
BigCount fix_count_bruteforce(const EAElement& g, const Limits& limits = {});

/// Which part of g is nontrivial, as in the two cases of the fixed-point bound.
enum class FixBoundCase { input_nontrivial = 1, input_identity = 2 };

struct FixCountBound {
    FixBoundCase which;
    unsigned q;
    /// |Fix(g)| <= q^exponent: ((q+1)/(2q)) m q^n in case 1, (m-1) q^n in case 2.
    BigRational exponent;

    LogQValue bound() const;
};

/// Throws ArgumentError for the identity element.
FixCountBound fix_count_upper(const EAElement& g);

/// c = max{(q+1)/(2q), 1 - 1/m}.
BigRational fix_bound_constant(unsigned q, std::size_t m);

}  // namespace easym
