#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "easym/bigcount.hpp"
#include "easym/ea_action.hpp"
#include "easym/limits.hpp"

namespace easym {

struct CensusOrbit {
    /// Smallest function index in the orbit.
    FuncTable representative;
    BigCount size;
    BigCount stabilizer_size;
};

struct OrbitCensus {
    Shape shape;
    BigCount gamma_order;
    BigCount total;
    std::vector<CensusOrbit> orbits;
    /// orbit_of[i]: orbit id of the function with index i.
    std::vector<std::uint32_t> orbit_of;
};

/// Partitions all q^{m q^n} functions into EA-orbits by breadth-first closure
/// under ea_generators, visiting start points in index order. Throws
/// BudgetExceeded when q^{m q^n} > limits.oracle.
OrbitCensus orbit_partition(const Shape& shape, const Limits& limits = {});

/// orbit_id,size,stabilizer_size,representative_table (codes separated by spaces)
std::string census_csv(const OrbitCensus& census);

/// sum_i (|O_i| / |F|)^2
BigRational collision_prob_exact(const OrbitCensus& census);
BigRational collision_prob_exact(const Shape& shape, const Limits& limits = {});
/// sum_i |O_i|^2
BigCount orbit_size_square_sum(const OrbitCensus& census);

struct ProbabilityBound {
    LogQValue bound;
    /// Exact value when small enough to materialize.
    std::optional<BigRational> exact;
    bool vacuous = false;
};

/// |AGL(n,q)| |AGL(m,q)| / q^{m q^n}
ProbabilityBound collision_upper_ea(const Shape& shape);
/// |AGL(n+m,q)| / q^{m q^n}
ProbabilityBound collision_upper_ccz(const Shape& shape);

struct StabilizerBound {
    /// Exponent lost per nontrivial element in each case of the fixed-point
    /// bound: ((q-1)/(2q)) m q^n when the input map moves, q^n otherwise.
    BigRational case1_slack;
    BigRational case2_slack;
    /// 1 or 2: the case with the smaller slack, which the union bound must use.
    int binding_case = 1;
    /// |Gamma| q^{-slack} for each case and for the binding one.
    LogQValue case1;
    LogQValue case2;
    ProbabilityBound binding;
};

/// Union bound on Pr[Stab(F) nontrivial] for uniform F.
StabilizerBound nontrivial_stab_bound(const Shape& shape);

struct StabilizerCensus {
    Shape shape;
    BigCount nontrivial;
    BigCount total;
    BigRational fraction;
};

/// Runs the stabilizer search on every function. Throws BudgetExceeded when
/// q^{m q^n} > limits.oracle.
StabilizerCensus nontrivial_stab_census(const Shape& shape, const Limits& limits = {});
/// The same fraction read off an orbit census: orbits with stabilizer > 1.
BigRational nontrivial_fraction(const OrbitCensus& census);

struct Estimate {
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    /// hits / trials
    BigRational estimate;
    /// 95% Clopper-Pearson interval.
    double ci_low = 0;
    double ci_high = 1;
    std::optional<BigRational> reference;
};

/// Two-sided Clopper-Pearson interval at confidence 1 - alpha.
std::pair<double, double> clopper_pearson(std::uint64_t hits, std::uint64_t trials, double alpha = 0.05);

/// Fraction of sampled functions whose EA-stabilizer is nontrivial. Trial i
/// draws from the stream SplitMix64::derive(seed, i).
Estimate mc_trivial_stab(const Shape& shape, std::uint64_t trials, std::uint64_t seed, const Limits& limits = {});
/// Fraction of sampled independent pairs (F, G) that are EA-equivalent.
Estimate mc_collision(const Shape& shape, std::uint64_t trials, std::uint64_t seed, const Limits& limits = {});

/// Structured text for an estimate.
std::string format_estimate(const Estimate& e, const std::string& experiment, const Shape& shape);

/// An affine permutation L of F_q^{n+m} with L(graph F) = graph G, by brute
/// force over AGL(n+m, q). Points are (x, y) with x in the first n coordinates.
/// Throws BudgetExceeded when agl_order(n+m, q) > limits.enumeration.
std::optional<AffineMap> ccz_equivalent(const FuncTable& F, const FuncTable& G, const Limits& limits = {});

}  // namespace easym
