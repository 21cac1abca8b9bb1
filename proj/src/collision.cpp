#include "easym/collision.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <json.hpp>

#include "easym/errors.hpp"
#include "easym/parallel.hpp"

namespace easym {

namespace mp = boost::multiprecision;

namespace {

BigCount gamma_order(const Shape& s) { return agl_order(s.n, s.q) * agl_order(s.m, s.q); }

// Materialize exact bounds only up to this power of q.
constexpr std::uint64_t kMaxExactPower = 4096;

ProbabilityBound make_bound(unsigned q, const BigCount& factor, const BigRational& power) {
    ProbabilityBound pb{LogQValue(q, BigRational(factor), power), std::nullopt, false};
    pb.vacuous = pb.bound.vacuous();
    if (mp::denominator(power) == 1 && mp::abs(mp::numerator(power)) <= kMaxExactPower) {
        pb.exact = pb.bound.exact_value();
    }
    return pb;
}

}  // namespace

// ---------------------------------------------------------------- census

OrbitCensus orbit_partition(const Shape& s, const Limits& limits) {
    const BigCount total = function_space_size(s);
    check_budget("orbit partition", total, limits.oracle);
    const auto count = total.convert_to<std::uint64_t>();
    if (count > UINT32_MAX) throw BudgetExceeded("orbit partition", total.str(), "2^32 functions");

    struct Gen {
        std::vector<Code> in, out;
    };
    std::vector<Gen> gens;
    for (const auto& g : ea_generators(s)) {
        gens.push_back({{g.input().table().begin(), g.input().table().end()},
                        {g.output().table().begin(), g.output().table().end()}});
    }

    const std::uint64_t radix = s.codomain_size();
    const std::size_t cells = s.domain_size();
    constexpr std::uint32_t unvisited = UINT32_MAX;
    OrbitCensus census{s, gamma_order(s), total, {}, std::vector<std::uint32_t>(count, unvisited)};
    std::vector<Code> table(cells), image(cells);
    std::deque<std::uint64_t> frontier;
    for (std::uint64_t start = 0; start < count; ++start) {
        if (census.orbit_of[start] != unvisited) continue;
        const auto id = static_cast<std::uint32_t>(census.orbits.size());
        census.orbit_of[start] = id;
        std::uint64_t size = 1;
        frontier.push_back(start);
        while (!frontier.empty()) {
            std::uint64_t idx = frontier.front();
            frontier.pop_front();
            for (std::size_t x = 0; x < cells; ++x) {
                table[x] = static_cast<Code>(idx % radix);
                idx /= radix;
            }
            for (const auto& g : gens) {
                std::uint64_t next = 0;
                for (std::size_t x = cells; x > 0; --x) next = next * radix + g.out[table[g.in[x - 1]]];
                if (census.orbit_of[next] == unvisited) {
                    census.orbit_of[next] = id;
                    ++size;
                    frontier.push_back(next);
                }
            }
        }
        if (census.gamma_order % size != 0) {
            throw IntegralityViolation("orbit size " + std::to_string(size) + " does not divide |Gamma|");
        }
        census.orbits.push_back({FuncTable::from_index(s, start), size, census.gamma_order / size});
    }
    return census;
}

std::string census_csv(const OrbitCensus& census) {
    std::ostringstream os;
    os << "orbit_id,size,stabilizer_size,representative_table\n";
    for (std::size_t i = 0; i < census.orbits.size(); ++i) {
        const auto& o = census.orbits[i];
        os << i << ',' << to_string(o.size) << ',' << to_string(o.stabilizer_size) << ',';
        for (std::size_t x = 0; x < o.representative.size(); ++x) os << (x ? " " : "") << o.representative[x];
        os << '\n';
    }
    return os.str();
}

BigCount orbit_size_square_sum(const OrbitCensus& census) {
    BigCount sum = 0;
    for (const auto& o : census.orbits) sum += o.size * o.size;
    return sum;
}

BigRational collision_prob_exact(const OrbitCensus& census) {
    BigRational p = 0;
    for (const auto& o : census.orbits) {
        const BigRational share(o.size, census.total);
        p += share * share;
    }
    return p;
}

BigRational collision_prob_exact(const Shape& shape, const Limits& limits) {
    return collision_prob_exact(orbit_partition(shape, limits));
}

// ---------------------------------------------------------------- bounds

ProbabilityBound collision_upper_ea(const Shape& s) {
    return make_bound(s.q, gamma_order(s), -BigRational(function_space_log(s)));
}

ProbabilityBound collision_upper_ccz(const Shape& s) {
    return make_bound(s.q, agl_order(s.n + s.m, s.q), -BigRational(function_space_log(s)));
}

StabilizerBound nontrivial_stab_bound(const Shape& s) {
    if (s.n == 0 || s.m == 0) throw ArgumentError("n and m must be positive");
    const BigCount gamma = gamma_order(s);
    const BigRational qn(s.domain_size());
    const BigRational case1 = BigRational(s.q - 1, 2 * s.q) * BigRational(s.m) * qn;
    const BigRational case2 = qn;
    const int binding_case = case1 <= case2 ? 1 : 2;
    const BigRational& slack = binding_case == 1 ? case1 : case2;
    return StabilizerBound{case1,
                           case2,
                           binding_case,
                           LogQValue(s.q, BigRational(gamma), -case1),
                           LogQValue(s.q, BigRational(gamma), -case2),
                           make_bound(s.q, gamma, -slack)};
}

// ---------------------------------------------------------------- stabilizer census

StabilizerCensus nontrivial_stab_census(const Shape& s, const Limits& limits) {
    const BigCount total = function_space_size(s);
    check_budget("stabilizer census", total, limits.oracle);
    const auto count = total.convert_to<std::uint64_t>();
    Limits inner = limits;
    inner.threads = 1;
    const EaSearch search(s, inner);
    const std::size_t chunks = chunk_count(count, limits.threads);
    std::vector<std::uint64_t> partial(chunks, 0);
    parallel_chunks(count, limits.threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            if (search.stabilizer_size(FuncTable::from_index(s, idx)) > 1) ++partial[chunk];
        }
    });
    std::uint64_t nontrivial = 0;
    for (auto p : partial) nontrivial += p;
    return {s, nontrivial, total, BigRational(BigCount(nontrivial), total)};
}

BigRational nontrivial_fraction(const OrbitCensus& census) {
    BigCount nontrivial = 0;
    for (const auto& o : census.orbits) {
        if (o.stabilizer_size > 1) nontrivial += o.size;
    }
    return BigRational(nontrivial, census.total);
}

// ---------------------------------------------------------------- Monte Carlo

std::pair<double, double> clopper_pearson(std::uint64_t hits, std::uint64_t trials, double alpha) {
    if (trials == 0 || hits > trials) throw ArgumentError("clopper_pearson needs 0 <= hits <= trials, trials > 0");
    const auto x = static_cast<double>(hits);
    const auto n = static_cast<double>(trials);
    const double low = hits == 0 ? 0.0 : boost::math::ibeta_inv(x, n - x + 1, alpha / 2);
    const double high = hits == trials ? 1.0 : boost::math::ibeta_inv(x + 1, n - x, 1 - alpha / 2);
    return {low, high};
}

namespace {

template <class Trial>
Estimate run_trials(std::uint64_t trials, std::uint64_t seed, unsigned threads, Trial&& trial) {
    if (trials == 0) throw ArgumentError("trials must be positive");
    const std::size_t chunks = chunk_count(trials, threads);
    std::vector<std::uint64_t> partial(chunks, 0);
    parallel_chunks(trials, threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        for (std::size_t i = begin; i < end; ++i) {
            SplitMix64 rng(SplitMix64::derive(seed, i));
            if (trial(rng)) ++partial[chunk];
        }
    });
    Estimate e;
    e.seed = seed;
    e.trials = trials;
    for (auto p : partial) e.hits += p;
    e.estimate = BigRational(BigCount(e.hits), BigCount(trials));
    std::tie(e.ci_low, e.ci_high) = clopper_pearson(e.hits, trials);
    return e;
}

}  // namespace

Estimate mc_trivial_stab(const Shape& s, std::uint64_t trials, std::uint64_t seed, const Limits& limits) {
    if (trials == 0) throw ArgumentError("trials must be positive");
    Limits inner = limits;
    inner.threads = 1;
    const EaSearch search(s, inner);
    return run_trials(trials, seed, limits.threads, [&](SplitMix64& rng) {
        return search.stabilizer_size(random_function(s, rng)) > 1;
    });
}

Estimate mc_collision(const Shape& s, std::uint64_t trials, std::uint64_t seed, const Limits& limits) {
    if (trials == 0) throw ArgumentError("trials must be positive");
    Limits inner = limits;
    inner.threads = 1;
    const EaSearch search(s, inner);
    return run_trials(trials, seed, limits.threads, [&](SplitMix64& rng) {
        const FuncTable F = random_function(s, rng);
        const FuncTable G = random_function(s, rng);
        return search.equivalent(F, G).has_value();
    });
}

std::string format_estimate(const Estimate& e, const std::string& experiment, const Shape& shape) {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["q"] = shape.q;
    j["n"] = shape.n;
    j["m"] = shape.m;
    j["seed"] = e.seed;
    j["trials"] = e.trials;
    j["hits"] = e.hits;
    j["estimate"] = to_string(e.estimate);
    j["estimate_decimal"] = to_decimal(e.estimate, 20);
    std::ostringstream lo, hi;
    lo.precision(17);
    hi.precision(17);
    lo << e.ci_low;
    hi << e.ci_high;
    j["ci95_low"] = lo.str();
    j["ci95_high"] = hi.str();
    if (e.reference) {
        j["reference"] = to_string(*e.reference);
        j["reference_decimal"] = to_decimal(*e.reference, 20);
    } else {
        j["reference"] = nullptr;
    }
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- CCZ

std::optional<AffineMap> ccz_equivalent(const FuncTable& F, const FuncTable& G, const Limits& limits) {
    if (F.shape() != G.shape()) throw ArgumentError("functions have different shapes");
    const Shape& s = F.shape();
    const std::size_t dim = s.n + s.m;
    check_budget("CCZ search over AGL(n+m)", agl_order(dim, s.q), limits.enumeration);
    const GraphSet gf = graph_of(F);
    const GraphSet gg = graph_of(G);
    std::vector<bool> in_g(space_size(dim, s.q), false);
    for (Code p : gg.points) in_g[p] = true;

    std::vector<FqVector> points;
    for (Code p : gf.points) points.push_back(decode_vec(p, dim, s.q));
    std::vector<FqVector> targets;
    for (Code p : gg.points) targets.push_back(decode_vec(p, dim, s.q));

    GlCursor cursor(dim, s.q);
    std::vector<FqVector> images;
    while (auto P = cursor.next()) {
        images.clear();
        for (const auto& p : points) images.push_back(*P * p);
        // The translation must send P p_0 onto some point of graph G.
        for (const auto& t : targets) {
            const FqVector a = t - images.front();
            bool ok = true;
            for (std::size_t i = 1; i < images.size() && ok; ++i) ok = in_g[encode_vec(images[i] + a)];
            if (!ok) continue;
            AffineMap L(*P, a);
            std::vector<Code> mapped;
            for (Code p : gf.points) mapped.push_back(L(p));
            std::sort(mapped.begin(), mapped.end());
            if (mapped != gg.points) throw IntegralityViolation("CCZ witness failed verification");
            return L;
        }
    }
    return std::nullopt;
}

}  // namespace easym
