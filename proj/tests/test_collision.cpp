#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "easym/collision.hpp"
#include "easym/errors.hpp"
#include "oracles.hpp"

using namespace easym;

namespace {

struct Expected {
    Shape shape;
    std::vector<std::uint64_t> sizes;
    BigRational collision;
};

// Independently computed by a separate brute-force program over the whole group.
const Expected kSmall[] = {
    {{2, 1, 1}, {2, 2}, BigRational(1, 2)},
    {{2, 1, 2}, {4, 12}, BigRational(5, 8)},
    {{2, 2, 1}, {2, 6, 8}, BigRational(13, 32)},
    {{2, 2, 2}, {4, 24, 36, 48, 144}, BigRational(779, 2048)},
    {{3, 1, 1}, {3, 6, 18}, BigRational(41, 81)},
};

std::vector<std::uint64_t> sorted_sizes(const OrbitCensus& c) {
    std::vector<std::uint64_t> out;
    for (const auto& o : c.orbits) out.push_back(o.size.convert_to<std::uint64_t>());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("orbit census against enumeration") {
    for (const auto& e : kSmall) {
        CAPTURE(e.shape.q);
        CAPTURE(e.shape.n);
        CAPTURE(e.shape.m);
        const auto census = orbit_partition(e.shape);
        CHECK(sorted_sizes(census) == e.sizes);
        CHECK(collision_prob_exact(census) == e.collision);

        // same partition as applying every group element
        const auto ids = oracle::orbits_by_enumeration(e.shape);
        std::map<int, std::uint32_t> link;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const auto [it, fresh] = link.emplace(ids[i], census.orbit_of[i]);
            REQUIRE(it->second == census.orbit_of[i]);
        }
        CHECK(link.size() == census.orbits.size());

        BigCount total = 0;
        for (std::size_t k = 0; k < census.orbits.size(); ++k) {
            const auto& o = census.orbits[k];
            total += o.size;
            CHECK(o.size * o.stabilizer_size == census.gamma_order);
            const auto first = std::find(census.orbit_of.begin(), census.orbit_of.end(), k) - census.orbit_of.begin();
            CHECK(o.representative.index() == static_cast<std::uint64_t>(first));
        }
        CHECK(total == census.total);
    }
}

TEST_CASE("collision probability sandwich and square sums") {
    for (const Shape s : {Shape{2, 1, 1}, Shape{2, 2, 2}, Shape{2, 3, 1}, Shape{3, 2, 1}, Shape{4, 1, 2}}) {
        const auto census = orbit_partition(s);
        const BigRational p = collision_prob_exact(census);
        CHECK(p >= 0);
        CHECK(p <= 1);
        CHECK(p <= collision_upper_ea(s).bound.exact_value());
        // sum_i |O_i|^2 counts the equivalent ordered pairs (F, G)
        BigCount pairs = 0;
        for (auto id : census.orbit_of) pairs += census.orbits[id].size;
        CHECK(orbit_size_square_sum(census) == pairs);
        CHECK(p == BigRational(pairs, census.total * census.total));
    }
    CHECK(collision_prob_exact(Shape{2, 2, 2}) == BigRational(779, 2048));
}

TEST_CASE("census csv") {
    const auto csv = census_csv(orbit_partition({2, 1, 1}));
    CHECK(csv == "orbit_id,size,stabilizer_size,representative_table\n0,2,2,0 0\n1,2,2,1 0\n");
}

TEST_CASE("census budget") {
    Limits tight;
    tight.oracle = 255;
    CHECK_THROWS_AS(orbit_partition({2, 2, 2}, tight), BudgetExceeded);
}

TEST_CASE("collision upper bounds") {
    const auto ea = collision_upper_ea({2, 1, 1});
    REQUIRE(ea.exact);
    CHECK(*ea.exact == 1);
    CHECK(ea.vacuous);
    const auto ccz = collision_upper_ccz({2, 1, 1});
    REQUIRE(ccz.exact);
    CHECK(*ccz.exact == 6);
    CHECK(ccz.vacuous);

    const auto big = collision_upper_ea({2, 4, 4});
    CHECK(big.bound.exponent() == doctest::Approx(2 * std::log2(322560.0) - 64).epsilon(1e-12));
    CHECK_FALSE(big.vacuous);
    CHECK(big.bound.render().rfind("2^", 0) == 0);

    for (const Shape s : {Shape{2, 3, 3}, Shape{2, 4, 4}, Shape{3, 3, 2}}) {
        CHECK(compare(collision_upper_ea(s).bound, collision_upper_ccz(s).bound) <= 0);
    }
}

TEST_CASE("stabilizer union bound") {
    const auto b = nontrivial_stab_bound({2, 3, 3});
    CHECK(b.case1_slack == 6);
    CHECK(b.case2_slack == 8);
    CHECK(b.binding_case == 1);
    CHECK(b.binding.bound.exponent() == doctest::Approx(2 * std::log2(1344.0) - 6));

    const auto b6 = nontrivial_stab_bound({2, 6, 6});
    CHECK(b6.binding_case == 2);
    CHECK(b6.case2_slack == 64);

    for (std::size_t n = 1; n <= 8; ++n) {
        const auto x = nontrivial_stab_bound({2, n, n});
        CHECK(x.binding_case == (x.case1_slack <= x.case2_slack ? 1 : 2));
        CHECK(compare(x.binding.bound, x.case1) >= 0);
        CHECK(compare(x.binding.bound, x.case2) >= 0);
    }
}

TEST_CASE("stabilizer census") {
    for (const Shape s : {Shape{2, 2, 1}, Shape{2, 2, 2}, Shape{2, 3, 1}, Shape{3, 1, 1}}) {
        const auto sc = nontrivial_stab_census(s);
        CHECK(sc.fraction == nontrivial_fraction(orbit_partition(s)));
        CHECK(sc.total == function_space_size(s));
        // brute force on the stabilizer of every function
        const auto group = oracle::whole_group(s);
        std::uint64_t nontrivial = 0;
        for (std::uint64_t i = 0; i < sc.total; ++i) {
            nontrivial += oracle::stabilizer_by_enumeration(group, FuncTable::from_index(s, i)) > 1;
        }
        CHECK(sc.nontrivial == nontrivial);
    }
    CHECK(nontrivial_stab_census({2, 2, 2}).fraction == 1);
}

TEST_CASE("Monte-Carlo estimates") {
    const Shape s{2, 2, 1};
    const auto a = mc_collision(s, 3000, 3);
    const auto b = mc_collision(s, 3000, 3);
    CHECK(a.hits == b.hits);
    CHECK(a.estimate == BigRational(a.hits, 3000));
    CHECK(a.ci_low <= 13.0 / 32);
    CHECK(a.ci_high >= 13.0 / 32);
    CHECK(std::abs(a.estimate.convert_to<double>() - 13.0 / 32) < 5 * std::sqrt(13.0 / 32 * 19.0 / 32 / 3000));

    Limits four;
    four.threads = 4;
    CHECK(mc_collision(s, 3000, 3, four).hits == a.hits);
    CHECK(mc_trivial_stab({2, 2, 2}, 200, 11).estimate == 1);
    CHECK(mc_trivial_stab({2, 3, 3}, 40, 11).hits == mc_trivial_stab({2, 3, 3}, 40, 11, four).hits);

    CHECK_THROWS_AS(mc_collision(s, 0, 1), ArgumentError);
    CHECK_THROWS_AS(mc_trivial_stab(s, 0, 1), ArgumentError);

    const auto j = nlohmann::json::parse(format_estimate(a, "collision", s));
    CHECK(j["trials"] == 3000);
    CHECK(j["seed"] == 3);
    CHECK(j["experiment"] == "collision");
}

TEST_CASE("Clopper-Pearson") {
    const auto [lo0, hi0] = clopper_pearson(0, 10);
    CHECK(lo0 == 0);
    CHECK(hi0 == doctest::Approx(1 - std::pow(0.025, 0.1)));
    const auto [lo1, hi1] = clopper_pearson(10, 10);
    CHECK(hi1 == 1);
    CHECK(lo1 == doctest::Approx(std::pow(0.025, 0.1)));
    const auto [lo, hi] = clopper_pearson(50, 100);
    CHECK(lo == doctest::Approx(0.3983).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.6017).epsilon(1e-3));
}

TEST_CASE("CCZ equivalence") {
    auto maps_graph = [](const AffineMap& L, const FuncTable& F, const FuncTable& G) {
        const auto gf = graph_of(F).points;
        auto gg = graph_of(G).points;
        std::vector<Code> image;
        for (auto p : gf) image.push_back(L(p));
        std::sort(image.begin(), image.end());
        std::sort(gg.begin(), gg.end());
        return image == gg;
    };
    const Shape s11{2, 1, 1};
    const FuncTable zero = FuncTable::zero(s11);
    const FuncTable id_map(s11, {0, 1});
    const auto w = ccz_equivalent(zero, id_map);
    REQUIRE(w);
    CHECK(maps_graph(*w, zero, id_map));

    const Shape s{2, 2, 1};
    const FuncTable product(s, {0, 0, 0, 1});
    CHECK_FALSE(ccz_equivalent(FuncTable::zero(s), product));
    const auto self = ccz_equivalent(product, product);
    REQUIRE(self);
    CHECK(maps_graph(*self, product, product));

    // EA-equivalent implies CCZ-equivalent
    const auto ins = affine_group(2, 2);
    const auto outs = affine_group(1, 2);
    SplitMix64 rng(21);
    for (int i = 0; i < 10; ++i) {
        const FuncTable F = random_function(s, rng);
        const FuncTable G = apply(EAElement(ins[rng.uniform(ins.size())], outs[rng.uniform(outs.size())]), F);
        const auto L = ccz_equivalent(F, G);
        REQUIRE(L);
        CHECK(maps_graph(*L, F, G));
    }

    Limits tight;
    tight.enumeration = 1000;
    CHECK_THROWS_AS(ccz_equivalent(FuncTable::zero({2, 2, 2}), FuncTable::zero({2, 2, 2}), tight), BudgetExceeded);
}
