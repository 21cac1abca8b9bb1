#include <doctest.h>

#include <set>

#include "easym/burnside.hpp"
#include "easym/collision.hpp"
#include "easym/errors.hpp"
#include "oracles.hpp"

using namespace easym;

namespace {

struct Expected {
    Shape shape;
    unsigned classes;
    BigRational ratio;
};

// Independently computed by a separate brute-force program over the whole group.
const Expected kSmall[] = {
    {{2, 1, 1}, 2, BigRational(2)},
    {{2, 1, 2}, 2, BigRational(6)},
    {{2, 2, 1}, 3, BigRational(9)},
    {{2, 2, 2}, 5, BigRational(45, 4)},
    {{3, 1, 1}, 3, BigRational(4)},
};

}  // namespace

TEST_CASE("class counts at small sizes") {
    for (const auto& e : kSmall) {
        CAPTURE(e.shape.q);
        CAPTURE(e.shape.n);
        CAPTURE(e.shape.m);
        const auto ex = count_classes(e.shape, CountMethod::exhaustive);
        const auto cj = count_classes(e.shape, CountMethod::conjugacy);
        CHECK(ex.class_count == e.classes);
        CHECK(cj.class_count == e.classes);
        CHECK(ex.burnside_sum == cj.burnside_sum);
        CHECK(ex.relative_ratio == e.ratio);
        CHECK(ex.gamma_order == agl_order(e.shape.n, e.shape.q) * agl_order(e.shape.m, e.shape.q));
        CHECK(ex.naive_estimate == BigRational(function_space_size(e.shape), ex.gamma_order));
        CHECK(BigRational(ex.class_count) >= ex.naive_estimate);

        std::vector<std::uint64_t> sizes;
        oracle::orbits_by_enumeration(e.shape, &sizes);
        CHECK(sizes.size() == e.classes);
        CHECK(orbit_partition(e.shape).orbits.size() == e.classes);
    }
}

TEST_CASE("both methods agree on larger shapes") {
    for (const Shape s : {Shape{2, 3, 1}, Shape{2, 3, 2}, Shape{2, 2, 3}, Shape{3, 2, 1}, Shape{3, 1, 2}, Shape{4, 1, 1},
                          Shape{5, 1, 2}, Shape{2, 3, 3}}) {
        CAPTURE(s.q);
        CAPTURE(s.n);
        CAPTURE(s.m);
        const auto ex = count_classes_exhaustive(s);
        const auto cj = count_classes_conjugacy(s);
        CHECK(ex.burnside_sum == cj.burnside_sum);
        CHECK(ex.class_count == cj.class_count);
        CHECK(BigRational(ex.class_count) >= ex.naive_estimate);
    }
}

TEST_CASE("partition agrees with Burnside where enumerable") {
    for (const Shape s : {Shape{2, 3, 1}, Shape{3, 2, 1}, Shape{2, 2, 3}, Shape{4, 1, 2}}) {
        CHECK(orbit_partition(s).orbits.size() == count_classes_conjugacy(s).class_count);
    }
}

TEST_CASE("conjugacy classes of AGL") {
    const auto t1 = conjugacy_classes_agl(1, 2);
    CHECK(t1.classes.size() == 2);
    for (auto [n, q] : {std::pair<std::size_t, unsigned>{1, 3}, {2, 2}, {3, 2}, {2, 3}, {1, 8}}) {
        CAPTURE(n);
        CAPTURE(q);
        const auto t = conjugacy_classes_agl(n, q);
        BigCount total = 0;
        std::set<std::uint64_t> reps;
        for (const auto& c : t.classes) {
            total += c.size;
            CHECK(agl_order(n, q) % c.size == 0);
            CHECK(reps.insert(c.representative.key()).second);
        }
        CHECK(total == agl_order(n, q));
    }
    CHECK(conjugacy_classes_agl(2, 2).classes.size() == 5);

    // brute-force class count for AGL(2,2): orbits of conjugation by the whole group
    const auto g = affine_group(2, 2);
    std::set<std::uint64_t> seen;
    std::size_t classes = 0;
    for (const auto& x : g) {
        if (seen.count(x.key())) continue;
        ++classes;
        for (const auto& h : g) seen.insert(compose(compose(h, x), inverse(h)).key());
    }
    CHECK(classes == conjugacy_classes_agl(2, 2).classes.size());

    Limits tight;
    tight.conjugacy = 100;
    CHECK_THROWS_AS(conjugacy_classes_agl(3, 2, tight), BudgetExceeded);
}

TEST_CASE("budgets and arguments") {
    Limits tight;
    tight.burnside = 100;
    CHECK_THROWS_AS(count_classes_exhaustive({2, 2, 2}, tight), BudgetExceeded);
    CHECK_THROWS_AS(parse_method("sampled"), ArgumentError);
    CHECK(parse_method("conjugacy") == CountMethod::conjugacy);
    CHECK(std::string(to_string(CountMethod::exhaustive)) == "exhaustive");
}

TEST_CASE("relative error") {
    const auto r = relative_error({2, 1, 1}, CountMethod::exhaustive);
    CHECK(r.ratio == 2);
    CHECK(r.deviation == 1);
    CHECK(relative_error({2, 2, 2}, CountMethod::conjugacy).deviation == BigRational(41, 4));
    // 70 classes at (2,3,3), from the independent permutation-level count
    const auto big = relative_error({2, 3, 3}, CountMethod::conjugacy);
    CHECK(big.deviation == BigRational(13387, 2048));
    CHECK(count_classes_conjugacy({2, 3, 3}).class_count == 70);
}

TEST_CASE("csv row") {
    const auto rep = count_classes({2, 2, 2}, CountMethod::exhaustive);
    CHECK(class_count_csv_header() == "q,n,m,method,gamma_order,class_count,naive_num,naive_den,ratio_decimal");
    CHECK(class_count_csv_row(rep) == "2,2,2,exhaustive,576,5,4,9,11.25000000000000000000");
}
