#pragma once

#include <string>
#include <vector>

#include "easym/bigcount.hpp"
#include "easym/ea_action.hpp"
#include "easym/limits.hpp"

namespace easym {

enum class CountMethod { exhaustive, conjugacy };

const char* to_string(CountMethod method);
/// Throws ArgumentError for anything but "exhaustive" or "conjugacy".
CountMethod parse_method(const std::string& name);

struct ClassCountReport {
    Shape shape;
    CountMethod method = CountMethod::exhaustive;
    BigCount gamma_order;
    /// sum over Gamma of |Fix(g)|.
    BigCount burnside_sum;
    BigCount class_count;
    /// |F| / |Gamma|.
    BigRational naive_estimate;
    /// class_count / naive_estimate.
    BigRational relative_ratio;
};

/// Averages fix_count_exact over every element of Gamma. Throws BudgetExceeded
/// when |Gamma| > limits.burnside and IntegralityViolation if |Gamma| does not
/// divide the sum.
ClassCountReport count_classes_exhaustive(const Shape& shape, const Limits& limits = {});

struct ConjugacyClass {
    AffineMap representative;
    BigCount size;
};

struct ConjugacyClassTable {
    std::size_t n;
    unsigned q;
    /// Ordered by the enumeration index of the representative, which is the
    /// first class member in AglCursor order.
    std::vector<ConjugacyClass> classes;
};

/// Conjugacy classes of AGL(n,q), each found as the closure of one element
/// under conjugation by affine_generators. Throws BudgetExceeded when
/// agl_order(n,q) > limits.conjugacy.
ConjugacyClassTable conjugacy_classes_agl(std::size_t n, unsigned q, const Limits& limits = {});

/// Burnside sum over pairs of classes of AGL(U) and AGL(W), weighting each
/// representative pair by the product of the class sizes.
ClassCountReport count_classes_conjugacy(const Shape& shape, const Limits& limits = {});

ClassCountReport count_classes(const Shape& shape, CountMethod method, const Limits& limits = {});

struct RelativeError {
    BigRational ratio;
    /// |ratio - 1|
    BigRational deviation;
};

RelativeError relative_error(const ClassCountReport& report);
RelativeError relative_error(const Shape& shape, CountMethod method, const Limits& limits = {});

/// q,n,m,method,gamma_order,class_count,naive_num,naive_den,ratio_decimal
std::string class_count_csv_header();
std::string class_count_csv_row(const ClassCountReport& report);

}  // namespace easym
