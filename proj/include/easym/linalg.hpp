#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "easym/bigcount.hpp"
#include "easym/field.hpp"
#include "easym/limits.hpp"

namespace easym {

/// A vector of F_q^dim.
class FqVector {
public:
    FqVector(const Field& field, std::size_t dim);
    FqVector(const Field& field, std::vector<Elem> entries);

    const Field& field() const noexcept { return *field_; }
    std::size_t dim() const noexcept { return entries_.size(); }
    Elem operator[](std::size_t i) const { return entries_[i]; }
    Elem& operator[](std::size_t i) { return entries_[i]; }
    std::span<const Elem> entries() const noexcept { return entries_; }

    bool is_zero() const noexcept;

    friend FqVector operator+(const FqVector& x, const FqVector& y);
    friend FqVector operator-(const FqVector& x, const FqVector& y);
    FqVector operator-() const;
    friend bool operator==(const FqVector& x, const FqVector& y) {
        return x.field_->q() == y.field_->q() && x.entries_ == y.entries_;
    }

private:
    const Field* field_;
    std::vector<Elem> entries_;
};

/// A dense rows x cols matrix over F_q, row-major.
class FqMatrix {
public:
    FqMatrix(const Field& field, std::size_t rows, std::size_t cols);
    FqMatrix(const Field& field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

    static FqMatrix identity(const Field& field, std::size_t n);

    const Field& field() const noexcept { return *field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Elem operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    Elem& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    std::span<const Elem> entries() const noexcept { return entries_; }

    bool is_identity() const noexcept;
    bool is_square() const noexcept { return rows_ == cols_; }

    friend FqMatrix operator*(const FqMatrix& A, const FqMatrix& B);
    friend FqVector operator*(const FqMatrix& A, const FqVector& x);
    friend FqMatrix operator+(const FqMatrix& A, const FqMatrix& B);
    friend FqMatrix operator-(const FqMatrix& A, const FqMatrix& B);
    friend bool operator==(const FqMatrix& A, const FqMatrix& B) {
        return A.field_->q() == B.field_->q() && A.rows_ == B.rows_ && A.cols_ == B.cols_ &&
               A.entries_ == B.entries_;
    }

private:
    const Field* field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> entries_;
};

/// Solution set {point + span(basis)} of a linear system, or the empty set.
struct AffineSubspace {
    std::size_t ambient_dim = 0;
    std::optional<FqVector> point;
    std::vector<FqVector> basis;

    bool empty() const noexcept { return !point.has_value(); }
    std::size_t dimension() const noexcept { return basis.size(); }
    /// q^dimension, or 0 when empty.
    BigCount size() const;
    /// Every element, ordered by the coefficient tuple (first basis vector
    /// varies slowest).
    std::vector<FqVector> elements() const;
};

/// Reduces M in place to reduced row echelon form, choosing pivots only in
/// the first `pivot_cols` columns (first nonzero entry, top to bottom).
/// Returns the pivot column of each pivot row.
std::vector<std::size_t> row_reduce(FqMatrix& M, std::size_t pivot_cols);

/// All x with A x = c. Gaussian elimination with first-nonzero pivoting.
AffineSubspace solve_linear(const FqMatrix& A, const FqVector& c);

std::size_t rank(const FqMatrix& A);
/// Throws SingularMatrix.
FqMatrix inverse(const FqMatrix& A);
FqMatrix power(const FqMatrix& A, std::uint64_t exponent);

/// prod_{i<n} (q^n - q^i)
BigCount gl_order(std::size_t n, unsigned q);
/// q^n * gl_order(n, q)
BigCount agl_order(std::size_t n, unsigned q);

/// Cursor over GL(n,q) in lexicographic order of the row-major entries (the
/// last entry varies fastest). Copying a cursor forks the stream.
class GlCursor {
public:
    GlCursor(std::size_t n, unsigned q);
    std::optional<FqMatrix> next();

private:
    const Field* field_;
    std::size_t n_;
    std::vector<Elem> entries_;
    bool done_ = false;
};

/// Cursor over AGL(n,q) as (P, a) pairs: matrices in GlCursor order, and for
/// each matrix the translations in lexicographic order (first entry slowest).
class AglCursor {
public:
    AglCursor(std::size_t n, unsigned q);
    std::optional<std::pair<FqMatrix, FqVector>> next();

private:
    GlCursor matrices_;
    std::optional<FqMatrix> current_;
    std::vector<Elem> translation_;
    unsigned q_;
    bool done_ = false;
};

/// Materialized streams; throw BudgetExceeded when agl_order(n,q) exceeds
/// limits.enumeration.
std::vector<FqMatrix> enumerate_gl(std::size_t n, unsigned q, const Limits& limits = {});
std::vector<std::pair<FqMatrix, FqVector>> enumerate_agl(std::size_t n, unsigned q,
                                                         const Limits& limits = {});

/// Throws BudgetExceeded naming `what` when required > budget.
void check_budget(const char* what, const BigCount& required, std::uint64_t budget);

}  // namespace easym
