#include "easym/linalg.hpp"

#include <cstdlib>
#include <string>

#include "easym/errors.hpp"

namespace easym {

// ---------------------------------------------------------------- vectors

FqVector::FqVector(const Field& field, std::size_t dim) : field_(&field), entries_(dim, 0) {}

FqVector::FqVector(const Field& field, std::vector<Elem> entries)
    : field_(&field), entries_(std::move(entries)) {
    for (Elem e : entries_) {
        if (e >= field.q()) throw ArgumentError("vector entry out of field range");
    }
}

bool FqVector::is_zero() const noexcept {
    for (Elem e : entries_) {
        if (e != 0) return false;
    }
    return true;
}

FqVector operator+(const FqVector& x, const FqVector& y) {
    if (x.dim() != y.dim()) throw ArgumentError("vector dimension mismatch");
    FqVector out(x.field(), x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) out[i] = x.field().add(x[i], y[i]);
    return out;
}

FqVector operator-(const FqVector& x, const FqVector& y) {
    if (x.dim() != y.dim()) throw ArgumentError("vector dimension mismatch");
    FqVector out(x.field(), x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) out[i] = x.field().sub(x[i], y[i]);
    return out;
}

FqVector FqVector::operator-() const {
    FqVector out(*field_, dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = field_->neg(entries_[i]);
    return out;
}

// ---------------------------------------------------------------- matrices

FqMatrix::FqMatrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(&field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

FqMatrix::FqMatrix(const Field& field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(&field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) throw ArgumentError("matrix entry count does not match shape");
    for (Elem e : entries_) {
        if (e >= field.q()) throw ArgumentError("matrix entry out of field range");
    }
}

FqMatrix FqMatrix::identity(const Field& field, std::size_t n) {
    FqMatrix I(field, n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

bool FqMatrix::is_identity() const noexcept {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
        }
    }
    return true;
}

FqMatrix operator*(const FqMatrix& A, const FqMatrix& B) {
    if (A.cols() != B.rows()) throw ArgumentError("matrix product dimension mismatch");
    const Field& f = A.field();
    FqMatrix C(f, A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t k = 0; k < A.cols(); ++k) {
            const Elem a = A(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) = f.add(C(i, j), f.mul(a, B(k, j)));
        }
    }
    return C;
}

FqVector operator*(const FqMatrix& A, const FqVector& x) {
    if (A.cols() != x.dim()) throw ArgumentError("matrix-vector dimension mismatch");
    const Field& f = A.field();
    FqVector y(f, A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        Elem acc = 0;
        for (std::size_t k = 0; k < A.cols(); ++k) acc = f.add(acc, f.mul(A(i, k), x[k]));
        y[i] = acc;
    }
    return y;
}

FqMatrix operator+(const FqMatrix& A, const FqMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw ArgumentError("matrix shape mismatch");
    FqMatrix C(A.field(), A.rows(), A.cols());
    for (std::size_t r = 0; r < A.rows(); ++r) {
        for (std::size_t c = 0; c < A.cols(); ++c) C(r, c) = A.field().add(A(r, c), B(r, c));
    }
    return C;
}

FqMatrix operator-(const FqMatrix& A, const FqMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw ArgumentError("matrix shape mismatch");
    FqMatrix C(A.field(), A.rows(), A.cols());
    for (std::size_t r = 0; r < A.rows(); ++r) {
        for (std::size_t c = 0; c < A.cols(); ++c) C(r, c) = A.field().sub(A(r, c), B(r, c));
    }
    return C;
}

// ---------------------------------------------------------------- elimination

std::vector<std::size_t> row_reduce(FqMatrix& M, std::size_t pivot_cols) {
    const Field& f = M.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < pivot_cols && row < M.rows(); ++col) {
        std::size_t sel = row;
        while (sel < M.rows() && M(sel, col) == 0) ++sel;
        if (sel == M.rows()) continue;
        if (sel != row) {
            for (std::size_t c = 0; c < M.cols(); ++c) std::swap(M(sel, c), M(row, c));
        }
        const Elem inv = f.inv(M(row, col));
        for (std::size_t c = 0; c < M.cols(); ++c) M(row, c) = f.mul(inv, M(row, c));
        for (std::size_t r = 0; r < M.rows(); ++r) {
            if (r == row || M(r, col) == 0) continue;
            const Elem factor = M(r, col);
            for (std::size_t c = 0; c < M.cols(); ++c) {
                M(r, c) = f.sub(M(r, c), f.mul(factor, M(row, c)));
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

BigCount AffineSubspace::size() const {
    if (empty()) return 0;
    return big_pow(point->field().q(), basis.size());
}

std::vector<FqVector> AffineSubspace::elements() const {
    std::vector<FqVector> out;
    if (empty()) return out;
    const Field& f = point->field();
    const std::size_t k = basis.size();
    std::vector<Elem> coeff(k, 0);
    while (true) {
        FqVector v = *point;
        for (std::size_t i = 0; i < k; ++i) {
            if (coeff[i] == 0) continue;
            for (std::size_t j = 0; j < ambient_dim; ++j) v[j] = f.add(v[j], f.mul(coeff[i], basis[i][j]));
        }
        out.push_back(std::move(v));
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++coeff[i] < f.q()) break;
            coeff[i] = 0;
            if (i == 0) return out;
        }
        if (k == 0) return out;
    }
}

AffineSubspace solve_linear(const FqMatrix& A, const FqVector& c) {
    if (A.rows() != c.dim()) throw ArgumentError("solve_linear: right-hand side has wrong dimension");
    const Field& f = A.field();
    const std::size_t n = A.cols();
    FqMatrix M(f, A.rows(), n + 1);
    for (std::size_t r = 0; r < A.rows(); ++r) {
        for (std::size_t col = 0; col < n; ++col) M(r, col) = A(r, col);
        M(r, n) = c[r];
    }
    const auto pivots = row_reduce(M, n);

    AffineSubspace S;
    S.ambient_dim = n;
    for (std::size_t r = pivots.size(); r < M.rows(); ++r) {
        if (M(r, n) != 0) return S;
    }
    FqVector point(f, n);
    for (std::size_t r = 0; r < pivots.size(); ++r) point[pivots[r]] = M(r, n);
    S.point = std::move(point);

    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        FqVector v(f, n);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(M(r, free));
        S.basis.push_back(std::move(v));
    }
    return S;
}

std::size_t rank(const FqMatrix& A) {
    FqMatrix M = A;
    return row_reduce(M, M.cols()).size();
}

FqMatrix inverse(const FqMatrix& A) {
    if (!A.is_square()) throw ArgumentError("inverse of a non-square matrix");
    const Field& f = A.field();
    const std::size_t n = A.rows();
    FqMatrix M(f, n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) M(r, c) = A(r, c);
        M(r, n + r) = 1;
    }
    if (row_reduce(M, n).size() != n) throw SingularMatrix();
    FqMatrix inv(f, n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = M(r, n + c);
    }
    return inv;
}

FqMatrix power(const FqMatrix& A, std::uint64_t exponent) {
    if (!A.is_square()) throw ArgumentError("power of a non-square matrix");
    FqMatrix result = FqMatrix::identity(A.field(), A.rows());
    FqMatrix base = A;
    while (exponent != 0) {
        if (exponent & 1U) result = result * base;
        exponent >>= 1U;
        if (exponent != 0) base = base * base;
    }
    return result;
}

// ---------------------------------------------------------------- group orders

BigCount gl_order(std::size_t n, unsigned q) {
    Field::get(q);
    if (n == 0) throw ArgumentError("dimension must be positive");
    const BigCount qn = big_pow(q, n);
    BigCount order = 1;
    BigCount qi = 1;
    for (std::size_t i = 0; i < n; ++i) {
        order *= qn - qi;
        qi *= q;
    }
    return order;
}

BigCount agl_order(std::size_t n, unsigned q) { return big_pow(q, n) * gl_order(n, q); }

void check_budget(const char* what, const BigCount& required, std::uint64_t budget) {
    if (required > budget) throw BudgetExceeded(what, required.str(), std::to_string(budget));
}

// ---------------------------------------------------------------- enumeration

namespace {

// Lexicographic successor with the last position fastest; false on wrap-around.
bool advance(std::vector<Elem>& digits, unsigned q) {
    for (std::size_t i = digits.size(); i > 0; --i) {
        if (++digits[i - 1] < q) return true;
        digits[i - 1] = 0;
    }
    return false;
}

}  // namespace

GlCursor::GlCursor(std::size_t n, unsigned q) : field_(&Field::get(q)), n_(n), entries_(n * n, 0) {
    if (n == 0) throw ArgumentError("dimension must be positive");
}

std::optional<FqMatrix> GlCursor::next() {
    while (!done_) {
        FqMatrix candidate(*field_, n_, n_, entries_);
        done_ = !advance(entries_, field_->q());
        if (rank(candidate) == n_) return candidate;
    }
    return std::nullopt;
}

AglCursor::AglCursor(std::size_t n, unsigned q) : matrices_(n, q), translation_(n, 0), q_(q) {
    current_ = matrices_.next();
}

std::optional<std::pair<FqMatrix, FqVector>> AglCursor::next() {
    if (done_ || !current_) return std::nullopt;
    std::pair<FqMatrix, FqVector> out{*current_, FqVector(current_->field(), translation_)};
    if (!advance(translation_, q_)) {
        current_ = matrices_.next();
        if (!current_) done_ = true;
    }
    return out;
}

std::vector<FqMatrix> enumerate_gl(std::size_t n, unsigned q, const Limits& limits) {
    check_budget("enumerating AGL", agl_order(n, q), limits.enumeration);
    std::vector<FqMatrix> out;
    GlCursor cursor(n, q);
    while (auto M = cursor.next()) out.push_back(std::move(*M));
    return out;
}

std::vector<std::pair<FqMatrix, FqVector>> enumerate_agl(std::size_t n, unsigned q,
                                                         const Limits& limits) {
    check_budget("enumerating AGL", agl_order(n, q), limits.enumeration);
    std::vector<std::pair<FqMatrix, FqVector>> out;
    AglCursor cursor(n, q);
    while (auto g = cursor.next()) out.push_back(std::move(*g));
    return out;
}

// ---------------------------------------------------------------- limits

namespace {

void override_from_env(const char* name, std::uint64_t& slot) {
    const char* value = std::getenv(name);
    if (value == nullptr || *value == '\0') return;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(value, &end, 10);
    if (*end != '\0' || parsed == 0) {
        throw ConfigurationError(std::string(name) + " must be a positive integer");
    }
    slot = parsed;
}

}  // namespace

Limits Limits::from_environment() {
    Limits limits;
    override_from_env("EASYM_ENUMERATION_BUDGET", limits.enumeration);
    override_from_env("EASYM_ORACLE_BUDGET", limits.oracle);
    override_from_env("EASYM_FIT_BUDGET", limits.fit);
    override_from_env("EASYM_BURNSIDE_BUDGET", limits.burnside);
    override_from_env("EASYM_CONJUGACY_BUDGET", limits.conjugacy);
    return limits;
}

}  // namespace easym
