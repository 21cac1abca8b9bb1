#include "easym/field.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <string>

#include "easym/errors.hpp"

namespace easym {
namespace {

struct FieldShape {
    unsigned q;
    unsigned p;
    unsigned e;
    // Conway polynomial coefficients c_0..c_{e-1} of the monic modulus
    // x^e + c_{e-1} x^{e-1} + ... + c_0; unused for prime fields.
    std::array<unsigned, 3> low;
};

constexpr std::array<FieldShape, 7> kShapes{{
    {2, 2, 1, {0, 0, 0}},
    {3, 3, 1, {0, 0, 0}},
    {4, 2, 2, {1, 1, 0}},
    {5, 5, 1, {0, 0, 0}},
    {7, 7, 1, {0, 0, 0}},
    {8, 2, 3, {1, 1, 0}},
    {9, 3, 2, {2, 2, 0}},
}};

const FieldShape* find_shape(unsigned q) {
    for (const auto& s : kShapes) {
        if (s.q == q) return &s;
    }
    return nullptr;
}

// Digit-wise representation helpers for extension fields.
std::vector<unsigned> digits(unsigned c, unsigned p, unsigned e) {
    std::vector<unsigned> d(e);
    for (unsigned i = 0; i < e; ++i) {
        d[i] = c % p;
        c /= p;
    }
    return d;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p) {
    unsigned c = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) c = c * p + *it;
    return c;
}

}  // namespace

bool Field::supported(unsigned q) { return find_shape(q) != nullptr; }

const Field& Field::get(unsigned q) {
    static std::array<std::unique_ptr<Field>, 10> cache;
    static std::once_flag flags[10];
    if (!supported(q)) {
        throw ConfigurationError("unsupported field size q = " + std::to_string(q) +
                                 " (supported: 2, 3, 4, 5, 7, 8, 9)");
    }
    std::call_once(flags[q], [q] { cache[q].reset(new Field(q)); });
    return *cache[q];
}

Field::Field(unsigned q) : q_(q) {
    const FieldShape& shape = *find_shape(q);
    p_ = shape.p;
    e_ = shape.e;
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.resize(q);
    exp_.resize(q - 1);
    log_.assign(q, 0);

    for (unsigned a = 0; a < q; ++a) {
        auto da = digits(a, p_, e_);
        for (unsigned b = 0; b < q; ++b) {
            auto db = digits(b, p_, e_);
            std::vector<unsigned> s(e_);
            for (unsigned i = 0; i < e_; ++i) s[i] = (da[i] + db[i]) % p_;
            add_[a * q + b] = static_cast<Elem>(undigits(s, p_));
        }
    }
    for (unsigned a = 0; a < q; ++a) {
        for (unsigned b = 0; b < q; ++b) {
            if (add_[a * q + b] == 0) neg_[a] = static_cast<Elem>(b);
        }
    }

    // Powers of the primitive element: x for extension fields, the least
    // primitive root for prime fields.
    auto times_generator = [&](unsigned c) -> unsigned {
        if (e_ == 1) return c;  // unused
        auto d = digits(c, p_, e_);
        // multiply by x, then reduce x^e = -(c_{e-1} x^{e-1} + ... + c_0)
        unsigned top = d[e_ - 1];
        for (unsigned i = e_ - 1; i > 0; --i) d[i] = d[i - 1];
        d[0] = 0;
        for (unsigned i = 0; i < e_; ++i) d[i] = (d[i] + (p_ - top) * shape.low[i]) % p_;
        return undigits(d, p_);
    };

    if (e_ == 1) {
        for (unsigned gen = 1; gen < q; ++gen) {
            unsigned x = 1, order = 0;
            do {
                x = x * gen % q;
                ++order;
            } while (x != 1);
            if (order == q - 1) {
                unsigned v = 1;
                for (unsigned k = 0; k + 1 < q; ++k) {
                    exp_[k] = static_cast<Elem>(v);
                    v = v * gen % q;
                }
                break;
            }
        }
    } else {
        unsigned v = 1;
        for (unsigned k = 0; k + 1 < q; ++k) {
            exp_[k] = static_cast<Elem>(v);
            v = times_generator(v);
        }
        if (v != 1) throw ConfigurationError("modulus for q = " + std::to_string(q) + " is not primitive");
    }
    std::vector<bool> seen(q, false);
    for (unsigned k = 0; k + 1 < q; ++k) {
        if (exp_[k] == 0 || seen[exp_[k]]) {
            throw ConfigurationError("generator for q = " + std::to_string(q) + " is not primitive");
        }
        seen[exp_[k]] = true;
        log_[exp_[k]] = k;
    }
    for (unsigned a = 0; a < q; ++a) {
        for (unsigned b = 0; b < q; ++b) {
            Elem prod = 0;
            if (a != 0 && b != 0) prod = exp_[(log_[a] + log_[b]) % (q - 1)];
            mul_[a * q + b] = prod;
        }
        if (a != 0) inv_[a] = exp_[(q - 1 - log_[a]) % (q - 1)];
    }

    verify_axioms();
}

void Field::verify_axioms() const {
    auto fail = [this](const char* what) {
        throw ConfigurationError(std::string("field tables for q = ") + std::to_string(q_) +
                                 " violate " + what);
    };
    for (unsigned a = 0; a < q_; ++a) {
        if (add(a, 0) != a || mul(a, 1) != a) fail("identity laws");
        if (add(a, neg(a)) != 0) fail("additive inverses");
        if (a != 0 && mul(a, inv(a)) != 1) fail("multiplicative inverses");
        for (unsigned b = 0; b < q_; ++b) {
            if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) fail("commutativity");
            for (unsigned c = 0; c < q_; ++c) {
                if (add(add(a, b), c) != add(a, add(b, c))) fail("additive associativity");
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail("multiplicative associativity");
                if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail("distributivity");
            }
        }
    }
}

}  // namespace easym
