#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace easym {

using Elem = std::uint8_t;

/// The finite field F_q for q in {2, 3, 4, 5, 7, 8, 9}.
///
/// Elements are the integers [0, q). For prime q this is arithmetic mod q.
/// For q = p^e with e > 1 an element c encodes the polynomial
/// sum_i d_i x^i where d_i are the base-p digits of c, reduced modulo the
/// Conway polynomial of degree e over F_p:
///
///     q = 4: x^2 + x + 1
///     q = 8: x^3 + x + 1
///     q = 9: x^2 + 2x + 2
///
/// In each case x (code p) is a primitive element and multiplication goes
/// through exp/log tables. Instances are immutable singletons.
class Field {
public:
    /// Throws ConfigurationError for unsupported q.
    static const Field& get(unsigned q);
    static bool supported(unsigned q);

    unsigned q() const noexcept { return q_; }
    unsigned characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return e_; }

    Elem add(Elem a, Elem b) const noexcept { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const noexcept { return add_[a * q_ + neg_[b]]; }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    Elem mul(Elem a, Elem b) const noexcept { return mul_[a * q_ + b]; }
    /// Multiplicative inverse; a must be nonzero.
    Elem inv(Elem a) const noexcept { return inv_[a]; }

    /// A generator of the multiplicative group.
    Elem primitive() const noexcept { return exp_[1 % (q_ - 1)]; }
    /// primitive()^k.
    Elem exp(unsigned k) const noexcept { return exp_[k % (q_ - 1)]; }
    /// Discrete log to base primitive(); a must be nonzero.
    unsigned log(Elem a) const noexcept { return log_[a]; }

    bool operator==(const Field& other) const noexcept { return q_ == other.q_; }

private:
    explicit Field(unsigned q);
    void verify_axioms() const;

    unsigned q_;
    unsigned p_;
    unsigned e_;
    std::vector<Elem> add_;
    std::vector<Elem> mul_;
    std::vector<Elem> neg_;
    std::vector<Elem> inv_;
    std::vector<Elem> exp_;
    std::vector<unsigned> log_;
};

}  // namespace easym
