#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "easym/functions.hpp"
#include "easym/limits.hpp"
#include "easym/linalg.hpp"

namespace easym {

/// An affine permutation x -> P x + a of F_q^d. Carries a lookup table over
/// radix-q codes, so d is kept small (q^d fits comfortably in memory).
class AffineMap {
public:
    /// Throws ArgumentError unless P is square, invertible and matches a.
    AffineMap(FqMatrix P, FqVector a);

    static AffineMap identity(const Field& field, std::size_t dim);

    const FqMatrix& linear() const noexcept { return P_; }
    const FqVector& translation() const noexcept { return a_; }
    std::size_t dim() const noexcept { return a_.dim(); }
    const Field& field() const noexcept { return a_.field(); }

    Code operator()(Code x) const { return lut_[x]; }
    FqVector operator()(const FqVector& x) const { return P_ * x + a_; }
    std::span<const Code> table() const noexcept { return lut_; }

    bool is_identity() const noexcept;
    /// Distinct for distinct maps of the same dimension (radix-q digits of P then a).
    std::uint64_t key() const;

    friend bool operator==(const AffineMap& x, const AffineMap& y) { return x.P_ == y.P_ && x.a_ == y.a_; }

private:
    FqMatrix P_;
    FqVector a_;
    std::vector<Code> lut_;
};

/// outer o inner.
AffineMap compose(const AffineMap& outer, const AffineMap& inner);
AffineMap inverse(const AffineMap& map);

/// All of AGL(d, q) as maps, in AglCursor order.
std::vector<AffineMap> affine_group(std::size_t dim, unsigned q, const Limits& limits = {});
/// A generating set of AGL(d, q): transvections I + E_ij, scalings of one
/// coordinate by a primitive element (q > 2) and translations by basis vectors.
std::vector<AffineMap> affine_generators(std::size_t dim, unsigned q);

/// g = (P, a, Q, b) acting by (g.F)(x) = Q F(P x + a) + b.
class EAElement {
public:
    EAElement(AffineMap input, AffineMap output);
    EAElement(FqMatrix P, FqVector a, FqMatrix Q, FqVector b);

    static EAElement identity(const Shape& shape);

    const AffineMap& input() const noexcept { return in_; }
    const AffineMap& output() const noexcept { return out_; }
    const FqMatrix& P() const noexcept { return in_.linear(); }
    const FqVector& a() const noexcept { return in_.translation(); }
    const FqMatrix& Q() const noexcept { return out_.linear(); }
    const FqVector& b() const noexcept { return out_.translation(); }
    Shape shape() const { return {in_.field().q(), in_.dim(), out_.dim()}; }

    bool is_identity() const noexcept { return in_.is_identity() && out_.is_identity(); }

    friend bool operator==(const EAElement& x, const EAElement& y) {
        return x.in_ == y.in_ && x.out_ == y.out_;
    }

private:
    AffineMap in_;
    AffineMap out_;
};

/// Table of x -> Q F(P x + a) + b.
FuncTable apply(const EAElement& g, const FuncTable& F);
/// apply(compose(g, h), F) == apply(g, apply(h, F)): output parts compose as
/// maps, input parts in reverse order.
EAElement compose(const EAElement& g, const EAElement& h);
EAElement inverse(const EAElement& g);

/// Generators of Gamma: each input generator paired with the identity output
/// map and vice versa.
std::vector<EAElement> ea_generators(const Shape& shape);

/// Structured text: {"q","n","m","P","a","Q","b"} with row-major matrices.
std::string format_element(const EAElement& g);
EAElement parse_element(std::string_view text);

/// Solutions of P x + a = x, i.e. (P - I) x = -a.
AffineSubspace fixed_points_affine(const FqMatrix& P, const FqVector& a);

struct OrbitDecomposition {
    struct Orbit {
        FqVector base_point;
        std::size_t length;
    };

    AffineMap perm;
    /// In order of their smallest code, which is the base point.
    std::vector<Orbit> orbits;
    std::size_t total_points = 0;
};

/// Cycle decomposition of x -> P x + a on F_q^n.
OrbitDecomposition orbits_affine(const FqMatrix& P, const FqVector& a);
OrbitDecomposition orbits_affine(const AffineMap& sigma);

/// All (Q, b) with v = Q u + b for every pair, optionally only invertible Q,
/// ordered by the coefficient tuple of the solution space. Throws
/// SolutionSpaceTooLarge if the solution space has more than limits.fit points.
std::vector<std::pair<FqMatrix, FqVector>> affine_fit(std::span<const std::pair<FqVector, FqVector>> pairs,
                                                      bool require_invertible, const Limits& limits = {});

struct StabilizerReport {
    /// Empty unless elements were requested.
    std::vector<EAElement> elements;
    BigCount size;
    bool is_trivial = true;
};

/// Searches Gamma by looping over input maps and fitting the output map.
/// Holds the enumerated AGL(n,q), so reuse one instance for many queries.
class EaSearch {
public:
    /// Throws BudgetExceeded when agl_order(n,q) > limits.enumeration.
    EaSearch(const Shape& shape, const Limits& limits = {});

    const Shape& shape() const noexcept { return shape_; }
    const std::vector<AffineMap>& input_group() const noexcept { return inputs_; }

    /// First g (input maps in enumeration order) with apply(g, F) == G.
    std::optional<EAElement> equivalent(const FuncTable& F, const FuncTable& G) const;
    StabilizerReport stabilizer(const FuncTable& F, bool collect_elements = true) const;
    BigCount stabilizer_size(const FuncTable& F) const;

private:
    Shape shape_;
    Limits limits_;
    std::vector<AffineMap> inputs_;
};

std::optional<EAElement> ea_equivalent(const FuncTable& F, const FuncTable& G, const Limits& limits = {});
StabilizerReport stabilizer(const FuncTable& F, const Limits& limits = {});

/// The orbit Gamma.F by breadth-first closure under ea_generators, as sorted
/// function indices. Needs q^{m q^n} < 2^64.
std::vector<std::uint64_t> orbit_of(const FuncTable& F);

}  // namespace easym
