#include "easym/ea_action.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <unordered_set>

#include <json.hpp>

#include "easym/errors.hpp"
#include "easym/parallel.hpp"

namespace easym {

// ---------------------------------------------------------------- affine maps

AffineMap::AffineMap(FqMatrix P, FqVector a) : P_(std::move(P)), a_(std::move(a)) {
    if (!P_.is_square() || P_.rows() != a_.dim()) throw ArgumentError("affine map shape mismatch");
    if (P_.field() != a_.field()) throw ArgumentError("affine map mixes fields");
    if (rank(P_) != P_.rows()) throw ArgumentError("affine map has a singular linear part");
    const Code size = space_size(dim(), field().q());
    lut_.resize(size);
    for (Code x = 0; x < size; ++x) lut_[x] = encode_vec(P_ * decode_vec(x, dim(), field().q()) + a_);
}

AffineMap AffineMap::identity(const Field& field, std::size_t dim) {
    return AffineMap(FqMatrix::identity(field, dim), FqVector(field, dim));
}

bool AffineMap::is_identity() const noexcept { return P_.is_identity() && a_.is_zero(); }

std::uint64_t AffineMap::key() const {
    const unsigned q = field().q();
    std::uint64_t k = 0;
    auto push = [&](Elem e) {
        if (k > (UINT64_MAX - e) / q) throw ArgumentError("affine map key overflows 64 bits");
        k = k * q + e;
    };
    for (Elem e : P_.entries()) push(e);
    for (Elem e : a_.entries()) push(e);
    return k;
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
    if (outer.dim() != inner.dim()) throw ArgumentError("composing affine maps of different dimension");
    return AffineMap(outer.linear() * inner.linear(), outer.linear() * inner.translation() + outer.translation());
}

AffineMap inverse(const AffineMap& map) {
    FqMatrix Pinv = easym::inverse(map.linear());
    FqVector a = -(Pinv * map.translation());
    return AffineMap(std::move(Pinv), std::move(a));
}

std::vector<AffineMap> affine_group(std::size_t dim, unsigned q, const Limits& limits) {
    check_budget("enumerating AGL", agl_order(dim, q), limits.enumeration);
    std::vector<AffineMap> out;
    AglCursor cursor(dim, q);
    while (auto g = cursor.next()) out.emplace_back(std::move(g->first), std::move(g->second));
    return out;
}

std::vector<AffineMap> affine_generators(std::size_t dim, unsigned q) {
    const Field& f = Field::get(q);
    const FqMatrix I = FqMatrix::identity(f, dim);
    const FqVector zero(f, dim);
    std::vector<AffineMap> gens;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (i == j) continue;
            FqMatrix T = I;
            T(i, j) = 1;
            gens.emplace_back(std::move(T), zero);
        }
    }
    if (q > 2) {
        for (std::size_t i = 0; i < dim; ++i) {
            FqMatrix D = I;
            D(i, i) = f.primitive();
            gens.emplace_back(std::move(D), zero);
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        FqVector e(f, dim);
        e[i] = 1;
        gens.emplace_back(I, std::move(e));
    }
    return gens;
}

// ---------------------------------------------------------------- EA elements

EAElement::EAElement(AffineMap input, AffineMap output) : in_(std::move(input)), out_(std::move(output)) {
    if (in_.field() != out_.field()) throw ArgumentError("EA element mixes fields");
}

EAElement::EAElement(FqMatrix P, FqVector a, FqMatrix Q, FqVector b)
    : EAElement(AffineMap(std::move(P), std::move(a)), AffineMap(std::move(Q), std::move(b))) {}

EAElement EAElement::identity(const Shape& shape) {
    const Field& f = Field::get(shape.q);
    return EAElement(AffineMap::identity(f, shape.n), AffineMap::identity(f, shape.m));
}

FuncTable apply(const EAElement& g, const FuncTable& F) {
    if (g.shape() != F.shape()) throw ArgumentError("EA element and function have different shapes");
    std::vector<Code> out(F.size());
    for (std::size_t x = 0; x < F.size(); ++x) out[x] = g.output()(F[g.input()(static_cast<Code>(x))]);
    return FuncTable(F.shape(), std::move(out));
}

EAElement compose(const EAElement& g, const EAElement& h) {
    if (g.shape() != h.shape()) throw ArgumentError("composing EA elements of different shapes");
    return EAElement(compose(h.input(), g.input()), compose(g.output(), h.output()));
}

EAElement inverse(const EAElement& g) { return EAElement(inverse(g.input()), inverse(g.output())); }

std::vector<EAElement> ea_generators(const Shape& shape) {
    const Field& f = Field::get(shape.q);
    std::vector<EAElement> gens;
    for (auto& a : affine_generators(shape.n, shape.q)) gens.emplace_back(std::move(a), AffineMap::identity(f, shape.m));
    for (auto& b : affine_generators(shape.m, shape.q)) gens.emplace_back(AffineMap::identity(f, shape.n), std::move(b));
    return gens;
}

// ---------------------------------------------------------------- serialization

std::string format_element(const EAElement& g) {
    nlohmann::ordered_json j;
    const Shape s = g.shape();
    j["q"] = s.q;
    j["n"] = s.n;
    j["m"] = s.m;
    auto entries = [](std::span<const Elem> e) { return std::vector<unsigned>(e.begin(), e.end()); };
    j["P"] = entries(g.P().entries());
    j["a"] = entries(g.a().entries());
    j["Q"] = entries(g.Q().entries());
    j["b"] = entries(g.b().entries());
    return j.dump() + "\n";
}

EAElement parse_element(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(ParseError::Kind::syntax, "malformed EA element document", e.byte);
    }
    try {
        const unsigned q = j.at("q").get<unsigned>();
        const std::size_t n = j.at("n").get<std::size_t>();
        const std::size_t m = j.at("m").get<std::size_t>();
        const Field& f = Field::get(q);
        auto elems = [](const nlohmann::json& arr) {
            std::vector<Elem> out;
            for (const auto& v : arr) {
                const auto x = v.get<unsigned>();
                if (x > 255) throw ArgumentError("entry out of range");
                out.push_back(static_cast<Elem>(x));
            }
            return out;
        };
        return EAElement(FqMatrix(f, n, n, elems(j.at("P"))), FqVector(f, elems(j.at("a"))),
                         FqMatrix(f, m, m, elems(j.at("Q"))), FqVector(f, elems(j.at("b"))));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ParseError::Kind::header, std::string("invalid EA element: ") + e.what(), 0);
    } catch (const ArgumentError& e) {
        throw ParseError(ParseError::Kind::header, std::string("invalid EA element: ") + e.what(), 0);
    }
}

// ---------------------------------------------------------------- fixed points & orbits

AffineSubspace fixed_points_affine(const FqMatrix& P, const FqVector& a) {
    return solve_linear(P - FqMatrix::identity(P.field(), P.rows()), -a);
}

OrbitDecomposition orbits_affine(const FqMatrix& P, const FqVector& a) { return orbits_affine(AffineMap(P, a)); }

OrbitDecomposition orbits_affine(const AffineMap& sigma) {
    const auto table = sigma.table();
    OrbitDecomposition d{sigma, {}, table.size()};
    std::vector<bool> seen(table.size(), false);
    for (Code x = 0; x < table.size(); ++x) {
        if (seen[x]) continue;
        std::size_t length = 0;
        Code y = x;
        do {
            seen[y] = true;
            y = table[y];
            ++length;
        } while (y != x);
        d.orbits.push_back({decode_vec(x, sigma.dim(), sigma.field().q()), length});
    }
    return d;
}

// ---------------------------------------------------------------- affine fit

namespace {

// Enumerates the solutions (Q, b) of v = Q u + b over the distinct pairs,
// calling emit(Q, b) in coefficient order. Returns false when inconsistent.
template <class Emit>
void fit_pairs(const Field& f, std::size_t m, std::span<const std::pair<FqVector, FqVector>> pairs,
               bool require_invertible, std::uint64_t fit_limit, Emit&& emit) {
    const std::size_t unknowns = m + 1;
    FqMatrix M(f, pairs.size(), unknowns + m);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        const auto& [u, v] = pairs[r];
        if (u.dim() != m || v.dim() != m) throw ArgumentError("affine_fit: vectors must all have dimension m");
        for (std::size_t j = 0; j < m; ++j) M(r, j) = u[j];
        M(r, m) = 1;
        for (std::size_t i = 0; i < m; ++i) M(r, unknowns + i) = v[i];
    }
    const auto pivots = row_reduce(M, unknowns);
    for (std::size_t r = pivots.size(); r < M.rows(); ++r) {
        for (std::size_t i = 0; i < m; ++i) {
            if (M(r, unknowns + i) != 0) return;
        }
    }

    // Row i of [Q | b] is z_i = point_i + sum_k c_{ik} kernel_k.
    std::vector<bool> is_pivot(unknowns, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Elem>> kernel;
    for (std::size_t free = 0; free < unknowns; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Elem> v(unknowns, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(M(r, free));
        kernel.push_back(std::move(v));
    }
    std::vector<std::vector<Elem>> points(m, std::vector<Elem>(unknowns, 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t r = 0; r < pivots.size(); ++r) points[i][pivots[r]] = M(r, unknowns + i);
    }

    const std::size_t free_coeffs = m * kernel.size();
    const BigCount space = big_pow(f.q(), free_coeffs);
    if (space > fit_limit) throw SolutionSpaceTooLarge(space.str());

    std::vector<Elem> coeff(free_coeffs, 0);
    while (true) {
        FqMatrix Q(f, m, m);
        FqVector b(f, m);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Elem> z = points[i];
            for (std::size_t k = 0; k < kernel.size(); ++k) {
                const Elem c = coeff[i * kernel.size() + k];
                if (c == 0) continue;
                for (std::size_t j = 0; j < unknowns; ++j) z[j] = f.add(z[j], f.mul(c, kernel[k][j]));
            }
            for (std::size_t j = 0; j < m; ++j) Q(i, j) = z[j];
            b[i] = z[m];
        }
        if (!require_invertible || rank(Q) == m) emit(std::move(Q), std::move(b));
        std::size_t pos = free_coeffs;
        while (pos > 0) {
            --pos;
            if (++coeff[pos] < f.q()) break;
            coeff[pos] = 0;
            if (pos == 0) return;
        }
        if (free_coeffs == 0) return;
    }
}

// Distinct pairs (F(A x), G(x)) as vectors, or nullopt when no invertible
// affine (Q, b) can map the first components onto the second.
std::optional<std::vector<std::pair<FqVector, FqVector>>> collect_pairs(const AffineMap& input, const FuncTable& F,
                                                                       const FuncTable& G,
                                                                       std::vector<std::int64_t>& forward,
                                                                       std::vector<std::int64_t>& backward) {
    const Shape& s = F.shape();
    std::fill(forward.begin(), forward.end(), -1);
    std::fill(backward.begin(), backward.end(), -1);
    std::vector<std::pair<FqVector, FqVector>> pairs;
    for (std::size_t x = 0; x < F.size(); ++x) {
        const Code u = F[input(static_cast<Code>(x))];
        const Code v = G[x];
        if (forward[u] < 0 && backward[v] < 0) {
            forward[u] = v;
            backward[v] = u;
            pairs.emplace_back(decode_vec(u, s.m, s.q), decode_vec(v, s.m, s.q));
        } else if (forward[u] != static_cast<std::int64_t>(v) || backward[v] != static_cast<std::int64_t>(u)) {
            return std::nullopt;
        }
    }
    return pairs;
}

}  // namespace

std::vector<std::pair<FqMatrix, FqVector>> affine_fit(std::span<const std::pair<FqVector, FqVector>> pairs,
                                                      bool require_invertible, const Limits& limits) {
    if (pairs.empty()) throw ArgumentError("affine_fit needs at least one pair");
    const Field& f = pairs.front().first.field();
    const std::size_t m = pairs.front().first.dim();
    std::vector<std::pair<FqMatrix, FqVector>> out;
    fit_pairs(f, m, pairs, require_invertible, limits.fit,
              [&](FqMatrix Q, FqVector b) { out.emplace_back(std::move(Q), std::move(b)); });
    return out;
}

// ---------------------------------------------------------------- search

EaSearch::EaSearch(const Shape& shape, const Limits& limits)
    : shape_(shape), limits_(limits), inputs_(affine_group(shape.n, shape.q, limits)) {
    Field::get(shape.q);
    if (shape.m == 0) throw ArgumentError("m must be positive");
}

std::optional<EAElement> EaSearch::equivalent(const FuncTable& F, const FuncTable& G) const {
    if (F.shape() != shape_ || G.shape() != shape_) throw ArgumentError("function shape does not match search");
    const Field& f = Field::get(shape_.q);
    const std::size_t chunks = chunk_count(inputs_.size(), limits_.threads);
    std::vector<std::optional<EAElement>> found(chunks);
    std::atomic<std::size_t> best{inputs_.size()};
    parallel_chunks(inputs_.size(), limits_.threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        std::vector<std::int64_t> forward(shape_.codomain_size()), backward(shape_.codomain_size());
        for (std::size_t i = begin; i < end && i < best.load(); ++i) {
            auto pairs = collect_pairs(inputs_[i], F, G, forward, backward);
            if (!pairs) continue;
            std::optional<EAElement> hit;
            fit_pairs(f, shape_.m, *pairs, true, limits_.fit, [&](FqMatrix Q, FqVector b) {
                if (!hit) hit.emplace(inputs_[i], AffineMap(std::move(Q), std::move(b)));
            });
            if (hit) {
                found[chunk] = std::move(hit);
                std::size_t expected = best.load();
                while (i < expected && !best.compare_exchange_weak(expected, i)) {
                }
                break;
            }
        }
    });
    for (auto& hit : found) {
        if (hit) {
            if (apply(*hit, F) != G) throw IntegralityViolation("EA witness failed verification");
            return std::move(hit);
        }
    }
    return std::nullopt;
}

StabilizerReport EaSearch::stabilizer(const FuncTable& F, bool collect_elements) const {
    if (F.shape() != shape_) throw ArgumentError("function shape does not match search");
    const Field& f = Field::get(shape_.q);
    const std::size_t chunks = chunk_count(inputs_.size(), limits_.threads);
    std::vector<std::vector<EAElement>> elements(chunks);
    std::vector<std::uint64_t> counts(chunks, 0);
    parallel_chunks(inputs_.size(), limits_.threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        std::vector<std::int64_t> forward(shape_.codomain_size()), backward(shape_.codomain_size());
        for (std::size_t i = begin; i < end; ++i) {
            auto pairs = collect_pairs(inputs_[i], F, F, forward, backward);
            if (!pairs) continue;
            fit_pairs(f, shape_.m, *pairs, true, limits_.fit, [&](FqMatrix Q, FqVector b) {
                ++counts[chunk];
                if (collect_elements) elements[chunk].emplace_back(inputs_[i], AffineMap(std::move(Q), std::move(b)));
            });
        }
    });
    StabilizerReport report;
    report.size = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        report.size += counts[c];
        for (auto& g : elements[c]) report.elements.push_back(std::move(g));
    }
    report.is_trivial = report.size == 1;
    return report;
}

BigCount EaSearch::stabilizer_size(const FuncTable& F) const { return stabilizer(F, false).size; }

std::optional<EAElement> ea_equivalent(const FuncTable& F, const FuncTable& G, const Limits& limits) {
    if (F.shape() != G.shape()) throw ArgumentError("functions have different shapes");
    return EaSearch(F.shape(), limits).equivalent(F, G);
}

StabilizerReport stabilizer(const FuncTable& F, const Limits& limits) {
    return EaSearch(F.shape(), limits).stabilizer(F, true);
}

std::vector<std::uint64_t> orbit_of(const FuncTable& F) {
    const auto gens = ea_generators(F.shape());
    std::unordered_set<std::uint64_t> seen{F.index()};
    std::deque<FuncTable> frontier{F};
    while (!frontier.empty()) {
        FuncTable cur = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& g : gens) {
            FuncTable next = apply(g, cur);
            if (seen.insert(next.index()).second) frontier.push_back(std::move(next));
        }
    }
    std::vector<std::uint64_t> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace easym
