#include "easym/functions.hpp"

#include <algorithm>
#include <string>

#include "easym/errors.hpp"

namespace easym {

Code encode_vec(const FqVector& v) {
    const unsigned q = v.field().q();
    std::uint64_t code = 0;
    for (std::size_t i = v.dim(); i > 0; --i) {
        code = code * q + v[i - 1];
        if (code > UINT32_MAX) throw ArgumentError("vector code does not fit 32 bits");
    }
    return static_cast<Code>(code);
}

FqVector decode_vec(std::uint64_t code, std::size_t dim, unsigned q) {
    const Field& f = Field::get(q);
    FqVector v(f, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        v[i] = static_cast<Elem>(code % q);
        code /= q;
    }
    if (code != 0) throw ArgumentError("code out of range for dimension " + std::to_string(dim));
    return v;
}

Code space_size(std::size_t dim, unsigned q) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        size *= q;
        if (size > UINT32_MAX) throw ArgumentError("q^dim does not fit 32 bits");
    }
    return static_cast<Code>(size);
}

FuncTable::FuncTable(Shape shape, std::vector<Code> table) : shape_(shape), table_(std::move(table)) {
    Field::get(shape_.q);
    if (shape_.n == 0 || shape_.m == 0) throw ArgumentError("dimensions n and m must be positive");
    if (table_.size() != shape_.domain_size()) {
        throw ArgumentError("table length " + std::to_string(table_.size()) + " != q^n = " +
                            std::to_string(shape_.domain_size()));
    }
    const Code limit = shape_.codomain_size();
    for (Code c : table_) {
        if (c >= limit) throw ArgumentError("code out of range: " + std::to_string(c));
    }
}

FuncTable FuncTable::zero(Shape shape) { return FuncTable(shape, std::vector<Code>(shape.domain_size(), 0)); }

std::uint64_t FuncTable::index() const {
    const std::uint64_t radix = shape_.codomain_size();
    std::uint64_t idx = 0;
    for (std::size_t x = table_.size(); x > 0; --x) {
        if (idx > (UINT64_MAX - table_[x - 1]) / radix) throw ArgumentError("function index overflows 64 bits");
        idx = idx * radix + table_[x - 1];
    }
    return idx;
}

FuncTable FuncTable::from_index(Shape shape, std::uint64_t index) {
    const std::uint64_t radix = shape.codomain_size();
    std::vector<Code> table(shape.domain_size());
    for (auto& cell : table) {
        cell = static_cast<Code>(index % radix);
        index /= radix;
    }
    if (index != 0) throw ArgumentError("function index out of range");
    return FuncTable(shape, std::move(table));
}

BigCount function_space_size(const Shape& shape) { return big_pow(shape.q, function_space_log(shape)); }

std::uint64_t function_space_log(const Shape& shape) {
    return static_cast<std::uint64_t>(shape.m) * shape.domain_size();
}

GraphSet graph_of(const FuncTable& F) {
    const Shape& s = F.shape();
    const std::uint64_t qn = s.domain_size();
    space_size(s.n + s.m, s.q);
    GraphSet g{s, {}};
    g.points.reserve(F.size());
    for (std::size_t x = 0; x < F.size(); ++x) g.points.push_back(static_cast<Code>(x + qn * F[x]));
    std::sort(g.points.begin(), g.points.end());
    return g;
}

FuncTable function_from_graph(const GraphSet& graph) {
    const Shape& s = graph.shape;
    const Code qn = s.domain_size();
    std::vector<Code> table(qn, 0);
    std::vector<bool> seen(qn, false);
    if (graph.points.size() != qn) throw ArgumentError("graph must have exactly q^n points");
    for (Code p : graph.points) {
        const Code x = p % qn;
        if (seen[x]) throw ArgumentError("graph has two points over the same input");
        seen[x] = true;
        table[x] = p / qn;
    }
    return FuncTable(s, std::move(table));
}

std::uint64_t SplitMix64::mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
}

std::uint64_t SplitMix64::uniform(std::uint64_t bound) {
    if (bound == 0) throw ArgumentError("uniform bound must be positive");
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t r;
    do {
        r = next();
    } while (r > limit);
    return r % bound;
}

std::uint64_t SplitMix64::derive(std::uint64_t seed, std::uint64_t index) {
    return mix(seed ^ mix(index + 0x632be59bd9b4e019ULL));
}

FuncTable random_function(const Shape& shape, SplitMix64& rng) {
    const Code limit = shape.codomain_size();
    std::vector<Code> table(shape.domain_size());
    for (auto& cell : table) cell = static_cast<Code>(rng.uniform(limit));
    return FuncTable(shape, std::move(table));
}

FuncTable random_function(const Shape& shape, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return random_function(shape, rng);
}

}  // namespace easym
