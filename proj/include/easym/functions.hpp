#pragma once

#include <cstdint>
#include <vector>

#include "easym/bigcount.hpp"
#include "easym/linalg.hpp"

namespace easym {

using Code = std::uint32_t;

/// Radix-q code of a vector: (v_0, ..., v_{d-1}) -> sum v_i q^i.
Code encode_vec(const FqVector& v);
/// Inverse of encode_vec. Throws ArgumentError when code >= q^dim.
FqVector decode_vec(std::uint64_t code, std::size_t dim, unsigned q);

/// q^dim as a native integer; throws ArgumentError if it does not fit a Code.
Code space_size(std::size_t dim, unsigned q);

/// Dimensions of a function space F_q^n -> F_q^m.
struct Shape {
    unsigned q = 2;
    std::size_t n = 1;
    std::size_t m = 1;

    Code domain_size() const { return space_size(n, q); }
    Code codomain_size() const { return space_size(m, q); }
    friend bool operator==(const Shape&, const Shape&) = default;
};

/// Lookup table of F: F_q^n -> F_q^m. Entry x holds the code of F(decode(x)).
class FuncTable {
public:
    /// Validates table length and code range.
    FuncTable(Shape shape, std::vector<Code> table);

    static FuncTable zero(Shape shape);

    const Shape& shape() const noexcept { return shape_; }
    std::size_t size() const noexcept { return table_.size(); }
    Code operator[](std::size_t x) const { return table_[x]; }
    const std::vector<Code>& table() const noexcept { return table_; }

    /// Position of this table in the enumeration of all q^{m q^n} tables
    /// (entry x is the base-q^m digit of weight (q^m)^x). Needs q^{m q^n} < 2^64.
    std::uint64_t index() const;
    static FuncTable from_index(Shape shape, std::uint64_t index);

    friend bool operator==(const FuncTable& a, const FuncTable& b) {
        return a.shape_ == b.shape_ && a.table_ == b.table_;
    }
    friend bool operator<(const FuncTable& a, const FuncTable& b) { return a.table_ < b.table_; }

private:
    Shape shape_;
    std::vector<Code> table_;
};

/// |F| = q^{m q^n}.
BigCount function_space_size(const Shape& shape);
/// log_q |F| = m q^n.
std::uint64_t function_space_log(const Shape& shape);

/// The graph {(x, F(x))} as sorted codes of F_q^{n+m}; the x part occupies the
/// low n digits, so the code of (x, y) is x + q^n * y.
struct GraphSet {
    Shape shape;
    std::vector<Code> points;
};

GraphSet graph_of(const FuncTable& F);
/// Inverse of graph_of; throws ArgumentError when the set is not a graph.
FuncTable function_from_graph(const GraphSet& graph);

/// SplitMix64 (Steele, Lea, Flood 2014): output i is mix(seed + (i+1) * golden).
/// Platform independent; substreams come from hashing (seed, index).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform integer in [0, bound) by rejection; bound > 0.
    std::uint64_t uniform(std::uint64_t bound);

    /// Seed for an independent per-task stream.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);
    static std::uint64_t mix(std::uint64_t z);

private:
    std::uint64_t state_;
};

/// Every cell i.i.d. uniform in [0, q^m).
FuncTable random_function(const Shape& shape, SplitMix64& rng);
FuncTable random_function(const Shape& shape, std::uint64_t seed);

}  // namespace easym
