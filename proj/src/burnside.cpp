#include "easym/burnside.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "easym/errors.hpp"
#include "easym/fix_count.hpp"
#include "easym/parallel.hpp"

namespace easym {

const char* to_string(CountMethod method) {
    return method == CountMethod::exhaustive ? "exhaustive" : "conjugacy";
}

CountMethod parse_method(const std::string& name) {
    if (name == "exhaustive") return CountMethod::exhaustive;
    if (name == "conjugacy") return CountMethod::conjugacy;
    throw ArgumentError("unknown counting method \"" + name + "\"");
}

namespace {

BigCount gamma_order(const Shape& s) { return agl_order(s.n, s.q) * agl_order(s.m, s.q); }

ClassCountReport finish_report(const Shape& s, CountMethod method, BigCount sum) {
    ClassCountReport r;
    r.shape = s;
    r.method = method;
    r.gamma_order = gamma_order(s);
    r.burnside_sum = std::move(sum);
    if (r.burnside_sum % r.gamma_order != 0) {
        throw IntegralityViolation("Burnside sum " + r.burnside_sum.str() + " is not divisible by |Gamma| = " +
                                   r.gamma_order.str());
    }
    r.class_count = r.burnside_sum / r.gamma_order;
    r.naive_estimate = BigRational(function_space_size(s), r.gamma_order);
    r.relative_ratio = BigRational(r.class_count) / r.naive_estimate;
    return r;
}

std::uint64_t map_key(const FqMatrix& P, const FqVector& a) {
    const unsigned q = P.field().q();
    std::uint64_t k = 0;
    for (Elem e : P.entries()) k = k * q + e;
    for (Elem e : a.entries()) k = k * q + e;
    return k;
}

}  // namespace

ClassCountReport count_classes_exhaustive(const Shape& s, const Limits& limits) {
    check_budget("exhaustive Burnside sum", gamma_order(s), limits.burnside);
    const auto inputs = affine_group(s.n, s.q, limits);
    const auto outputs = affine_group(s.m, s.q, limits);

    // Orbit-length multiset of each input permutation; |Fix| depends on the
    // input map only through it.
    std::map<std::size_t, std::size_t> length_slot;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> histograms;
    histograms.reserve(inputs.size());
    for (const auto& sigma : inputs) {
        std::map<std::size_t, std::size_t> hist;
        for (const auto& orbit : orbits_affine(sigma).orbits) ++hist[orbit.length];
        std::vector<std::pair<std::size_t, std::size_t>> h;
        for (auto [length, mult] : hist) {
            length_slot.emplace(length, 0);
            h.emplace_back(length, mult);
        }
        histograms.push_back(std::move(h));
    }
    std::size_t slots = 0;
    for (auto& [length, slot] : length_slot) slot = slots++;
    for (auto& h : histograms) {
        for (auto& [length, mult] : h) length = length_slot.at(length);
    }

    // exponent[j][slot]: solution exponent for output map j on an orbit of that length; -1 = none.
    std::vector<std::vector<long>> exponent(outputs.size(), std::vector<long>(slots, -1));
    for (std::size_t j = 0; j < outputs.size(); ++j) {
        OrbitConstraint constraint(outputs[j]);
        for (const auto& [length, slot] : length_slot) {
            if (auto k = constraint.solution_exponent(length)) exponent[j][slot] = static_cast<long>(*k);
        }
    }

    // hist[K] = number of g with |Fix(g)| = q^K.
    const std::size_t max_k = function_space_log(s);
    const std::size_t chunks = chunk_count(inputs.size(), limits.threads);
    std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(max_k + 1, 0));
    parallel_chunks(inputs.size(), limits.threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        auto& hist = partial[chunk];
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = 0; j < outputs.size(); ++j) {
                std::size_t k = 0;
                bool zero = false;
                for (const auto& [slot, mult] : histograms[i]) {
                    const long e = exponent[j][slot];
                    if (e < 0) {
                        zero = true;
                        break;
                    }
                    k += static_cast<std::size_t>(e) * mult;
                }
                if (!zero) ++hist[k];
            }
        }
    });
    BigCount sum = 0;
    for (std::size_t k = 0; k <= max_k; ++k) {
        std::uint64_t count = 0;
        for (const auto& hist : partial) count += hist[k];
        if (count != 0) sum += BigCount(count) * big_pow(s.q, k);
    }
    return finish_report(s, CountMethod::exhaustive, std::move(sum));
}

ConjugacyClassTable conjugacy_classes_agl(std::size_t n, unsigned q, const Limits& limits) {
    check_budget("conjugacy classes of AGL", agl_order(n, q), limits.conjugacy);
    Limits enumeration = limits;
    enumeration.enumeration = std::max(limits.enumeration, limits.conjugacy);
    const auto elements = affine_group(n, q, enumeration);

    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i].key(), i);

    struct Conjugator {
        FqMatrix G, G_inv;
        FqVector c;
    };
    std::vector<Conjugator> conjugators;
    for (const auto& g : affine_generators(n, q)) {
        conjugators.push_back({g.linear(), easym::inverse(g.linear()), g.translation()});
    }

    ConjugacyClassTable table{n, q, {}};
    std::vector<bool> assigned(elements.size(), false);
    for (std::size_t start = 0; start < elements.size(); ++start) {
        if (assigned[start]) continue;
        assigned[start] = true;
        std::size_t size = 1;
        std::deque<std::size_t> frontier{start};
        while (!frontier.empty()) {
            const AffineMap& x = elements[frontier.front()];
            frontier.pop_front();
            for (const auto& g : conjugators) {
                // g x g^{-1} : y -> G P G^{-1} y + (G a + c - G P G^{-1} c)
                const FqMatrix P = g.G * x.linear() * g.G_inv;
                const FqVector a = g.G * x.translation() + g.c - P * g.c;
                const std::size_t idx = index.at(map_key(P, a));
                if (!assigned[idx]) {
                    assigned[idx] = true;
                    ++size;
                    frontier.push_back(idx);
                }
            }
        }
        table.classes.push_back({elements[start], size});
    }
    return table;
}

ClassCountReport count_classes_conjugacy(const Shape& s, const Limits& limits) {
    const auto in_classes = conjugacy_classes_agl(s.n, s.q, limits);
    const auto out_classes = conjugacy_classes_agl(s.m, s.q, limits);
    const auto& ins = in_classes.classes;
    const auto& outs = out_classes.classes;
    const std::size_t chunks = chunk_count(ins.size(), limits.threads);
    std::vector<BigCount> partial(chunks, 0);
    parallel_chunks(ins.size(), limits.threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        for (std::size_t i = begin; i < end; ++i) {
            for (const auto& cw : outs) {
                const EAElement g(ins[i].representative, cw.representative);
                partial[chunk] += ins[i].size * cw.size * fix_count_exact(g).total;
            }
        }
    });
    BigCount sum = 0;
    for (const auto& p : partial) sum += p;
    return finish_report(s, CountMethod::conjugacy, std::move(sum));
}

ClassCountReport count_classes(const Shape& shape, CountMethod method, const Limits& limits) {
    return method == CountMethod::exhaustive ? count_classes_exhaustive(shape, limits)
                                             : count_classes_conjugacy(shape, limits);
}

RelativeError relative_error(const ClassCountReport& report) {
    const BigRational deviation = report.relative_ratio - 1;
    return {report.relative_ratio, deviation < 0 ? BigRational(-deviation) : deviation};
}

RelativeError relative_error(const Shape& shape, CountMethod method, const Limits& limits) {
    return relative_error(count_classes(shape, method, limits));
}

std::string class_count_csv_header() {
    return "q,n,m,method,gamma_order,class_count,naive_num,naive_den,ratio_decimal";
}

std::string class_count_csv_row(const ClassCountReport& r) {
    std::ostringstream os;
    os << r.shape.q << ',' << r.shape.n << ',' << r.shape.m << ',' << to_string(r.method) << ','
       << to_string(r.gamma_order) << ',' << to_string(r.class_count) << ','
       << to_string(BigCount(boost::multiprecision::numerator(r.naive_estimate))) << ','
       << to_string(BigCount(boost::multiprecision::denominator(r.naive_estimate))) << ','
       << to_decimal(r.relative_ratio, 20);
    return os.str();
}

}  // namespace easym
