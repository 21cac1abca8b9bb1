// easym: command-line front end.
//
// Exit status: 0 on success, 2 when a work budget refuses the request, 1 on
// any other error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "easym/burnside.hpp"
#include "easym/collision.hpp"
#include "easym/errors.hpp"
#include "easym/fix_count.hpp"
#include "easym/table_io.hpp"

using namespace easym;

namespace {

constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

// Sampling commands attach the exact reference value when the function space
// is at most this large.
constexpr std::uint64_t kReferenceLimit = 1u << 16;

enum class Format { text, structured, csv };

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render(const Table& t, Format format) {
    std::ostringstream os;
    switch (format) {
    case Format::csv: {
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
            os << '\n';
        };
        line(t.columns);
        for (const auto& r : t.rows) line(r);
        break;
    }
    case Format::structured: {
        auto object = [&](const std::vector<std::string>& r) {
            nlohmann::ordered_json j;
            for (std::size_t i = 0; i < t.columns.size(); ++i) j[t.columns[i]] = r[i];
            return j;
        };
        nlohmann::ordered_json doc;
        if (t.rows.size() == 1) {
            doc = object(t.rows[0]);
        } else {
            doc = nlohmann::ordered_json::array();
            for (const auto& r : t.rows) doc.push_back(object(r));
        }
        os << doc.dump(2) << '\n';
        break;
    }
    case Format::text: {
        if (t.rows.size() == 1) {
            std::size_t w = 0;
            for (const auto& c : t.columns) w = std::max(w, c.size());
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                os << t.columns[i] << ':' << std::string(w - t.columns[i].size() + 1, ' ') << t.rows[0][i] << '\n';
            }
            break;
        }
        std::vector<std::size_t> w(t.columns.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] = t.columns[i].size();
            for (const auto& r : t.rows) w[i] = std::max(w[i], r[i].size());
        }
        auto line = [&](const std::vector<std::string>& cells) {
            std::string s;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) s += "  ";
                s += cells[i] + std::string(w[i] - cells[i].size(), ' ');
            }
            while (!s.empty() && s.back() == ' ') s.pop_back();
            os << s << '\n';
        };
        line(t.columns);
        for (const auto& r : t.rows) line(r);
        break;
    }
    }
    return os.str();
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string join(std::span<const Elem> entries) {
    std::string s;
    for (std::size_t i = 0; i < entries.size(); ++i) s += (i ? " " : "") + std::to_string(entries[i]);
    return s;
}

template <class T>
std::string join_values(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

std::string decimal(const BigRational& r) { return to_decimal(r, 20); }

struct Common {
    unsigned q = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 0;
    unsigned threads = 1;
    std::string format = "text";
    std::string output;
    std::optional<std::uint64_t> enumeration, oracle, fit, burnside, conjugacy;

    Shape shape() const {
        if (q == 0 || n == 0 || m == 0) throw ArgumentError("--q, --n and --m are required and must be positive");
        Field::get(q);
        return {q, n, m};
    }

    Limits limits() const {
        Limits l = Limits::from_environment();
        auto set = [](const std::optional<std::uint64_t>& v, std::uint64_t& field, const char* flag) {
            if (!v) return;
            if (*v == 0) throw ArgumentError(std::string(flag) + " must be positive");
            field = *v;
        };
        set(enumeration, l.enumeration, "--enumeration-budget");
        set(oracle, l.oracle, "--oracle-budget");
        set(fit, l.fit, "--fit-budget");
        set(burnside, l.burnside, "--burnside-budget");
        set(conjugacy, l.conjugacy, "--conjugacy-budget");
        if (threads == 0) throw ArgumentError("--threads must be positive");
        l.threads = threads;
        return l;
    }

    std::uint64_t require_seed() const {
        if (!seed) throw ArgumentError("--seed is required for sampling");
        return *seed;
    }

    std::uint64_t require_trials() const {
        if (trials == 0) throw ArgumentError("--trials must be positive");
        return trials;
    }

    Format output_format() const {
        if (format == "text") return Format::text;
        if (format == "structured") return Format::structured;
        return Format::csv;
    }
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--q", c.q, "field size (2, 3, 4, 5, 7, 8, 9)");
    app->add_option("--n", c.n, "input dimension");
    app->add_option("--m", c.m, "output dimension");
    app->add_option("--seed", c.seed, "64-bit seed for sampling");
    app->add_option("--trials", c.trials, "number of Monte-Carlo trials");
    app->add_option("--threads", c.threads, "worker threads (output does not depend on it)");
    app->add_option("--format", c.format, "text, structured or csv")
        ->check(CLI::IsMember({"text", "structured", "csv"}));
    app->add_option("--output", c.output, "write to this file instead of standard output");
    app->add_option("--enumeration-budget", c.enumeration, "max |AGL| enumerated");
    app->add_option("--oracle-budget", c.oracle, "max function tables visited");
    app->add_option("--fit-budget", c.fit, "max affine-fit candidates");
    app->add_option("--burnside-budget", c.burnside, "max |Gamma| for exhaustive sums");
    app->add_option("--conjugacy-budget", c.conjugacy, "max |AGL| for conjugacy tables");
}

std::vector<Elem> parse_entries(const std::string& text) {
    std::vector<Elem> out;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) {
        std::istringstream ts(token);
        unsigned v;
        while (ts >> v) {
            if (v > 255) throw ArgumentError("matrix entry out of range: " + std::to_string(v));
            out.push_back(static_cast<Elem>(v));
        }
        if (!ts.eof()) throw ArgumentError("malformed entry list: " + text);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

FuncTable load_table(const std::string& path, const Common& c) {
    FuncTable F = read_table(path);
    if (c.q != 0 && (F.shape().q != c.q || F.shape().n != c.n || F.shape().m != c.m)) {
        throw ArgumentError(path + ": table shape does not match --q/--n/--m");
    }
    return F;
}

// ---------------------------------------------------------------- commands

Table group_order_cmd(const Common& c) {
    const Shape s = c.shape();
    const BigCount an = agl_order(s.n, s.q), am = agl_order(s.m, s.q);
    return {{"q", "n", "m", "agl_n", "agl_m", "gamma_order", "function_space", "function_space_log_q"},
            {{std::to_string(s.q), std::to_string(s.n), std::to_string(s.m), to_string(an), to_string(am),
              to_string(BigCount(an * am)), to_string(function_space_size(s)), std::to_string(function_space_log(s))}}};
}

struct ElementFlags {
    std::string element_file;
    std::string P, a, Q, b;
};

EAElement load_element(const ElementFlags& e, const Common& c) {
    if (!e.element_file.empty()) {
        EAElement g = parse_element(read_file(e.element_file));
        if (c.q != 0 && !(g.shape() == c.shape())) throw ArgumentError("element shape does not match --q/--n/--m");
        return g;
    }
    const Shape s = c.shape();
    const Field& f = Field::get(s.q);
    auto matrix = [&](const std::string& text, std::size_t d) {
        return text.empty() ? FqMatrix::identity(f, d) : FqMatrix(f, d, d, parse_entries(text));
    };
    auto vector = [&](const std::string& text, std::size_t d) {
        return text.empty() ? FqVector(f, d) : FqVector(f, parse_entries(text));
    };
    return EAElement(matrix(e.P, s.n), vector(e.a, s.n), matrix(e.Q, s.m), vector(e.b, s.m));
}

Table fix_count_cmd(const Common& c, const ElementFlags& ef) {
    const EAElement g = load_element(ef, c);
    const Shape s = g.shape();
    const auto d = fix_count_exact(g);
    std::vector<std::size_t> lengths;
    std::vector<std::string> solutions;
    for (const auto& o : d.per_orbit) {
        lengths.push_back(o.length);
        solutions.push_back(to_string(o.solutions));
    }
    std::string bound_case = "none", bound_exponent = "none", bound = "none";
    if (!g.is_identity()) {
        const auto b = fix_count_upper(g);
        bound_case = std::to_string(static_cast<int>(b.which));
        bound_exponent = to_string(b.exponent);
        bound = b.bound().render();
    }
    return {{"q", "n", "m", "fix_count", "log_q_fix_count", "orbit_lengths", "orbit_solutions", "bound_case",
             "bound_exponent", "bound"},
            {{std::to_string(s.q), std::to_string(s.n), std::to_string(s.m), to_string(d.total),
              d.log_q_total ? std::to_string(*d.log_q_total) : "none", join_values(lengths), join_values(solutions),
              bound_case, bound_exponent, bound}}};
}

Table fix_count_all_cmd(const Common& c) {
    const Shape s = c.shape();
    const Limits limits = c.limits();
    const BigCount gamma = agl_order(s.n, s.q) * agl_order(s.m, s.q);
    check_budget("|Gamma| for fix-count sweep", gamma, limits.burnside);
    const BigCount space = function_space_size(s);
    const bool compare = gamma * space <= limits.oracle;
    const auto ins = affine_group(s.n, s.q, limits);
    const auto outs = affine_group(s.m, s.q, limits);
    BigCount sum = 0;
    std::uint64_t mismatches = 0, violations = 0;
    for (const auto& in : ins) {
        for (const auto& out : outs) {
            const EAElement g(in, out);
            const auto d = fix_count_exact(g);
            sum += d.total;
            if (compare && fix_count_bruteforce(g, limits) != d.total) ++mismatches;
            if (!g.is_identity() && d.total != 0 && BigRational(*d.log_q_total) > fix_count_upper(g).exponent) {
                ++violations;
            }
        }
    }
    if (sum % gamma != 0) throw IntegralityViolation("Burnside sum not divisible by |Gamma|");
    return {{"q", "n", "m", "elements", "burnside_sum", "class_count", "oracle_compared", "oracle_mismatches",
             "bound_violations"},
            {{std::to_string(s.q), std::to_string(s.n), std::to_string(s.m), to_string(gamma), to_string(sum),
              to_string(BigCount(sum / gamma)), yes_no(compare), compare ? std::to_string(mismatches) : "none",
              std::to_string(violations)}}};
}

Table count_classes_cmd(const Common& c, const std::string& method) {
    const auto r = count_classes(c.shape(), parse_method(method), c.limits());
    std::vector<std::string> columns, row;
    std::string cell;
    std::istringstream hs(class_count_csv_header()), rs(class_count_csv_row(r));
    while (std::getline(hs, cell, ',')) columns.push_back(cell);
    while (std::getline(rs, cell, ',')) row.push_back(cell);
    columns.insert(columns.begin() + 5, "burnside_sum");
    row.insert(row.begin() + 5, to_string(r.burnside_sum));
    return {columns, {row}};
}

Table relative_error_cmd(const Common& c, const std::string& method) {
    const Shape s = c.shape();
    const auto m = parse_method(method);
    const auto e = relative_error(s, m, c.limits());
    return {{"q", "n", "m", "method", "ratio", "ratio_decimal", "deviation", "deviation_decimal"},
            {{std::to_string(s.q), std::to_string(s.n), std::to_string(s.m), to_string(m), to_string(e.ratio),
              decimal(e.ratio), to_string(e.deviation), decimal(e.deviation)}}};
}

Table orbit_census_cmd(const Common& c) {
    const auto census = orbit_partition(c.shape(), c.limits());
    Table t{{"orbit_id", "size", "stabilizer_size", "representative_table"}, {}};
    for (std::size_t i = 0; i < census.orbits.size(); ++i) {
        const auto& o = census.orbits[i];
        t.rows.push_back({std::to_string(i), to_string(o.size), to_string(o.stabilizer_size),
                          join_values(std::vector<Code>(o.representative.table().begin(), o.representative.table().end()))});
    }
    return t;
}

Table stabilizer_cmd(const Common& c, const std::string& input) {
    const FuncTable F = load_table(input, c);
    const Shape s = F.shape();
    const auto r = stabilizer(F, c.limits());
    const BigCount gamma = agl_order(s.n, s.q) * agl_order(s.m, s.q);
    return {{"q", "n", "m", "stabilizer_size", "trivial", "orbit_size"},
            {{std::to_string(s.q), std::to_string(s.n), std::to_string(s.m), to_string(r.size), yes_no(r.is_trivial),
              to_string(BigCount(gamma / r.size))}}};
}

Table stab_census_cmd(const Common& c) {
    const Shape s = c.shape();
    const auto sc = nontrivial_stab_census(s, c.limits());
    const auto b = nontrivial_stab_bound(s);
    return {{"q", "n", "m", "nontrivial", "total", "fraction", "fraction_decimal", "union_bound", "union_bound_vacuous"},
            {{std::to_string(s.q), std::to_string(s.n), std::to_string(s.m), to_string(sc.nontrivial),
              to_string(sc.total), to_string(sc.fraction), decimal(sc.fraction), b.binding.bound.render(),
              yes_no(b.binding.vacuous)}}};
}

Table estimate_table(const Estimate& e, const std::string& experiment, const Shape& s, Format format) {
    if (format == Format::structured) {
        // Emitted verbatim by the caller.
        return {{"__raw__"}, {{format_estimate(e, experiment, s)}}};
    }
    std::ostringstream lo, hi;
    lo.precision(17);
    hi.precision(17);
    lo << e.ci_low;
    hi << e.ci_high;
    return {{"experiment", "q", "n", "m", "seed", "trials", "hits", "estimate", "estimate_decimal", "ci95_low",
             "ci95_high", "reference", "reference_decimal"},
            {{experiment, std::to_string(s.q), std::to_string(s.n), std::to_string(s.m), std::to_string(e.seed),
              std::to_string(e.trials), std::to_string(e.hits), to_string(e.estimate), decimal(e.estimate), lo.str(),
              hi.str(), e.reference ? to_string(*e.reference) : "none", e.reference ? decimal(*e.reference) : "none"}}};
}

bool reference_affordable(const Shape& s, const Limits& limits) {
    const BigCount space = function_space_size(s);
    return space <= kReferenceLimit && space <= limits.oracle;
}

Table stab_sample_cmd(const Common& c) {
    const Shape s = c.shape();
    const Limits limits = c.limits();
    Estimate e = mc_trivial_stab(s, c.require_trials(), c.require_seed(), limits);
    if (reference_affordable(s, limits)) e.reference = nontrivial_stab_census(s, limits).fraction;
    return estimate_table(e, "nontrivial_stabilizer", s, c.output_format());
}

Table collision_cmd(const Common& c, bool exact, bool mc) {
    const Shape s = c.shape();
    const Limits limits = c.limits();
    if (exact == mc) throw ArgumentError("collision needs exactly one of --exact or --mc");
    if (mc) {
        Estimate e = mc_collision(s, c.require_trials(), c.require_seed(), limits);
        if (reference_affordable(s, limits)) e.reference = collision_prob_exact(s, limits);
        return estimate_table(e, "collision", s, c.output_format());
    }
    const BigRational p = collision_prob_exact(s, limits);
    const auto ea = collision_upper_ea(s);
    const auto ccz = collision_upper_ccz(s);
    return {{"q", "n", "m", "collision", "collision_decimal", "ea_upper", "ea_upper_log", "ccz_upper", "ccz_upper_log"},
            {{std::to_string(s.q), std::to_string(s.n), std::to_string(s.m), to_string(p), decimal(p),
              ea.exact ? to_string(*ea.exact) : "none", ea.bound.render(), ccz.exact ? to_string(*ccz.exact) : "none",
              ccz.bound.render()}}};
}

Table bounds_cmd(const Common& c) {
    const Shape top = c.shape();
    Table t{{"q", "n", "m", "ea_collision", "ea_collision_exponent", "ea_vacuous", "ccz_collision",
             "ccz_collision_exponent", "ccz_vacuous", "stab_case1_slack", "stab_case2_slack", "stab_binding_case",
             "stab_bound", "stab_vacuous"},
            {}};
    for (std::size_t n = 1; n <= top.n; ++n) {
        for (std::size_t m = 1; m <= top.m; ++m) {
            const Shape s{top.q, n, m};
            const auto ea = collision_upper_ea(s);
            const auto ccz = collision_upper_ccz(s);
            const auto st = nontrivial_stab_bound(s);
            t.rows.push_back({std::to_string(s.q), std::to_string(n), std::to_string(m),
                              to_string(ea.bound.factor()) + " * " + std::to_string(s.q) + "^" + to_string(ea.bound.power()),
                              ea.bound.render(), yes_no(ea.vacuous),
                              to_string(ccz.bound.factor()) + " * " + std::to_string(s.q) + "^" + to_string(ccz.bound.power()),
                              ccz.bound.render(), yes_no(ccz.vacuous), to_string(st.case1_slack),
                              to_string(st.case2_slack), std::to_string(st.binding_case), st.binding.bound.render(),
                              yes_no(st.binding.vacuous)});
        }
    }
    return t;
}

Table ea_check_cmd(const Common& c, const std::string& f_path, const std::string& g_path) {
    const FuncTable F = load_table(f_path, c);
    const FuncTable G = load_table(g_path, c);
    if (!(F.shape() == G.shape())) throw ArgumentError("the two tables have different shapes");
    const auto w = ea_equivalent(F, G, c.limits());
    const std::string none = "none";
    return {{"equivalent", "witness_P", "witness_a", "witness_Q", "witness_b"},
            {{yes_no(w.has_value()), w ? join(w->P().entries()) : none, w ? join(w->a().entries()) : none,
              w ? join(w->Q().entries()) : none, w ? join(w->b().entries()) : none}}};
}

Table ccz_check_cmd(const Common& c, const std::string& f_path, const std::string& g_path) {
    const FuncTable F = load_table(f_path, c);
    const FuncTable G = load_table(g_path, c);
    if (!(F.shape() == G.shape())) throw ArgumentError("the two tables have different shapes");
    const auto w = ccz_equivalent(F, G, c.limits());
    const std::string none = "none";
    return {{"equivalent", "witness_L", "witness_t"},
            {{yes_no(w.has_value()), w ? join(w->linear().entries()) : none,
              w ? join(w->translation().entries()) : none}}};
}

struct SuiteResult {
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<SuiteResult> run_selftest(const Limits& limits) {
    const Shape sizes[] = {{2, 1, 1}, {2, 1, 2}, {2, 2, 1}, {2, 2, 2}, {3, 1, 1}};
    std::vector<SuiteResult> out;

    std::uint64_t checked = 0, mismatches = 0;
    for (const auto& s : sizes) {
        for (const auto& in : affine_group(s.n, s.q, limits)) {
            for (const auto& o : affine_group(s.m, s.q, limits)) {
                const EAElement g(in, o);
                ++checked;
                mismatches += fix_count_exact(g).total != fix_count_bruteforce(g, limits);
            }
        }
    }
    out.push_back({"fix_count_oracle", mismatches == 0,
                   std::to_string(mismatches) + " mismatches over " + std::to_string(checked) + " elements"});

    bool agree = true;
    std::string counts;
    for (const auto& s : sizes) {
        const auto ex = count_classes_exhaustive(s, limits);
        const auto cj = count_classes_conjugacy(s, limits);
        const auto census = orbit_partition(s, limits);
        agree = agree && ex.class_count == cj.class_count && ex.class_count == census.orbits.size();
        counts += (counts.empty() ? "" : " ") + to_string(ex.class_count);
    }
    out.push_back({"class_count_agreement", agree, "class counts " + counts});

    std::uint64_t perms = 0, violations = 0;
    for (auto [n, q] : {std::pair<std::size_t, unsigned>{1, 2}, {2, 2}, {3, 2}, {1, 3}, {2, 3}}) {
        for (const auto& sigma : affine_group(n, q, limits)) {
            ++perms;
            const auto S = fixed_points_affine(sigma.linear(), sigma.translation());
            std::uint64_t brute = 0;
            for (Code x = 0; x < sigma.table().size(); ++x) brute += sigma(x) == x;
            if (S.size() != brute) ++violations;
            if (!sigma.is_identity() && S.size() > big_pow(q, n - 1)) ++violations;
        }
    }
    out.push_back({"fixed_points", violations == 0,
                   std::to_string(violations) + " violations over " + std::to_string(perms) + " affine permutations"});
    return out;
}

struct Output {
    std::string text;
    int status = 0;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counting and sampling tools for extended-affine equivalence of functions between finite vector spaces"};
    app.require_subcommand(1);
    Common c;
    std::string method = "conjugacy";
    std::string input, f_path, g_path;
    bool exact = false, mc = false;
    ElementFlags ef;

    auto* group_order = app.add_subcommand("group-order", "orders of AGL(n,q), AGL(m,q), Gamma and the function space");
    auto* fix_count = app.add_subcommand("fix-count", "exact |Fix(g)| and its upper bound for one EA element");
    auto* fix_count_all = app.add_subcommand("fix-count-all", "sweep Gamma; compare against brute force when budgeted");
    auto* count_classes_sc = app.add_subcommand("count-classes", "number of EA classes by Burnside's lemma");
    auto* relative_error_sc = app.add_subcommand("relative-error", "class count divided by |F|/|Gamma|");
    auto* orbit_census = app.add_subcommand("orbit-census", "every EA orbit with its size and representative");
    auto* stabilizer_sc = app.add_subcommand("stabilizer", "EA stabilizer of one function");
    auto* stab_census = app.add_subcommand("stab-census", "exact fraction of functions with nontrivial stabilizer");
    auto* stab_sample = app.add_subcommand("stab-sample", "Monte-Carlo estimate of that fraction");
    auto* collision = app.add_subcommand("collision", "probability that two random functions are EA-equivalent");
    auto* bounds = app.add_subcommand("bounds", "collision and stabilizer bounds over the grid 1..n x 1..m");
    auto* ea_check = app.add_subcommand("ea-check", "decide EA equivalence of two tables");
    auto* ccz_check = app.add_subcommand("ccz-check", "decide CCZ equivalence of two tables");
    auto* selftest = app.add_subcommand("selftest", "run the built-in oracle comparisons");

    for (auto* sc : app.get_subcommands({})) add_common(sc, c);

    fix_count->add_option("--element", ef.element_file, "EA element document");
    fix_count->add_option("--P", ef.P, "input matrix, row-major entries (default identity)");
    fix_count->add_option("--a", ef.a, "input translation (default zero)");
    fix_count->add_option("--Q", ef.Q, "output matrix, row-major entries (default identity)");
    fix_count->add_option("--b", ef.b, "output translation (default zero)");
    for (auto* sc : {count_classes_sc, relative_error_sc}) {
        sc->add_option("--method", method, "exhaustive or conjugacy")->check(CLI::IsMember({"exhaustive", "conjugacy"}));
    }
    stabilizer_sc->add_option("--input", input, "function table file")->required();
    collision->add_flag("--exact", exact, "exact value from the orbit census");
    collision->add_flag("--mc", mc, "Monte-Carlo estimate");
    for (auto* sc : {ea_check, ccz_check}) {
        sc->add_option("--f", f_path, "first function table file")->required();
        sc->add_option("--g", g_path, "second function table file")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitError;
    }

    Output result;
    try {
        const Format format = c.output_format();
        Table table;
        if (*group_order) {
            table = group_order_cmd(c);
        } else if (*fix_count) {
            table = fix_count_cmd(c, ef);
        } else if (*fix_count_all) {
            table = fix_count_all_cmd(c);
        } else if (*count_classes_sc) {
            table = count_classes_cmd(c, method);
        } else if (*relative_error_sc) {
            table = relative_error_cmd(c, method);
        } else if (*orbit_census) {
            table = orbit_census_cmd(c);
        } else if (*stabilizer_sc) {
            table = stabilizer_cmd(c, input);
        } else if (*stab_census) {
            table = stab_census_cmd(c);
        } else if (*stab_sample) {
            table = stab_sample_cmd(c);
        } else if (*collision) {
            table = collision_cmd(c, exact, mc);
        } else if (*bounds) {
            table = bounds_cmd(c);
        } else if (*ea_check) {
            table = ea_check_cmd(c, f_path, g_path);
        } else if (*ccz_check) {
            table = ccz_check_cmd(c, f_path, g_path);
        } else if (*selftest) {
            const auto suites = run_selftest(c.limits());
            table.columns = {"suite", "status", "detail"};
            for (const auto& s : suites) {
                table.rows.push_back({s.name, s.pass ? "pass" : "fail", s.detail});
                if (!s.pass) result.status = kExitError;
            }
        }
        result.text = table.columns == std::vector<std::string>{"__raw__"} ? table.rows[0][0] : render(table, format);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget refused: " << e.what() << '\n';
        return kExitBudget;
    } catch (const SolutionSpaceTooLarge& e) {
        std::cerr << "budget refused: " << e.what() << '\n';
        return kExitBudget;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }

    if (c.output.empty()) {
        std::cout << result.text;
    } else {
        std::ofstream out(c.output, std::ios::binary);
        if (!out || !(out << result.text)) {
            std::cerr << "error: cannot write " << c.output << '\n';
            return kExitError;
        }
    }
    return result.status;
}
