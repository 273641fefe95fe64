#ifndef GRAPHONLAB_LEMMAS_HPP
#define GRAPHONLAB_LEMMAS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "cutnorm.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "factor_network.hpp"
#include "graph.hpp"
#include "graph_algorithms.hpp"
#include "independence.hpp"
#include "inequality.hpp"
#include "numeric.hpp"
#include "random.hpp"
#include "step_function.hpp"

namespace graphonlab {

enum class LemmaId {
    jensen_rows,
    kmn_c4,
    cs_p3,
    star_bounds,
    gen_cs,
    even_cycle,
    long_path,
    girth4_bip,
    tree_not_star,
    one_leaf,
    entropy_kab,
    kab_quant,
};

inline constexpr std::array<LemmaId, 12> all_lemmas{
    LemmaId::jensen_rows, LemmaId::kmn_c4,    LemmaId::cs_p3,         LemmaId::star_bounds,
    LemmaId::gen_cs,      LemmaId::even_cycle, LemmaId::long_path,    LemmaId::girth4_bip,
    LemmaId::tree_not_star, LemmaId::one_leaf, LemmaId::entropy_kab,  LemmaId::kab_quant,
};

inline std::string_view to_string(LemmaId id) {
    switch (id) {
    case LemmaId::jensen_rows: return "jensen_rows";
    case LemmaId::kmn_c4: return "kmn_c4";
    case LemmaId::cs_p3: return "cs_p3";
    case LemmaId::star_bounds: return "star_bounds";
    case LemmaId::gen_cs: return "gen_cs";
    case LemmaId::even_cycle: return "even_cycle";
    case LemmaId::long_path: return "long_path";
    case LemmaId::girth4_bip: return "girth4_bip";
    case LemmaId::tree_not_star: return "tree_not_star";
    case LemmaId::one_leaf: return "one_leaf";
    case LemmaId::entropy_kab: return "entropy_kab";
    case LemmaId::kab_quant: return "kab_quant";
    }
    return "unknown";
}

inline LemmaId parse_lemma(std::string_view s) {
    for (LemmaId id : all_lemmas)
        if (to_string(id) == s) return id;
    throw ParameterError("unknown lemma id '" + std::string(s) + "'");
}

// A real function of some of the variables x_0..x_{n-1}, each ranging over
// the shared blocks. Table is row-major over the scope, last fastest.
struct FunctionTable {
    std::vector<int> scope;
    std::vector<double> values;
};

struct FunctionTuple {
    int variables = 0;
    Eigen::VectorXd measures;
    std::vector<FunctionTable> functions;
    std::vector<std::vector<int>> incidence;  // variable -> functions that depend on it
};

struct LemmaInput {
    std::optional<StepGraphon> graphon;
    std::optional<StepKernel> kernel;
    std::optional<Graph> graph;
    std::optional<FunctionTuple> functions;
    int m = 0;
    int m_prime = 0;
    int n = 0;
    int k = 0;
    int a = 0;
    int b = 0;
    int l = 0;
};

struct LemmaInstance {
    LemmaId lemma{};
    LemmaInput input;
    std::vector<InequalityCheck> checks;
    // The check with the smallest margin.
    double lhs = 0;
    double rhs = 0;
    double margin = 0;
    bool pass = false;
};

namespace detail {

inline void require(bool ok, LemmaId id, const std::string& what) {
    if (!ok) throw HypothesisError(std::string(to_string(id)) + ": hypothesis violated: " + what);
}

inline double pow0(double x, double e) { return std::pow(std::max(0.0, x), e); }

inline const StepGraphon& need_graphon(const LemmaInput& in, LemmaId id) {
    require(in.graphon.has_value(), id, "a graphon is required");
    return *in.graphon;
}

inline const StepKernel& need_kernel(const LemmaInput& in, LemmaId id) {
    const StepKernel* u = in.kernel ? &*in.kernel : in.graphon ? &*in.graphon : nullptr;
    require(u != nullptr, id, "a kernel is required");
    require(u->sup_norm() <= 1.0 + 1e-12, id, "kernel sup norm must be at most 1");
    return *u;
}

inline const Graph& need_graph(const LemmaInput& in, LemmaId id) {
    require(in.graph.has_value(), id, "a graph is required");
    return *in.graph;
}

inline void require_positive_even(int v, LemmaId id, const char* name) {
    require(v > 0 && v % 2 == 0, id, std::string(name) + " must be a positive even integer");
}

inline void check_tuple(const FunctionTuple& f, LemmaId id) {
    require(f.variables >= 0, id, "variable count must be nonnegative");
    require(f.measures.size() >= 1, id, "at least one block required");
    require(std::abs(f.measures.sum() - 1.0) <= measure_tolerance && f.measures.minCoeff() >= 0, id,
            "block measures must form a probability vector");
    require(static_cast<int>(f.incidence.size()) == f.variables, id, "incidence map must list every variable");
    const auto nf = static_cast<int>(f.functions.size());
    std::vector<std::vector<int>> actual(static_cast<std::size_t>(f.variables));
    for (int i = 0; i < nf; ++i) {
        const auto& fn = f.functions[static_cast<std::size_t>(i)];
        std::size_t size = 1;
        for (int v : fn.scope) {
            require(v >= 0 && v < f.variables, id, "function scope names an unknown variable");
            actual[static_cast<std::size_t>(v)].push_back(i);
            size *= static_cast<std::size_t>(f.measures.size());
        }
        require(fn.values.size() == size, id, "function table size does not match its scope");
        for (double x : fn.values) require(std::isfinite(x), id, "function values must be finite");
    }
    for (int v = 0; v < f.variables; ++v) {
        auto declared = f.incidence[static_cast<std::size_t>(v)];
        std::sort(declared.begin(), declared.end());
        require(declared == actual[static_cast<std::size_t>(v)], id,
                "declared incidence of variable " + std::to_string(v) + " disagrees with the function scopes");
        require(declared.size() <= 2, id,
                "variable " + std::to_string(v) + " appears in more than two functions");
    }
}

// integral of the product, and the product of L2 norms.
inline std::pair<double, double> tuple_sides(const FunctionTuple& f, const HomOptions& opts) {
    const std::vector<double> w(f.measures.data(), f.measures.data() + f.measures.size());
    FactorNetwork<double> net(std::vector<std::vector<double>>(static_cast<std::size_t>(f.variables), w));
    double norms = 1;
    for (const auto& fn : f.functions) {
        net.add_factor(fn.scope, fn.values);
        FactorNetwork<double> sq(std::vector<std::vector<double>>(fn.scope.size(), w));
        std::vector<int> local(fn.scope.size());
        for (std::size_t i = 0; i < local.size(); ++i) local[i] = static_cast<int>(i);
        std::vector<double> t(fn.values.size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = fn.values[i] * fn.values[i];
        sq.add_factor(local, std::move(t));
        norms *= std::sqrt(sq.contract_scalar(opts.method, opts.budget));
    }
    return {net.contract_scalar(opts.method, opts.budget), norms};
}

inline double t(const Graph& h, const StepKernel& w, const HomOptions& opts) { return hom_density(h, w, opts); }

} // namespace detail

inline LemmaInstance verify(LemmaId id, LemmaInput in, const HomOptions& opts = {}) {
    using detail::pow0;
    using detail::require;
    std::vector<InequalityCheck> c;
    switch (id) {
    case LemmaId::jensen_rows: {
        const auto& w = detail::need_graphon(in, id);
        require(in.m_prime >= 1, id, "m' must be positive");
        require(in.m >= in.m_prime, id, "m must be at least m'");
        require(in.n >= 1, id, "n must be positive");
        const double big = detail::t(complete_bipartite(in.m, in.n), w, opts);
        const double small = detail::t(complete_bipartite(in.m_prime, in.n), w, opts);
        c.push_back(check_leq("kmn_vs_kmprime_n", pow0(small, static_cast<double>(in.m) / in.m_prime), big));
        break;
    }
    case LemmaId::kmn_c4: {
        const auto& w = detail::need_graphon(in, id);
        require(in.m >= 2 && in.n >= 2, id, "m and n must be at least 2");
        const double c4 = detail::t(cycle_graph(4), w, opts);
        c.push_back(check_leq("kmn_vs_c4", pow0(c4, in.m * in.n / 4.0),
                              detail::t(complete_bipartite(in.m, in.n), w, opts)));
        break;
    }
    case LemmaId::cs_p3: {
        const auto& u = detail::need_kernel(in, id);
        const double p3 = detail::t(path_graph(3), u, opts);
        const double c4 = detail::t(cycle_graph(4), u, opts);
        c.push_back(check_leq("p3_nonnegative", 0.0, p3));
        c.push_back(check_leq("p3_vs_c4", p3, pow0(c4, 0.5)));
        break;
    }
    case LemmaId::star_bounds: {
        const auto& u = detail::need_kernel(in, id);
        require(in.k >= 2, id, "k must be at least 2");
        const double p3 = detail::t(path_graph(3), u, opts);
        const double c4 = detail::t(cycle_graph(4), u, opts);
        const double half = in.k / 2.0;
        c.push_back(check_leq("k1k_vs_p3", std::abs(detail::t(star_graph(in.k), u, opts)), pow0(p3, half)));
        c.push_back(check_leq("p3_power", pow0(p3, half), p3));
        c.push_back(check_leq("k2k_vs_c4", std::abs(detail::t(complete_bipartite(2, in.k), u, opts)), pow0(c4, half)));
        c.push_back(check_leq("c4_power", pow0(c4, half), c4));
        c.push_back(check_leq("k1k_vs_p3_outer", std::abs(detail::t(star_graph(in.k), u, opts)), p3));
        c.push_back(check_leq("k2k_vs_c4_outer", std::abs(detail::t(complete_bipartite(2, in.k), u, opts)), c4));
        break;
    }
    case LemmaId::gen_cs: {
        require(in.functions.has_value(), id, "a function tuple is required");
        detail::check_tuple(*in.functions, id);
        const auto [lhs, rhs] = detail::tuple_sides(*in.functions, opts);
        c.push_back(check_leq("product_vs_norms", lhs, rhs));
        break;
    }
    case LemmaId::even_cycle: {
        const auto& u = detail::need_kernel(in, id);
        require(in.k >= 2, id, "k must be at least 2");
        c.push_back(check_leq("c2k_vs_c4", detail::t(cycle_graph(2 * in.k), u, opts),
                              pow0(detail::t(cycle_graph(4), u, opts), in.k / 2.0)));
        break;
    }
    case LemmaId::long_path: {
        const auto& u = detail::need_kernel(in, id);
        require(in.k >= 1, id, "k must be positive");
        const double p = detail::t(path_graph(in.k + 3), u, opts);
        const double p3 = detail::t(path_graph(3), u, opts);
        const double c4 = detail::t(cycle_graph(4), u, opts);
        const double mid = std::pow(p3, 4) * pow0(c4, in.k);
        c.push_back(check_leq("path_vs_p3_c4", std::pow(p, 4), mid));
        c.push_back(check_leq("p3_c4_vs_c4", mid, pow0(c4, in.k + 2)));
        break;
    }
    case LemmaId::girth4_bip: {
        const auto& u = detail::need_kernel(in, id);
        const auto& g = detail::need_graph(in, id);
        require(g.vertex_count() >= 1, id, "graph must be non-empty");
        require(is_bipartite(g), id, "graph must be bipartite");
        require(min_degree(g) >= 2, id, "minimum degree must be at least 2");
        require(girth(g) >= 4, id, "girth must be at least 4");
        require(!is_cycle(g), id, "graph must not be a single cycle");
        require(!is_complete_bipartite(g), id, "graph must not be complete bipartite");
        c.push_back(check_leq("g_vs_c4", std::abs(detail::t(g, u, opts)),
                              pow0(detail::t(cycle_graph(4), u, opts), 1.25)));
        break;
    }
    case LemmaId::tree_not_star: {
        const auto& u = detail::need_kernel(in, id);
        const auto& g = detail::need_graph(in, id);
        require(is_tree(g), id, "graph must be a tree");
        require(!is_star(g), id, "tree must not be a star");
        c.push_back(check_leq("tree_vs_p3_c4", std::abs(detail::t(g, u, opts)),
                              detail::t(path_graph(3), u, opts) * pow0(detail::t(cycle_graph(4), u, opts), 0.25)));
        break;
    }
    case LemmaId::one_leaf: {
        const auto& u = detail::need_kernel(in, id);
        const auto& g = detail::need_graph(in, id);
        require(is_bipartite(g), id, "graph must be bipartite");
        require(girth(g) >= 4, id, "girth must be at least 4");
        require(count_degree(g, 1) == 1, id, "graph must have exactly one vertex of degree one");
        const double c4 = detail::t(cycle_graph(4), u, opts);
        const double p3 = detail::t(path_graph(3), u, opts);
        c.push_back(check_leq("g_vs_mixed", std::abs(detail::t(g, u, opts)), (c4 + p3) * pow0(c4, 0.125) / 2));
        break;
    }
    case LemmaId::entropy_kab: {
        const auto& g = detail::need_graph(in, id);
        require(g.vertex_count() >= 1, id, "host graph must be non-empty");
        detail::require_positive_even(in.a, id, "a");
        detail::require_positive_even(in.b, id, "b");
        detail::require_positive_even(in.l, id, "l");
        const Graph kab = construct_family(family::PathedBipartite{in.a, in.l, in.b}).graph();
        const double p3 = hom_density_graph(path_graph(3), g, opts);
        c.push_back(check_leq("kab_vs_p3", pow0(p3, (in.a * in.b + in.l) / 2.0), hom_density_graph(kab, g, opts)));
        break;
    }
    case LemmaId::kab_quant: {
        const auto& w = detail::need_graphon(in, id);
        detail::require_positive_even(in.a, id, "a");
        detail::require_positive_even(in.b, id, "b");
        detail::require_positive_even(in.l, id, "l");
        require(4 * in.l <= in.a * in.b, id, "l must be at most ab/4");
        const auto [p, u] = deviation(w);
        const double eps = cut_norm_exact(u).value;
        const double ab = static_cast<double>(in.a) * in.b;
        const double rhs = std::pow(p, ab + in.l) * std::pow(1 + 1e-9 * std::pow(eps, 16), ab / 4 + in.l / 4.0);
        const Graph kab = construct_family(family::PathedBipartite{in.a, in.l, in.b}).graph();
        c.push_back(check_leq("kab_vs_quasirandom", rhs, detail::t(kab, w, opts)));
        break;
    }
    }
    LemmaInstance out;
    out.lemma = id;
    out.input = std::move(in);
    const auto worst = std::min_element(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.margin < y.margin; });
    out.lhs = worst->lhs;
    out.rhs = worst->rhs;
    out.margin = worst->margin;
    out.pass = all_pass(c);
    out.checks = std::move(c);
    return out;
}

namespace detail {

inline Graph random_min_degree_two_bipartite(Rng& rng) {
    for (;;) {
        const Graph g = random_bipartite(rng, rng.integer(2, 4), rng.integer(2, 4), rng.uniform(0.4, 0.9));
        if (min_degree(g) >= 2 && !is_cycle(g) && !is_complete_bipartite(g)) return g;
    }
}

inline Graph random_non_star_tree(Rng& rng) {
    for (;;) {
        const Graph g = random_tree(rng, rng.integer(4, 8));
        if (!is_star(g)) return g;
    }
}

// Bipartite, exactly one leaf, isolated vertices dropped.
inline Graph random_one_leaf(Rng& rng) {
    for (;;) {
        const Graph g = random_bipartite(rng, rng.integer(2, 4), rng.integer(2, 4), rng.uniform(0.3, 0.8));
        if (count_degree(g, 1) != 1) continue;
        std::vector<int> keep(static_cast<std::size_t>(g.vertex_count()), -1);
        int n = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (g.degree(v) > 0) keep[v] = n++;
        std::vector<Edge> e;
        for (const auto& x : g.edges()) e.push_back(make_edge(keep[x.u], keep[x.v]));
        return Graph(n, e);
    }
}

inline FunctionTuple random_tuple(Rng& rng) {
    FunctionTuple f;
    f.variables = rng.integer(1, 5);
    const int q = rng.integer(1, 4);
    const auto mu = rng.dirichlet(q, 1e-3);
    f.measures = Eigen::Map<const Eigen::VectorXd>(mu.data(), q);
    f.incidence.assign(static_cast<std::size_t>(f.variables), {});
    const int nf = rng.integer(1, 5);
    for (int i = 0; i < nf; ++i) {
        std::vector<int> open;
        for (int v = 0; v < f.variables; ++v)
            if (f.incidence[static_cast<std::size_t>(v)].size() < 2) open.push_back(v);
        if (open.empty()) break;
        rng.shuffle(open.begin(), open.end());
        const int arity = rng.integer(1, std::min(3, static_cast<int>(open.size())));
        FunctionTable fn;
        fn.scope.assign(open.begin(), open.begin() + arity);
        std::size_t size = 1;
        for (int v : fn.scope) {
            f.incidence[static_cast<std::size_t>(v)].push_back(static_cast<int>(f.functions.size()));
            size *= static_cast<std::size_t>(q);
        }
        fn.values.resize(size);
        for (auto& x : fn.values) x = rng.uniform(-1.0, 1.0);
        f.functions.push_back(std::move(fn));
    }
    return f;
}

} // namespace detail

// A random instance satisfying the lemma's hypotheses.
inline LemmaInput random_instance(LemmaId id, Rng& rng) {
    LemmaInput in;
    auto kernel = [&] { in.kernel = random_kernel(rng, rng.integer(1, 5)); };
    auto graphon = [&] { in.graphon = random_graphon(rng, 1, 5); };
    switch (id) {
    case LemmaId::jensen_rows:
        graphon();
        in.n = rng.integer(1, 3);
        in.m_prime = rng.integer(1, 3);
        in.m = rng.integer(in.m_prime, 4);
        break;
    case LemmaId::kmn_c4:
        graphon();
        in.m = rng.integer(2, 4);
        in.n = rng.integer(2, 4);
        break;
    case LemmaId::cs_p3: kernel(); break;
    case LemmaId::star_bounds:
        kernel();
        in.k = rng.integer(2, 6);
        break;
    case LemmaId::gen_cs: in.functions = detail::random_tuple(rng); break;
    case LemmaId::even_cycle:
        kernel();
        in.k = rng.integer(2, 5);
        break;
    case LemmaId::long_path:
        kernel();
        in.k = rng.integer(1, 6);
        break;
    case LemmaId::girth4_bip:
        kernel();
        in.graph = detail::random_min_degree_two_bipartite(rng);
        break;
    case LemmaId::tree_not_star:
        kernel();
        in.graph = detail::random_non_star_tree(rng);
        break;
    case LemmaId::one_leaf:
        kernel();
        in.graph = detail::random_one_leaf(rng);
        break;
    case LemmaId::entropy_kab:
        in.graph = random_graph(rng, rng.integer(2, 10), rng.uniform(0.2, 0.9));
        in.a = 2 * rng.integer(1, 2);
        in.b = 2 * rng.integer(1, 2);
        in.l = 2 * rng.integer(1, 2);
        break;
    case LemmaId::kab_quant: {
        static constexpr std::array<std::array<int, 3>, 4> shapes{{{2, 4, 2}, {4, 2, 2}, {4, 4, 2}, {4, 4, 4}}};
        const auto& s = shapes[static_cast<std::size_t>(rng.integer(0, 3))];
        graphon();
        in.a = s[0];
        in.b = s[1];
        in.l = s[2];
        break;
    }
    }
    return in;
}

struct SuiteSummary {
    LemmaId lemma{};
    int trials = 0;
    int failures = 0;
    double worst_margin = 0;
    std::uint64_t seed = 0;
    std::vector<double> margins;  // per trial, by index
};

inline std::uint64_t trial_seed(std::uint64_t seed, LemmaId id, int trial) {
    return sub_seed(sub_seed(seed, static_cast<std::uint64_t>(id)), static_cast<std::uint64_t>(trial));
}

// Trials are independent and may run on several threads; the summary does
// not depend on the thread count.
inline std::vector<SuiteSummary> random_suite(std::uint64_t seed, int trials, const std::vector<LemmaId>& ids,
                                              int threads = 1, const HomOptions& opts = {}) {
    if (trials < 1) throw ParameterError("trials must be at least 1");
    std::vector<SuiteSummary> out;
    for (LemmaId id : ids) {
        std::vector<double> margin(static_cast<std::size_t>(trials));
        std::vector<char> pass(static_cast<std::size_t>(trials));
        std::vector<std::exception_ptr> err(static_cast<std::size_t>(std::max(1, threads)));
        auto work = [&](int first, int stride, std::exception_ptr& e) {
            try {
                for (int i = first; i < trials; i += stride) {
                    Rng rng(trial_seed(seed, id, i));
                    const auto r = verify(id, random_instance(id, rng), opts);
                    margin[static_cast<std::size_t>(i)] = r.margin;
                    pass[static_cast<std::size_t>(i)] = r.pass;
                }
            } catch (...) {
                e = std::current_exception();
            }
        };
        const int nt = std::max(1, std::min(threads, trials));
        std::vector<std::thread> pool;
        for (int t = 1; t < nt; ++t) pool.emplace_back(work, t, nt, std::ref(err[static_cast<std::size_t>(t)]));
        work(0, nt, err[0]);
        for (auto& th : pool) th.join();
        for (auto& e : err)
            if (e) std::rethrow_exception(e);
        SuiteSummary s;
        s.lemma = id;
        s.trials = trials;
        s.seed = seed;
        s.worst_margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < trials; ++i) {
            s.failures += !pass[static_cast<std::size_t>(i)];
            s.worst_margin = std::min(s.worst_margin, margin[static_cast<std::size_t>(i)]);
        }
        s.margins = std::move(margin);
        out.push_back(std::move(s));
    }
    return out;
}

struct OmegaAlphaRow {
    int r = 0;
    double omega = 0;
    double alpha = 0;
};

struct OmegaAlphaConstants {
    double delta = 0;
    std::vector<OmegaAlphaRow> rows;

    const OmegaAlphaRow& at(int r) const {
        if (r < 1 || r > static_cast<int>(rows.size())) throw ParameterError("r outside the table");
        return rows[static_cast<std::size_t>(r - 1)];
    }
};

// omega_1 = alpha_1 = 1, omega_r = (1-delta) delta^(r-1) omega_(r-1), alpha_r = delta alpha_(r-1).
inline OmegaAlphaConstants omega_alpha(double delta, int r_max) {
    if (!(delta > 0 && delta < 1)) throw ParameterError("delta must lie in (0,1)");
    if (r_max < 1) throw ParameterError("r_max must be at least 1");
    OmegaAlphaConstants c{delta, {{1, 1.0, 1.0}}};
    for (int r = 2; r <= r_max; ++r) {
        const auto& prev = c.rows.back();
        c.rows.push_back({r, (1 - delta) * std::pow(delta, r - 1) * prev.omega, delta * prev.alpha});
    }
    return c;
}

struct OmegaAlphaReport {
    double t = 0;
    double omega0 = 0;
    double alpha = 0;   // inner approximation of the independence ratio
    double alpha0 = 0;
    int resolution = 0;
    bool density_holds = false;
    bool sparse_holds = false;

    bool holds() const noexcept { return density_holds || sparse_holds; }
};

inline OmegaAlphaReport omega_alpha_check(const StepGraphon& w, const Graph& h, double delta, int resolution = 100,
                                          int recheck_resolution = 1000, const HomOptions& opts = {}) {
    if (h.vertex_count() < 1) throw ParameterError("graph must have a vertex");
    const auto table = omega_alpha(delta, h.vertex_count());
    OmegaAlphaReport r;
    r.omega0 = table.rows.back().omega;
    r.alpha0 = table.rows.back().alpha;
    r.t = hom_density(h, w, opts);
    r.density_holds = r.t >= r.omega0;
    auto ind = independence_ratio(w, delta, resolution);
    if (!r.density_holds && ind.alpha < r.alpha0) ind = independence_ratio(w, delta, recheck_resolution);
    r.alpha = ind.alpha;
    r.resolution = ind.resolution_used;
    r.sparse_holds = r.alpha >= r.alpha0;
    return r;
}

} // namespace graphonlab

#endif
