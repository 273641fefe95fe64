#ifndef GRAPHONLAB_CLI_APP_HPP
#define GRAPHONLAB_CLI_APP_HPP

#include <CLI11.hpp>

#include <graphonlab/commonality.hpp>
#include <graphonlab/cutnorm.hpp>
#include <graphonlab/density.hpp>
#include <graphonlab/errors.hpp>
#include <graphonlab/expansion.hpp>
#include <graphonlab/graph.hpp>
#include <graphonlab/graph_algorithms.hpp>
#include <graphonlab/independence.hpp>
#include <graphonlab/json_io.hpp>
#include <graphonlab/lemmas.hpp>
#include <graphonlab/regime.hpp>
#include <graphonlab/search.hpp>
#include <graphonlab/spectral.hpp>
#include <graphonlab/step_function.hpp>
#include <graphonlab/witness.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace graphonlab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_inequality = 2;
inline constexpr int exit_budget = 3;
inline constexpr int exit_validation = 4;

// Library operation -> the one subcommand (and flag) that exposes it.
struct Operation {
    std::string name;
    std::string subcommand;
    std::string flag;
};

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> s{"density",   "rooted", "cutnorm", "spectrum", "expand", "classify",
                                            "construct", "verify", "suite",   "search",   "regime", "indep-ratio"};
    return s;
}

inline const std::vector<Operation>& operation_registry() {
    static const std::vector<Operation> r{
        {"hom_density", "density", "--graph --graphon|--kernel"},
        {"hom_density_graph", "density", "--graph --host"},
        {"hom_density_extended", "density", "--extended"},
        {"density", "density", "(no --graph)"},
        {"complement", "density", "--complement"},
        {"restrict", "density", "--weight"},
        {"deviation", "density", "--deviation"},
        {"rooted_density", "rooted", "--graph --graphon|--kernel"},
        {"rooted_sum", "rooted", "--with"},
        {"cut_norm_exact", "cutnorm", "--kernel|--graphon"},
        {"sandwich_check", "cutnorm", "--sandwich"},
        {"c4_deviation_bound", "cutnorm", "--c4-deviation"},
        {"counting_lemma_bound", "cutnorm", "--counting --graph --other"},
        {"decompose", "spectrum", "--graphon|--kernel"},
        {"cycle_density_spectral", "spectrum", "--cycle"},
        {"path_density_spectral", "spectrum", "--path"},
        {"project", "spectrum", "--project"},
        {"estimate_report", "spectrum", "--estimates"},
        {"subset_expansion", "expand", "--graph --graphon"},
        {"classify_subset", "classify", "--base --l --subset|--groups"},
        {"girth", "classify", "--graph"},
        {"chromatic_number", "classify", "--graph"},
        {"is_locally_dense", "classify", "--locally-dense"},
        {"construct_family", "construct", "--family"},
        {"build_witness", "construct", "--witness"},
        {"build_target", "construct", "--target"},
        {"random_high_girth", "construct", "--high-girth"},
        {"edge_subgraph", "construct", "--graph --subset"},
        {"verify", "verify", "--lemma --instance"},
        {"omega_alpha", "verify", "--omega-alpha"},
        {"omega_alpha_check", "verify", "--omega-check"},
        {"random_suite", "suite", "--seed --trials --lemmas"},
        {"search_counterexample", "search", "--graph --k --blocks --seed"},
        {"commonality_value", "search", "--graph --graphon"},
        {"k_common_value", "search", "--graph --coloring"},
        {"validate_coloring", "search", "--coloring"},
        {"gradient", "search", "--gradient"},
        {"reverify", "search", "--state"},
        {"theorem_regime_check", "regime", "--graph --graphon --m --n --l --regime"},
        {"independence_ratio", "indep-ratio", "--graphon --delta"},
    };
    return r;
}

namespace detail {

inline std::vector<Edge> parse_edge_list(const std::string& s) {
    std::vector<Edge> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto dash = item.find('-');
        if (dash == std::string::npos) throw ValidationError("edge '" + item + "' is not of the form u-v");
        try {
            out.push_back(make_edge(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))));
        } catch (const std::logic_error&) {
            throw ValidationError("edge '" + item + "' is not of the form u-v");
        }
    }
    return out;
}

inline FamilySpec parse_family(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ValidationError("family must look like name:params, e.g. path:3");
    const std::string name = s.substr(0, colon);
    std::vector<int> p;
    std::stringstream ss(s.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            p.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
            throw ValidationError("family parameter '" + item + "' is not an integer");
        }
    }
    auto need = [&](std::size_t n) {
        if (p.size() != n) throw ValidationError("family " + name + " takes " + std::to_string(n) + " parameter(s)");
    };
    if (name == "path") return need(1), FamilySpec{family::Path{p[0]}};
    if (name == "cycle") return need(1), FamilySpec{family::Cycle{p[0]}};
    if (name == "complete") return need(1), FamilySpec{family::Complete{p[0]}};
    if (name == "complete-bipartite") return need(2), FamilySpec{family::CompleteBipartite{p[0], p[1]}};
    if (name == "pathed-bipartite") return need(3), FamilySpec{family::PathedBipartite{p[0], p[1], p[2]}};
    throw ValidationError("unknown family '" + name + "'");
}

inline Method parse_method(const std::string& s) {
    if (s == "auto") return Method::automatic;
    if (s == "elimination") return Method::elimination;
    if (s == "enumeration") return Method::enumeration;
    throw ValidationError("unknown method '" + s + "'");
}

inline std::vector<LemmaId> parse_lemmas(const std::string& s) {
    if (s == "all") return {all_lemmas.begin(), all_lemmas.end()};
    std::vector<LemmaId> ids;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) ids.push_back(parse_lemma(item));
    if (ids.empty()) throw ValidationError("no lemma ids given");
    return ids;
}

inline json census_json(const GroupCensus& c) {
    json counts = json::object(), examples = json::object();
    for (int i = 0; i < 8; ++i) {
        const std::string label(1, static_cast<char>('a' + i));
        counts[label] = c.counts[static_cast<std::size_t>(i)];
        if (c.examples[static_cast<std::size_t>(i)]) {
            json idx = json::array();
            const auto& m = *c.examples[static_cast<std::size_t>(i)];
            for (std::size_t e = 0; e < m.size(); ++e)
                if (m[e]) idx.push_back(e);
            examples[label] = idx;
        }
    }
    return {{"counts", counts}, {"examples", examples}, {"subsets", c.subsets}};
}

inline json spectral_json(const SpectralData& s) {
    json j{{"measures", to_json(s.measures)},
           {"eigenvalues", to_json(s.eigenvalues)},
           {"overlaps", to_json(s.overlaps)},
           {"p", s.p},
           {"delta", s.delta},
           {"rank", s.rank()}};
    json f = json::array();
    for (int i = 0; i < s.rank(); ++i) f.push_back(to_json(Eigen::VectorXd(s.eigenfunctions.col(i))));
    j["eigenfunctions"] = f;
    if (s.gamma) j["gamma"] = *s.gamma;
    return j;
}

} // namespace detail

// Parses and runs one command; JSON goes to `out` (or --output), diagnostics
// to `err`. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"graphonlab: homomorphism densities, cut norms, spectra, lemma checks and commonality search"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "graphonlab 1.0.0");
    std::string output;
    int threads = 1;
    std::string method = "auto";
    app.add_option("--output,-o", output, "Write JSON here instead of stdout");
    app.add_option("--threads", threads, "Worker threads for suites and searches")->check(CLI::PositiveNumber);
    app.add_option("--method", method, "Density method: auto, elimination, enumeration");

    // Shared option storage.
    std::string graph, graphon, kernel, host, weight, with, other, base, groups, subset, instance, state, coloring,
        project_file, family_s, regime_s = "local", lemma, lemmas = "all", symmetry = "none", update = "projected";
    bool extended = false, complement_f = false, deviation_f = false, sandwich = false, c4dev = false,
         counting = false, estimates = false, witness = false, target = false, omega = false, omega_check = false,
         gradient_f = false;
    int cycle = 0, path = 0, l = 0, m = 0, n = 0, k = 2, blocks = 3, restarts = 20, iters = 2000, trials = 100,
        max_edges = 20, resolution = 100, rmax = 6, samples = 20000;
    std::vector<int> attach{0, 1}, high_girth;
    std::optional<std::uint64_t> seed;
    double delta = 0.1, step = 0.05, gamma0 = 1e-4, epsilon0 = 1e-2, alpha0 = 0.1;
    std::vector<double> locally_dense;

    auto add_graphon = [&](CLI::App* s) {
        s->add_option("--graphon", graphon, "Step graphon JSON file");
        s->add_option("--kernel", kernel, "Step kernel JSON file");
    };

    auto* density = app.add_subcommand("density", "t(H,W), densities of graphs, complements and restrictions");
    density->add_option("--graph", graph, "Graph H (JSON)");
    add_graphon(density);
    density->add_option("--host", host, "Finite host graph G instead of a graphon");
    density->add_option("--weight", weight, "Restrict W to this block function first");
    density->add_flag("--complement", complement_f, "Use 1 - W");
    density->add_flag("--deviation", deviation_f, "Print p and U = W - p");
    density->add_flag("--extended", extended, "Extended precision pass");

    auto* rooted = app.add_subcommand("rooted", "Rooted densities and rooted sums");
    rooted->add_option("--graph", graph, "Rooted graph (JSON with roots)")->required();
    add_graphon(rooted);
    rooted->add_option("--with", with, "Second rooted graph: print the rooted sum");

    auto* cut = app.add_subcommand("cutnorm", "Cut norm and the inequalities built on it");
    add_graphon(cut);
    cut->add_flag("--sandwich", sandwich, "Cut-norm sandwich checks");
    cut->add_flag("--c4-deviation", c4dev, "p^4 + |W-p|^4/8 <= t(C4,W)");
    cut->add_flag("--counting", counting, "Counting lemma against --other");
    cut->add_option("--graph", graph, "Graph for the counting lemma");
    cut->add_option("--other", other, "Second graphon for the counting lemma");

    auto* spectrum = app.add_subcommand("spectrum", "Spectral decomposition and derived quantities");
    add_graphon(spectrum);
    spectrum->add_option("--cycle", cycle, "Also t(C_n) from the spectrum");
    spectrum->add_option("--path", path, "Also t(P_n) from the spectrum");
    spectrum->add_option("--project", project_file, "Block function to project on the eigenbasis");
    spectrum->add_flag("--estimates", estimates, "Spectral estimate report (graphons)");

    auto* expand = app.add_subcommand("expand", "Subset expansion of t(H, p + U)");
    expand->add_option("--graph", graph, "Graph H")->required();
    expand->add_option("--graphon", graphon, "Step graphon")->required();
    expand->add_option("--max-edges", max_edges, "Refuse graphs with more edges");
    expand->add_option("--base", base, "Base graph G: label terms when H is its pathed witness");
    expand->add_option("--l", l, "Path length of the witness");

    auto* classify = app.add_subcommand("classify", "Group labels of edge subsets; graph invariants");
    classify->add_option("--base", base, "Base graph G of the pathed witness");
    classify->add_option("--l", l, "Path length (at least 9)");
    classify->add_option("--attach", attach, "Attachment edge of G")->expected(2);
    classify->add_option("--subset", subset, "Edge subset as u-v,u-v,...");
    classify->add_option("--groups", groups, "JSON array of edge-index groups: classify every union");
    classify->add_option("--graph", graph, "Graph whose girth and chromatic number to report");
    classify->add_option("--locally-dense", locally_dense, "rho d: check (rho,d)-density")->expected(2);
    classify->add_option("--seed", seed, "Seed for sampled local-density checks");
    classify->add_option("--samples", samples, "Sample count above 25 vertices");

    auto* construct = app.add_subcommand("construct", "Graph families and witness constructions");
    construct->add_option("--family", family_s, "path:n, cycle:n, complete:n, complete-bipartite:a,b, pathed-bipartite:a,l,b");
    construct->add_flag("--witness", witness, "Witness H. built from --graph");
    construct->add_flag("--target", target, "H. (+) K_{m|l,n}. from rooted --graph");
    construct->add_option("--graph", graph, "Input graph");
    construct->add_option("--attach", attach, "Attachment edge for --witness")->expected(2);
    construct->add_option("--m", m);
    construct->add_option("--n", n);
    construct->add_option("--l", l);
    construct->add_option("--regime", regime_s, "local, nonlocal or kcommon");
    construct->add_option("--high-girth", high_girth, "n g: random graph with girth at least g")->expected(2);
    construct->add_option("--seed", seed, "Seed for --high-girth");
    construct->add_option("--subset", subset, "Edge subset u-v,... of --graph: print the spanning subgraph");

    auto* verify_c = app.add_subcommand("verify", "Check one lemma instance, or the omega/alpha constants");
    verify_c->add_option("--lemma", lemma, "Lemma id");
    verify_c->add_option("--instance", instance, "Lemma instance JSON");
    verify_c->add_flag("--omega-alpha", omega, "Print the omega/alpha table");
    verify_c->add_flag("--omega-check", omega_check, "Check the density/sparsity disjunction");
    verify_c->add_option("--delta", delta, "delta in (0,1)");
    verify_c->add_option("--rmax", rmax, "Table size");
    verify_c->add_option("--graph", graph, "Graph H for --omega-check");
    verify_c->add_option("--graphon", graphon, "Graphon for --omega-check");

    auto* suite = app.add_subcommand("suite", "Randomised lemma suite");
    suite->add_option("--seed", seed, "Master seed")->required();
    suite->add_option("--trials", trials, "Trials per lemma");
    suite->add_option("--lemmas", lemmas, "Comma separated ids or all");

    auto* search = app.add_subcommand("search", "Commonality values, gradients and counterexample search");
    search->add_option("--graph", graph, "Target graph H")->required();
    search->add_option("--graphon", graphon, "Evaluate t(H,W) + t(H,1-W)");
    search->add_option("--coloring", coloring, "Evaluate a k-colouring");
    search->add_flag("--gradient", gradient_f, "Gradient of t(H,.) at --graphon");
    search->add_option("--state", state, "Re-verify a stored search state");
    search->add_option("--k", k, "Colours");
    search->add_option("--blocks", blocks, "Blocks");
    search->add_option("--seed", seed, "Seed (required when searching)");
    search->add_option("--restarts", restarts, "Restarts");
    search->add_option("--iters", iters, "Iterations per restart");
    search->add_option("--step", step, "Initial step");
    search->add_option("--symmetry", symmetry, "none or cayley");
    search->add_option("--update", update, "projected or exponentiated");

    auto* regime = app.add_subcommand("regime", "Empirical probe of the regime conclusion on a surrogate target");
    regime->add_option("--graph", graph, "Rooted graph H (root 0 when omitted)")->required();
    regime->add_option("--graphon", graphon, "Graphon")->required();
    regime->add_option("--m", m)->required();
    regime->add_option("--n", n)->required();
    regime->add_option("--l", l)->required();
    regime->add_option("--regime", regime_s, "local, nonlocal or kcommon");
    regime->add_option("--gamma0", gamma0);
    regime->add_option("--epsilon0", epsilon0);
    regime->add_option("--delta", delta);
    regime->add_option("--alpha0", alpha0);

    auto* indep = app.add_subcommand("indep-ratio", "delta-independence ratio (inner approximation)");
    indep->add_option("--graphon", graphon, "Graphon")->required();
    indep->add_option("--delta", delta, "delta in (0,1)")->required();
    indep->add_option("--resolution", resolution, "Grid resolution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_validation;
    }

    int code = exit_ok;
    auto emit = [&](const json& j) {
        const std::string text = dump_stable(j);
        if (output.empty()) {
            out << text;
        } else {
            std::ofstream f(output);
            if (!f) throw ValidationError("cannot write " + output);
            f << text;
        }
    };
    auto fail_if = [&](bool failed) {
        if (failed) code = exit_inequality;
    };

    try {
        HomOptions hom;
        hom.method = detail::parse_method(method);
        auto load_graph = [&] { return graph_from_json(read_json_file(graph)); };
        auto load_kernel = [&]() -> StepKernel {
            if (!kernel.empty()) return kernel_from_json(read_json_file(kernel));
            if (!graphon.empty()) return graphon_from_json(read_json_file(graphon));
            throw ValidationError("--graphon or --kernel is required");
        };
        auto load_graphon = [&] {
            if (graphon.empty()) throw ValidationError("--graphon is required");
            return graphon_from_json(read_json_file(graphon));
        };
        auto need_seed = [&](const char* what) {
            if (!seed) throw ValidationError(std::string("--seed is required for ") + what);
            return *seed;
        };

        if (density->parsed()) {
            if (!host.empty()) {
                const Graph g = graph_from_json(read_json_file(host));
                emit({{"t", hom_density_graph(load_graph(), g, hom)}});
                return code;
            }
            StepKernel w = load_kernel();
            if (complement_f || !weight.empty() || deviation_f) {
                if (kernel.size()) throw ValidationError("--complement, --weight and --deviation need a graphon");
                StepGraphon g = load_graphon();
                if (!weight.empty()) g = restrict(g, block_function_from_json(read_json_file(weight)));
                if (complement_f) g = complement(g);
                if (deviation_f && graph.empty()) {
                    const auto d = deviation(g);
                    emit({{"p", d.p}, {"u", to_json(d.u)}});
                    return code;
                }
                w = g;
            }
            if (graph.empty()) {
                emit({{"p", graphonlab::density(w)}, {"graphon", to_json(w)}});
                return code;
            }
            const Graph h = load_graph();
            emit({{"t", extended ? hom_density_extended(h, w, hom) : hom_density(h, w, hom)}});
            return code;
        }

        if (rooted->parsed()) {
            const RootedGraph g = rooted_from_json(read_json_file(graph));
            if (!with.empty()) {
                const RootedGraph h = rooted_from_json(read_json_file(with));
                emit({{"graph", to_json(rooted_sum(g, h))}});
                return code;
            }
            const auto t = rooted_density(g, load_kernel(), hom);
            emit({{"dims", t.dims}, {"values", t.values}});
            return code;
        }

        if (cut->parsed()) {
            json j = json::object();
            if (counting) {
                if (graph.empty() || other.empty()) throw ValidationError("--counting needs --graph and --other");
                const auto c = counting_lemma_bound(load_graph(), load_kernel(), kernel_from_json(read_json_file(other)), hom);
                j["counting_lemma"] = to_json(c);
                fail_if(!c.pass);
            } else if (c4dev) {
                const auto c = c4_deviation_bound(load_graphon(), hom);
                j["c4_deviation"] = to_json(c);
                fail_if(!c.pass);
            } else {
                const StepKernel u = load_kernel();
                const auto w = u.block_count() <= max_exact_cut_blocks ? cut_norm_exact(u) : cut_norm_lower_bound(u);
                j = {{"value", w.value}, {"s_blocks", w.s_blocks}, {"t_blocks", w.t_blocks}, {"exact", w.exact}};
                if (sandwich) {
                    const auto cs = sandwich_check(u, hom);
                    j["sandwich"] = to_json(cs);
                    fail_if(!all_pass(cs));
                }
            }
            emit(j);
            return code;
        }

        if (spectrum->parsed()) {
            SpectralData s;
            std::optional<StepGraphon> g;
            if (!graphon.empty()) {
                g = load_graphon();
                s = decompose(*g);
            } else {
                s = decompose(load_kernel());
            }
            json j = detail::spectral_json(s);
            if (cycle) j["cycle_density"] = cycle_density_spectral(s, cycle);
            if (path) j["path_density"] = path_density_spectral(s, path);
            if (!project_file.empty()) j["projection"] = to_json(project(block_function_from_json(read_json_file(project_file)), s));
            if (estimates) {
                if (!g) throw ValidationError("--estimates needs a graphon");
                const auto r = estimate_report(s, *g);
                j["estimates"] = to_json(r);
                fail_if(!all_pass(r));
            }
            emit(j);
            return code;
        }

        if (expand->parsed()) {
            const Graph h = load_graph();
            ExpansionOptions eo;
            eo.max_edges = max_edges;
            eo.hom = hom;
            std::optional<PathedWitness> pw;
            if (!base.empty()) {
                pw = make_pathed_witness(graph_from_json(read_json_file(base)), attach[0], attach[1], l);
                eo.witness = &*pw;
            }
            const auto r = subset_expansion(h, load_graphon(), eo);
            json terms = json::array();
            for (const auto& t : r.terms) {
                json x{{"edges", t.edges}, {"coefficient", t.coefficient}, {"term", t.term}};
                if (t.group) x["group"] = std::string(1, *t.group);
                terms.push_back(x);
            }
            emit({{"p", r.p}, {"terms", terms}, {"total", r.total}, {"direct", r.direct}});
            return code;
        }

        if (classify->parsed()) {
            if (!base.empty()) {
                const auto w = make_pathed_witness(graph_from_json(read_json_file(base)), attach[0], attach[1], l);
                if (!groups.empty()) {
                    const auto gj = read_json_file(groups);
                    std::vector<std::vector<int>> gs;
                    try {
                        gs = gj.get<std::vector<std::vector<int>>>();
                    } catch (const json::exception&) {
                        throw ValidationError("groups must be an array of arrays of edge indices");
                    }
                    emit(detail::census_json(classify_grouped(w, gs)));
                    return code;
                }
                const auto f = detail::parse_edge_list(subset);
                if (f.empty()) throw ValidationError("--subset must name at least one edge");
                emit({{"group", std::string(1, classify_subset(w, f))}, {"witness", to_json(w.graph)}});
                return code;
            }
            if (graph.empty()) throw ValidationError("classify needs --base (with --subset or --groups) or --graph");
            const Graph g = load_graph();
            if (!locally_dense.empty()) {
                const auto r = is_locally_dense(g, locally_dense[0], locally_dense[1],
                                                g.vertex_count() > 25 ? need_seed("sampled local-density checks") : seed.value_or(0),
                                                samples);
                emit({{"dense", r.dense},
                      {"exact", r.exact},
                      {"witness", r.witness},
                      {"witness_density", r.witness_density},
                      {"subsets_checked", r.subsets_checked},
                      {"confidence", r.confidence}});
                return code;
            }
            const int gi = girth(g);
            emit({{"girth", gi == infinite_girth ? json(nullptr) : json(gi)},
                  {"chromatic_number", chromatic_number(g)},
                  {"vertices", g.vertex_count()},
                  {"edges", g.edge_count()}});
            return code;
        }

        if (construct->parsed()) {
            if (!family_s.empty()) {
                emit(to_json(construct_family(detail::parse_family(family_s))));
            } else if (witness) {
                emit(to_json(build_witness(load_graph(), attach[0], attach[1])));
            } else if (target) {
                const RootedGraph h = rooted_from_json(read_json_file(graph), {0});
                emit(to_json(build_target(h, m, n, l, parse_regime(regime_s))));
            } else if (!high_girth.empty()) {
                const auto r = random_high_girth(high_girth[0], high_girth[1], need_seed("--high-girth"));
                emit({{"graph", to_json(r.graph)},
                      {"sampled_vertices", r.sampled_vertices},
                      {"edge_probability", r.edge_probability},
                      {"removed_vertices", r.removed_vertices},
                      {"girth", r.girth == infinite_girth ? json(nullptr) : json(r.girth)},
                      {"alpha_bound", r.alpha_bound},
                      {"alpha_exact", r.alpha_exact},
                      {"chromatic_lower_bound", r.chromatic_lower_bound}});
            } else if (!subset.empty()) {
                emit(to_json(edge_subgraph(load_graph(), detail::parse_edge_list(subset))));
            } else {
                throw ValidationError("construct needs --family, --witness, --target, --high-girth or --subset");
            }
            return code;
        }

        if (verify_c->parsed()) {
            if (omega) {
                const auto t = omega_alpha(delta, rmax);
                json rows = json::array();
                for (const auto& r : t.rows) rows.push_back({{"r", r.r}, {"omega", r.omega}, {"alpha", r.alpha}});
                emit({{"delta", t.delta}, {"table", rows}});
                return code;
            }
            if (omega_check) {
                const auto r = omega_alpha_check(load_graphon(), load_graph(), delta, 100, 1000, hom);
                emit({{"t", r.t},
                      {"omega0", r.omega0},
                      {"alpha", r.alpha},
                      {"alpha0", r.alpha0},
                      {"resolution", r.resolution},
                      {"density_holds", r.density_holds},
                      {"sparse_holds", r.sparse_holds},
                      {"holds", r.holds()}});
                fail_if(!r.holds());
                return code;
            }
            if (lemma.empty() || instance.empty()) throw ValidationError("verify needs --lemma and --instance");
            const LemmaId id = parse_lemma(lemma);
            const auto r = verify(id, lemma_input_from_json(read_json_file(instance)), hom);
            emit(to_json(r));
            fail_if(!r.pass);
            return code;
        }

        if (suite->parsed()) {
            const auto s = random_suite(*seed, trials, detail::parse_lemmas(lemmas), threads, hom);
            json a = json::array();
            int failures = 0;
            for (const auto& x : s) {
                a.push_back(to_json(x));
                failures += x.failures;
            }
            emit(a);
            fail_if(failures > 0);
            return code;
        }

        if (search->parsed()) {
            const Graph h = load_graph();
            if (!state.empty()) {
                SearchState st = search_state_from_json(read_json_file(state));
                if (!(st.target == h)) throw ValidationError("stored state targets a different graph");
                emit(to_json(reverify(std::move(st), hom)));
                return code;
            }
            if (!coloring.empty()) {
                const auto ws = coloring_from_json(read_json_file(coloring));
                if (!validate_coloring(ws)) {
                    emit({{"valid", false}});
                    return exit_validation;
                }
                const auto c = k_common_value(h, ws, hom);
                emit({{"valid", true}, {"value", c.value}, {"threshold", c.threshold}, {"margin", c.margin}});
                return code;
            }
            if (!graphon.empty()) {
                const StepGraphon w = load_graphon();
                if (gradient_f) {
                    emit({{"gradient", to_json(gradient(h, w, hom))}});
                    return code;
                }
                const auto c = commonality_value(h, w, hom);
                emit({{"value", c.value}, {"threshold", c.threshold}, {"margin", c.margin}});
                return code;
            }
            SearchOptions o;
            o.colors = k;
            o.blocks = blocks;
            o.seed = need_seed("search");
            o.restarts = restarts;
            o.iters = iters;
            o.step = step;
            o.symmetry = parse_symmetry(symmetry);
            o.update = parse_update(update);
            o.threads = threads;
            o.hom = hom;
            emit(to_json(search_counterexample(h, o)));
            return code;
        }

        if (regime->parsed()) {
            RegimeParams p;
            p.m = m;
            p.n = n;
            p.l = l;
            p.regime = parse_regime(regime_s);
            p.gamma0 = gamma0;
            p.epsilon0 = epsilon0;
            p.delta = delta;
            p.alpha0 = alpha0;
            const auto r = theorem_regime_check(rooted_from_json(read_json_file(graph), {0}), load_graphon(), p, hom);
            emit({{"regime", to_string(r.regime)},
                  {"target_vertices", r.target_vertices},
                  {"target_edges", r.target_edges},
                  {"p", r.p},
                  {"gamma", r.gamma},
                  {"cut_norm", r.cut_norm},
                  {"alpha", r.alpha},
                  {"sparse_part", r.sparse_part},
                  {"hypothesis_held", r.hypothesis_held},
                  {"conclusion", to_json(r.conclusion)},
                  {"note", r.note}});
            return code;
        }

        if (indep->parsed()) {
            const auto r = independence_ratio(load_graphon(), delta, resolution);
            emit({{"alpha", r.alpha}, {"h", to_json(r.h.values)}, {"resolution", r.resolution_used}});
            return code;
        }
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return exit_budget;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_validation;
    } catch (const ParameterError& e) {
        err << "invalid parameter: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return code;
}

} // namespace graphonlab::cli

#endif
