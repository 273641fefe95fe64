#ifndef GRAPHONLAB_JSON_IO_HPP
#define GRAPHONLAB_JSON_IO_HPP

#include <nlohmann/json.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "lemmas.hpp"
#include "search.hpp"
#include "step_function.hpp"

namespace graphonlab {

using json = nlohmann::json;

// Parses JSON text; syntax errors carry line and column.
inline json parse_json(const std::string& text, const std::string& source = "<input>") {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        const auto cut = what.find("; ");
        if (cut != std::string::npos) what = what.substr(cut + 2);
        throw ValidationError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON: " + what);
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

namespace detail {

inline void dump_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

inline void dump(std::string& out, const json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + json(it.key()).dump() + ": ";
            dump(out, it.value(), indent, depth + 1);
        }
        out += "\n" + close + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        bool scalar = true;
        for (const auto& x : j) scalar = scalar && !x.is_structured();
        if (scalar) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                dump(out, j[i], indent, depth + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += pad;
            dump(out, j[i], indent, depth + 1);
        }
        out += "\n" + close + "]";
        return;
    }
    case json::value_t::number_float: dump_number(out, j.get<double>()); return;
    default: out += j.dump(); return;
    }
}

template <class T>
T field(const json& j, const char* key, const std::string& what) {
    if (!j.is_object()) throw ValidationError(what + " must be a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) throw ValidationError(what + " lacks field \"" + key + "\"");
    try {
        return it->get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(what + " field \"" + key + "\" has the wrong type: " + e.what());
    }
}

} // namespace detail

// Sorted keys (objects are ordered maps), 17 significant digits.
inline std::string dump_stable(const json& j) {
    std::string out;
    detail::dump(out, j, 2, 0);
    out += "\n";
    return out;
}

// {"n": n, "edges": [[u,v],...]} with optional "roots".
inline json to_json(const Graph& g) {
    json e = json::array();
    for (const auto& x : g.edges()) e.push_back({x.u, x.v});
    return {{"n", g.vertex_count()}, {"edges", e}};
}

inline json to_json(const RootedGraph& g) {
    json j = to_json(g.graph());
    j["roots"] = g.roots();
    return j;
}

inline Graph graph_from_json(const json& j) {
    const int n = detail::field<int>(j, "n", "graph");
    const auto pairs = detail::field<std::vector<std::vector<int>>>(j, "edges", "graph");
    std::vector<Edge> e;
    for (const auto& p : pairs) {
        if (p.size() != 2) throw ValidationError("graph edges must be pairs of vertices");
        e.push_back({p[0], p[1]});
    }
    return Graph(n, std::move(e));
}

inline RootedGraph rooted_from_json(const json& j, std::vector<int> default_roots = {}) {
    Graph g = graph_from_json(j);
    auto roots = j.contains("roots") ? detail::field<std::vector<int>>(j, "roots", "rooted graph") : std::move(default_roots);
    return RootedGraph(std::move(g), std::move(roots));
}

inline json to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

inline json to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        json r = json::array();
        for (Eigen::Index b = 0; b < m.cols(); ++b) r.push_back(m(a, b));
        rows.push_back(r);
    }
    return rows;
}

inline json to_json(const StepKernel& w) { return {{"measures", to_json(w.measures())}, {"values", to_json(w.values())}}; }

inline Eigen::VectorXd vector_from_json(const json& j, const std::string& what) {
    std::vector<double> v;
    try {
        v = j.get<std::vector<double>>();
    } catch (const json::exception&) {
        throw ValidationError(what + " must be an array of numbers");
    }
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Eigen::MatrixXd matrix_from_json(const json& j, const std::string& what) {
    std::vector<std::vector<double>> rows;
    try {
        rows = j.get<std::vector<std::vector<double>>>();
    } catch (const json::exception&) {
        throw ValidationError(what + " must be an array of numeric rows");
    }
    const auto k = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(a)].size()) != k)
            throw ValidationError(what + " must be square");
        for (Eigen::Index b = 0; b < k; ++b) m(a, b) = rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    return m;
}

// Measures default to uniform when omitted.
inline std::pair<Eigen::VectorXd, Eigen::MatrixXd> step_parts(const json& j, const std::string& what) {
    if (!j.is_object() || !j.contains("values")) throw ValidationError(what + " lacks field \"values\"");
    Eigen::MatrixXd m = matrix_from_json(j.at("values"), what + " values");
    Eigen::VectorXd mu = j.contains("measures") ? vector_from_json(j.at("measures"), what + " measures")
                                                : Eigen::VectorXd::Constant(m.rows(), 1.0 / static_cast<double>(std::max<Eigen::Index>(1, m.rows())));
    return {std::move(mu), std::move(m)};
}

inline StepKernel kernel_from_json(const json& j) {
    auto [mu, m] = step_parts(j, "kernel");
    return {std::move(mu), std::move(m)};
}

inline StepGraphon graphon_from_json(const json& j) {
    auto [mu, m] = step_parts(j, "graphon");
    return {std::move(mu), std::move(m)};
}

inline std::vector<StepGraphon> coloring_from_json(const json& j) {
    const json& arr = j.is_object() && j.contains("coloring") ? j.at("coloring") : j;
    if (!arr.is_array()) throw ValidationError("colouring must be an array of graphons");
    std::vector<StepGraphon> ws;
    for (const auto& x : arr) ws.push_back(graphon_from_json(x));
    return ws;
}

inline BlockFunction block_function_from_json(const json& j) {
    return {vector_from_json(j.is_object() ? j.at("values") : j, "block function")};
}

inline json to_json(const FunctionTuple& f) {
    json fs = json::array();
    for (const auto& fn : f.functions) fs.push_back({{"scope", fn.scope}, {"values", fn.values}});
    return {{"variables", f.variables}, {"measures", to_json(f.measures)}, {"functions", fs}, {"incidence", f.incidence}};
}

inline FunctionTuple tuple_from_json(const json& j) {
    FunctionTuple f;
    f.variables = detail::field<int>(j, "variables", "function tuple");
    f.measures = vector_from_json(j.at("measures"), "function tuple measures");
    for (const auto& fn : detail::field<json>(j, "functions", "function tuple"))
        f.functions.push_back({detail::field<std::vector<int>>(fn, "scope", "function"),
                               detail::field<std::vector<double>>(fn, "values", "function")});
    f.incidence = detail::field<std::vector<std::vector<int>>>(j, "incidence", "function tuple");
    return f;
}

inline json to_json(const LemmaInput& in) {
    json j = json::object();
    if (in.graphon) j["graphon"] = to_json(*in.graphon);
    if (in.kernel) j["kernel"] = to_json(*in.kernel);
    if (in.graph) j["graph"] = to_json(*in.graph);
    if (in.functions) j["functions"] = to_json(*in.functions);
    for (const auto& [k, v] : {std::pair{"m", in.m}, {"m_prime", in.m_prime}, {"n", in.n}, {"k", in.k}, {"a", in.a},
                               {"b", in.b}, {"l", in.l}})
        if (v != 0) j[k] = v;
    return j;
}

inline LemmaInput lemma_input_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("lemma instance must be a JSON object");
    LemmaInput in;
    if (j.contains("graphon")) in.graphon = graphon_from_json(j.at("graphon"));
    if (j.contains("kernel")) in.kernel = kernel_from_json(j.at("kernel"));
    if (j.contains("graph")) in.graph = graph_from_json(j.at("graph"));
    if (j.contains("functions")) in.functions = tuple_from_json(j.at("functions"));
    auto num = [&](const char* k) { return j.contains(k) ? detail::field<int>(j, k, "lemma instance") : 0; };
    in.m = num("m");
    in.m_prime = num("m_prime");
    in.n = num("n");
    in.k = num("k");
    in.a = num("a");
    in.b = num("b");
    in.l = num("l");
    return in;
}

inline json to_json(const InequalityCheck& c) {
    return {{"id", c.id}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}, {"pass", c.pass}};
}

inline json to_json(const std::vector<InequalityCheck>& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back(to_json(c));
    return a;
}

inline json to_json(const LemmaInstance& r) {
    return {{"lemma", std::string(to_string(r.lemma))}, {"input", to_json(r.input)}, {"checks", to_json(r.checks)},
            {"lhs", r.lhs}, {"rhs", r.rhs}, {"margin", r.margin}, {"pass", r.pass}};
}

inline json to_json(const SuiteSummary& s) {
    return {{"lemma", std::string(to_string(s.lemma))}, {"trials", s.trials}, {"failures", s.failures},
            {"worst_margin", s.worst_margin}, {"seed", s.seed}};
}

inline json to_json(const SearchState& s) {
    json col = json::array(), grad = json::array();
    for (const auto& w : s.coloring) col.push_back(to_json(w));
    for (const auto& g : s.gradient) grad.push_back(to_json(g));
    return {{"k", s.k},
            {"target", to_json(s.target)},
            {"coloring", col},
            {"value", s.value},
            {"threshold", s.threshold},
            {"margin", s.margin},
            {"gradient", grad},
            {"seed", s.seed},
            {"restart", s.restart},
            {"iterations", s.iteration},
            {"step", s.step},
            {"converged", s.converged},
            {"verified_value", s.verified_value},
            {"verified_margin", s.verified_margin},
            {"counterexample_found", s.counterexample_found}};
}

inline SearchState search_state_from_json(const json& j) {
    const std::string what = "search state";
    SearchState s;
    s.target = graph_from_json(detail::field<json>(j, "target", what));
    s.coloring = coloring_from_json(detail::field<json>(j, "coloring", what));
    s.k = j.contains("k") ? detail::field<int>(j, "k", what) : static_cast<int>(s.coloring.size());
    if (s.k != static_cast<int>(s.coloring.size())) throw ValidationError("search state k disagrees with its colouring");
    auto real = [&](const char* k) { return j.contains(k) && !j.at(k).is_null() ? detail::field<double>(j, k, what) : 0.0; };
    s.value = real("value");
    s.threshold = real("threshold");
    s.margin = real("margin");
    s.step = real("step");
    s.verified_value = real("verified_value");
    s.verified_margin = real("verified_margin");
    if (j.contains("gradient"))
        for (const auto& g : j.at("gradient")) s.gradient.push_back(matrix_from_json(g, "gradient"));
    s.seed = j.contains("seed") ? detail::field<std::uint64_t>(j, "seed", what) : 0;
    s.restart = j.contains("restart") ? detail::field<int>(j, "restart", what) : 0;
    s.iteration = j.contains("iterations") ? detail::field<int>(j, "iterations", what) : 0;
    s.converged = j.contains("converged") && detail::field<bool>(j, "converged", what);
    s.counterexample_found = j.contains("counterexample_found") && detail::field<bool>(j, "counterexample_found", what);
    return s;
}

} // namespace graphonlab

#endif
