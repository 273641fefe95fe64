#ifndef GRAPHONLAB_GRAPH_HPP
#define GRAPHONLAB_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace graphonlab {

struct Edge {
    int u;
    int v;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Finite simple graph. Edges are kept normalized (u < v) and sorted.
class Graph {
public:
    Graph() = default;

    Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
        if (n_ < 0) throw ValidationError("vertex count must be non-negative");
        for (auto& e : edges_) {
            if (e.u == e.v) throw ValidationError("loop at vertex " + std::to_string(e.u));
            if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_)
                throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                      ") has an endpoint outside 0.." + std::to_string(n_ - 1));
            e = make_edge(e.u, e.v);
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw ValidationError("duplicate edge");
        adj_.assign(static_cast<std::size_t>(n_), {});
        for (const auto& e : edges_) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    bool has_edge(int a, int b) const {
        if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_) return false;
        return std::binary_search(edges_.begin(), edges_.end(), make_edge(a, b));
    }

    // Position of an edge in edges(), or -1.
    int edge_index(int a, int b) const {
        if (a == b) return -1;
        const Edge e = make_edge(a, b);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        return it != edges_.end() && *it == e ? static_cast<int>(it - edges_.begin()) : -1;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// Graph with an ordered, non-empty, independent list of roots.
class RootedGraph {
public:
    RootedGraph(Graph g, std::vector<int> roots) : graph_(std::move(g)), roots_(std::move(roots)) {
        if (roots_.empty()) throw ValidationError("a rooted graph needs at least one root");
        for (std::size_t i = 0; i < roots_.size(); ++i) {
            const int r = roots_[i];
            if (r < 0 || r >= graph_.vertex_count()) throw ValidationError("root " + std::to_string(r) + " is not a vertex");
            for (std::size_t j = 0; j < i; ++j) {
                if (roots_[j] == r) throw ValidationError("root " + std::to_string(r) + " listed twice");
                if (graph_.has_edge(roots_[j], r))
                    throw ValidationError("roots " + std::to_string(roots_[j]) + " and " + std::to_string(r) +
                                          " are adjacent; roots must be independent");
            }
        }
    }

    const Graph& graph() const noexcept { return graph_; }
    const std::vector<int>& roots() const noexcept { return roots_; }
    int root_count() const noexcept { return static_cast<int>(roots_.size()); }

    friend bool operator==(const RootedGraph&, const RootedGraph&) = default;

private:
    Graph graph_;
    std::vector<int> roots_;
};

// G<F>: same vertex set, edge set exactly f.
inline Graph edge_subgraph(const Graph& g, const std::vector<Edge>& f) {
    for (const auto& e : f)
        if (!g.has_edge(e.u, e.v))
            throw ValidationError("(" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not an edge");
    return Graph(g.vertex_count(), f);
}

// Same, with the subset given as a membership mask over g.edges().
inline Graph edge_subgraph(const Graph& g, const std::vector<bool>& mask) {
    if (mask.size() != g.edges().size()) throw ValidationError("edge mask size does not match edge count");
    std::vector<Edge> f;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) f.push_back(g.edges()[i]);
    return Graph(g.vertex_count(), std::move(f));
}

// Vertex map used by rooted_sum: vertices of h are sent to new indices,
// non-roots of h appended after g in increasing order.
inline std::vector<int> rooted_sum_map(const RootedGraph& g, const RootedGraph& h) {
    const int ng = g.graph().vertex_count();
    std::vector<int> map(static_cast<std::size_t>(h.graph().vertex_count()), -1);
    for (int i = 0; i < h.root_count(); ++i) map[h.roots()[i]] = g.roots()[i];
    int next = ng;
    for (auto& m : map)
        if (m < 0) m = next++;
    return map;
}

// Glues g and h by identifying their i-th roots.
inline Graph rooted_sum(const RootedGraph& g, const RootedGraph& h) {
    if (g.root_count() != h.root_count())
        throw ValidationError("root counts differ: " + std::to_string(g.root_count()) + " vs " +
                              std::to_string(h.root_count()));
    const auto map = rooted_sum_map(g, h);
    std::vector<Edge> edges = g.graph().edges();
    for (const auto& e : h.graph().edges()) edges.push_back(make_edge(map[e.u], map[e.v]));
    const int n = g.graph().vertex_count() + h.graph().vertex_count() - g.root_count();
    return Graph(n, std::move(edges));
}

// Rooted sum that keeps g's roots as roots of the result.
inline RootedGraph rooted_sum_keep(const RootedGraph& g, const RootedGraph& h) {
    return RootedGraph(rooted_sum(g, h), g.roots());
}

// Disjoint union, vertices of b shifted by |a|.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> edges = a.edges();
    const int s = a.vertex_count();
    for (const auto& e : b.edges()) edges.push_back({e.u + s, e.v + s});
    return Graph(a.vertex_count() + b.vertex_count(), std::move(edges));
}

inline Graph remove_edge(const Graph& g, int index) {
    std::vector<Edge> edges = g.edges();
    edges.erase(edges.begin() + index);
    return Graph(g.vertex_count(), std::move(edges));
}

// ---- named families -------------------------------------------------------

namespace family {
struct Path {
    int n;  // vertices
};
struct Cycle {
    int n;
};
struct Complete {
    int n;
};
struct CompleteBipartite {
    int a;
    int b;
};
// K_{a,b} with an l-edge path hanging off a vertex of the a-side.
struct PathedBipartite {
    int a;
    int l;
    int b;
};
} // namespace family

using FamilySpec =
    std::variant<family::Path, family::Cycle, family::Complete, family::CompleteBipartite, family::PathedBipartite>;

namespace detail {
inline void require_positive(int v, const char* what) {
    if (v <= 0) throw ParameterError(std::string(what) + " must be positive, got " + std::to_string(v));
}
} // namespace detail

// Standard rootings: path at an end vertex, K_{a,b} in the a-part (its first
// vertex), the pathed bipartite graph at the free end of its path, cycles and
// cliques at vertex 0.
inline RootedGraph construct_family(const FamilySpec& spec) {
    struct Builder {
        RootedGraph operator()(family::Path p) const {
            detail::require_positive(p.n, "path order");
            std::vector<Edge> e;
            for (int i = 0; i + 1 < p.n; ++i) e.push_back({i, i + 1});
            return {Graph(p.n, e), {0}};
        }
        RootedGraph operator()(family::Cycle c) const {
            if (c.n < 3) throw ParameterError("cycle length must be at least 3, got " + std::to_string(c.n));
            std::vector<Edge> e;
            for (int i = 0; i < c.n; ++i) e.push_back(make_edge(i, (i + 1) % c.n));
            return {Graph(c.n, e), {0}};
        }
        RootedGraph operator()(family::Complete k) const {
            detail::require_positive(k.n, "clique order");
            std::vector<Edge> e;
            for (int i = 0; i < k.n; ++i)
                for (int j = i + 1; j < k.n; ++j) e.push_back({i, j});
            return {Graph(k.n, e), {0}};
        }
        RootedGraph operator()(family::CompleteBipartite k) const {
            detail::require_positive(k.a, "part size a");
            detail::require_positive(k.b, "part size b");
            std::vector<Edge> e;
            for (int i = 0; i < k.a; ++i)
                for (int j = 0; j < k.b; ++j) e.push_back({i, k.a + j});
            return {Graph(k.a + k.b, e), {0}};
        }
        RootedGraph operator()(family::PathedBipartite k) const {
            if (k.l < 0) throw ParameterError("path length must be non-negative");
            auto base = (*this)(family::CompleteBipartite{k.a, k.b});
            if (k.l == 0) return base;
            // K_{a|l,b} = P_{l+1} (+) K_{a,b}, glued at the a-side root; the
            // far end of the path becomes the root.
            auto path = (*this)(family::Path{k.l + 1});
            const RootedGraph tail(path.graph(), {0});
            const Graph g = rooted_sum(base, tail);
            return {g, {g.vertex_count() - 1}};
        }
    };
    return std::visit(Builder{}, spec);
}

inline Graph path_graph(int n) { return construct_family(family::Path{n}).graph(); }
inline Graph cycle_graph(int n) { return construct_family(family::Cycle{n}).graph(); }
inline Graph complete_graph(int n) { return construct_family(family::Complete{n}).graph(); }
inline Graph complete_bipartite(int a, int b) { return construct_family(family::CompleteBipartite{a, b}).graph(); }
inline Graph star_graph(int k) { return complete_bipartite(1, k); }

} // namespace graphonlab

#endif
