#ifndef GRAPHONLAB_WITNESS_HPP
#define GRAPHONLAB_WITNESS_HPP

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "graph_algorithms.hpp"

namespace graphonlab {

// H.: g with a 3-edge path at attach_a (its far end is the root), and a
// 12-edge path at attach_b whose far end carries a 4-cycle.
//
// Vertex layout for n = |g|:
//   n, n+1, n+2        the 3-edge path, n+2 is the root
//   n+3 .. n+14        the 12-edge path, n+14 its far end
//   n+15, n+16, n+17   the rest of the 4-cycle n+14 n+15 n+16 n+17
inline RootedGraph build_witness(const Graph& g, int attach_a, int attach_b) {
    const int n = g.vertex_count();
    if (attach_a == attach_b) throw ParameterError("attachment vertices must differ");
    if (attach_a < 0 || attach_a >= n || attach_b < 0 || attach_b >= n)
        throw ParameterError("attachment vertices must be vertices of the base graph");
    std::vector<Edge> e = g.edges();
    e.push_back({attach_a, n});
    e.push_back({n, n + 1});
    e.push_back({n + 1, n + 2});
    e.push_back({attach_b, n + 3});
    for (int i = n + 3; i < n + 14; ++i) e.push_back({i, i + 1});
    e.push_back({n + 14, n + 15});
    e.push_back({n + 15, n + 16});
    e.push_back({n + 16, n + 17});
    e.push_back({n + 14, n + 17});
    return {Graph(n + 18, e), {n + 2}};
}

// Default attachments: the two lowest-index vertices.
inline RootedGraph build_witness(const Graph& g) { return build_witness(g, 0, 1); }

enum class Regime { local, nonlocal, kcommon };

inline std::string to_string(Regime r) {
    switch (r) {
    case Regime::local: return "local";
    case Regime::nonlocal: return "nonlocal";
    case Regime::kcommon: return "kcommon";
    }
    return "?";
}

inline Regime parse_regime(const std::string& s) {
    if (s == "local") return Regime::local;
    if (s == "nonlocal") return Regime::nonlocal;
    if (s == "kcommon") return Regime::kcommon;
    throw ParameterError("unknown regime '" + s + "' (expected local, nonlocal or kcommon)");
}

// Throws ParameterError naming the first violated constraint.
//   local:    m, n, l even; 5 | m; l >= n + |E(H)|
//   nonlocal: m, n even; l <= mn/4
//   kcommon:  m, n even; 5 | m; l == n + |E(H)|
inline void check_regime(int edges_h, int m, int n, int l, Regime r) {
    auto fail = [&](const std::string& what) {
        throw ParameterError(to_string(r) + " regime violated: " + what + " (m=" + std::to_string(m) +
                             ", n=" + std::to_string(n) + ", l=" + std::to_string(l) + ", |E(H)|=" +
                             std::to_string(edges_h) + ")");
    };
    if (m <= 0 || n <= 0) fail("m and n must be positive");
    if (l < 0) fail("l must be non-negative");
    if (m % 2 != 0) fail("m must be even");
    if (n % 2 != 0) fail("n must be even");
    switch (r) {
    case Regime::local:
        if (l % 2 != 0) fail("l must be even");
        if (m % 5 != 0) fail("m must be divisible by 5");
        if (l < n + edges_h) fail("l must be at least n + |E(H)|");
        break;
    case Regime::nonlocal:
        if (4 * l > m * n) fail("l must be at most mn/4");
        break;
    case Regime::kcommon:
        if (m % 5 != 0) fail("m must be divisible by 5");
        if (l != n + edges_h) fail("l must equal n + |E(H)|");
        break;
    }
}

// H. (+) K_{m|l,n}. after checking the regime's parameter constraints.
inline Graph build_target(const RootedGraph& h, int m, int n, int l, Regime r) {
    if (h.root_count() != 1) throw ParameterError("target construction needs a single-rooted graph");
    check_regime(h.graph().edge_count(), m, n, l, r);
    return rooted_sum(h, construct_family(family::PathedBipartite{m, l, n}));
}

// H_l = H. (+) P_l. with the bookkeeping needed to classify edge subsets.
struct PathedWitness {
    Graph graph;
    int l = 0;
    std::vector<bool> core_edge;   // edge of H. (not of the appended path)
    std::vector<bool> base_edge;   // edge of the base graph G
    std::array<int, 4> c4_edges{};  // edge indices of the attached 4-cycle
    std::vector<int> path_vertex;   // path_vertex[i] = v_i, v_0 the root
    int v8() const { return path_vertex.at(8); }
};

// l >= 9 so that v_8 exists.
inline PathedWitness make_pathed_witness(const Graph& g, int attach_a, int attach_b, int l) {
    if (l < 9) throw ParameterError("the path length l must be at least 9, got " + std::to_string(l));
    const RootedGraph h = build_witness(g, attach_a, attach_b);
    const RootedGraph p = construct_family(family::Path{l});
    PathedWitness w;
    w.l = l;
    w.graph = rooted_sum(h, p);
    const int n = g.vertex_count();
    const int nh = h.graph().vertex_count();
    const auto& edges = w.graph.edges();
    w.core_edge.assign(edges.size(), false);
    w.base_edge.assign(edges.size(), false);
    for (const auto& e : h.graph().edges()) w.core_edge[w.graph.edge_index(e.u, e.v)] = true;
    for (const auto& e : g.edges()) w.base_edge[w.graph.edge_index(e.u, e.v)] = true;
    const int c = n + 14;
    w.c4_edges = {w.graph.edge_index(c, c + 1), w.graph.edge_index(c + 1, c + 2), w.graph.edge_index(c + 2, c + 3),
                  w.graph.edge_index(c, c + 3)};
    w.path_vertex.push_back(h.roots().front());
    for (int i = 1; i < l; ++i) w.path_vertex.push_back(nh + i - 1);
    return w;
}

inline PathedWitness make_pathed_witness(const Graph& g, int l) { return make_pathed_witness(g, 0, 1, l); }

namespace detail {

struct ComponentInfo {
    int vertices = 0;
    int edges = 0;
    int c4_edges = 0;
    bool core = false;
    bool has_v8 = false;
    bool star = false;
};

} // namespace detail

// Truth values of the eight group predicates for a non-empty edge subset.
// Exactly one of them holds for every subset.
inline std::array<bool, 8> group_predicates(const PathedWitness& w, const std::vector<bool>& f) {
    const Graph& g = w.graph;
    const auto& edges = g.edges();
    if (f.size() != edges.size()) throw ParameterError("edge subset mask has the wrong size");
    if (std::find(f.begin(), f.end(), true) == f.end()) throw ParameterError("edge subset must be non-empty");
    const int n = g.vertex_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<int> deg(n, 0);
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (f[i]) {
            parent[find(edges[i].u)] = find(edges[i].v);
            ++deg[edges[i].u];
            ++deg[edges[i].v];
        }
    std::vector<detail::ComponentInfo> info(n);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!f[i]) continue;
        auto& c = info[find(edges[i].u)];
        ++c.edges;
        c.core = c.core || w.core_edge[i];
        if (std::find(w.c4_edges.begin(), w.c4_edges.end(), static_cast<int>(i)) != w.c4_edges.end()) ++c.c4_edges;
    }
    std::vector<int> max_deg(n, 0);
    for (int v = 0; v < n; ++v) {
        if (deg[v] == 0) continue;
        auto& c = info[find(v)];
        ++c.vertices;
        max_deg[find(v)] = std::max(max_deg[find(v)], deg[v]);
    }
    if (deg[w.v8()] > 0) info[find(w.v8())].has_v8 = true;

    int core_count = 0;
    bool core_v8 = false, core_base_cycle = false, only_c4_or_acyclic = true, some_nonstar_tree = false,
         only_star_or_c4 = true, core_is_c4 = false, core_is_star = false;
    int cycle_rank = 0;
    bool c4_whole = false, c4_component_is_c4 = false;
    for (int r = 0; r < n; ++r) {
        if (find(r) != r || info[r].edges == 0) continue;
        auto& c = info[r];
        const bool acyclic = c.edges == c.vertices - 1;
        c.star = acyclic && (c.vertices <= 2 || max_deg[r] == c.vertices - 1);
        const bool is_c4 = c.c4_edges == 4 && c.edges == 4;
        cycle_rank += c.edges - c.vertices + 1;
        if (c.c4_edges == 4) {
            c4_whole = true;
            c4_component_is_c4 = is_c4;
        }
        if (!c.core) continue;
        ++core_count;
        core_v8 = core_v8 || c.has_v8;
        core_is_c4 = is_c4;
        core_is_star = c.star;
        if (!acyclic && !is_c4) only_c4_or_acyclic = false;
        if (acyclic && !c.star) some_nonstar_tree = true;
        if (!c.star && !is_c4) only_star_or_c4 = false;
    }
    // Every cycle of H_l lies in G or is the 4-cycle, and base edges are
    // core edges, so a core component holds a cycle of G iff the base edges
    // of F contain a cycle.
    {
        std::vector<int> bp(n);
        std::iota(bp.begin(), bp.end(), 0);
        auto bfind = [&](int x) {
            while (bp[x] != x) x = bp[x] = bp[bp[x]];
            return x;
        };
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (!f[i] || !w.base_edge[i]) continue;
            const int a = bfind(edges[i].u), b = bfind(edges[i].v);
            if (a == b)
                core_base_cycle = true;
            else
                bp[a] = b;
        }
    }
    const bool only_cycle_is_c4 = c4_whole && cycle_rank == 1;
    std::array<bool, 8> p{};
    p[0] = core_count == 0;
    p[1] = core_count == 1 && core_is_c4;
    p[2] = core_count == 1 && core_is_star;
    p[3] = core_v8;
    p[4] = !core_v8 && core_base_cycle;
    p[5] = !core_v8 && only_cycle_is_c4 && !c4_component_is_c4;
    p[6] = !core_v8 && core_count >= 1 && only_c4_or_acyclic && some_nonstar_tree;
    p[7] = !core_v8 && core_count >= 2 && only_star_or_c4;
    return p;
}

// The unique group label 'a'..'h' of a non-empty edge subset.
inline char classify_subset(const PathedWitness& w, const std::vector<bool>& f) {
    const auto p = group_predicates(w, f);
    int hits = 0;
    char label = '?';
    for (int i = 0; i < 8; ++i)
        if (p[i]) {
            ++hits;
            label = static_cast<char>('a' + i);
        }
    if (hits != 1) throw Error("edge subset matched " + std::to_string(hits) + " groups; classification is broken");
    return label;
}

inline char classify_subset(const PathedWitness& w, const std::vector<Edge>& f) {
    std::vector<bool> mask(w.graph.edges().size(), false);
    for (const auto& e : f) {
        const int i = w.graph.edge_index(e.u, e.v);
        if (i < 0) throw ValidationError("(" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not an edge of H_l");
        mask[i] = true;
    }
    return classify_subset(w, mask);
}

struct GroupCensus {
    std::array<std::uint64_t, 8> counts{};
    std::array<std::optional<std::vector<bool>>, 8> examples;
    std::uint64_t subsets = 0;
};

// Classifies every non-empty union of the given edge groups (each group is
// toggled as a unit), i.e. a truncation of the full subset lattice.
inline GroupCensus classify_grouped(const PathedWitness& w, const std::vector<std::vector<int>>& groups) {
    if (groups.size() > 24) throw BudgetError("at most 24 edge groups can be enumerated");
    const auto m = w.graph.edges().size();
    for (const auto& grp : groups)
        for (int e : grp)
            if (e < 0 || static_cast<std::size_t>(e) >= m) throw ValidationError("edge group names an edge out of range");
    GroupCensus c;
    std::vector<bool> mask(m);
    for (std::uint32_t s = 1; s < (1u << groups.size()); ++s) {
        std::fill(mask.begin(), mask.end(), false);
        for (std::size_t g = 0; g < groups.size(); ++g)
            if (s >> g & 1u)
                for (int e : groups[g]) mask[e] = true;
        if (std::find(mask.begin(), mask.end(), true) == mask.end()) continue;
        const int label = classify_subset(w, mask) - 'a';
        ++c.counts[label];
        ++c.subsets;
        if (!c.examples[label]) c.examples[label] = mask;
    }
    return c;
}

} // namespace graphonlab

#endif
