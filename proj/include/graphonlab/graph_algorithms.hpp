#ifndef GRAPHONLAB_GRAPH_ALGORITHMS_HPP
#define GRAPHONLAB_GRAPH_ALGORITHMS_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "numeric.hpp"

namespace graphonlab {

inline constexpr int infinite_girth = std::numeric_limits<int>::max();

namespace detail {

// Shortest cycle through BFS trees; returns its vertices (empty for forests).
inline std::vector<int> shortest_cycle(const Graph& g, const std::vector<bool>* alive = nullptr) {
    const int n = g.vertex_count();
    auto ok = [&](int v) { return alive == nullptr || (*alive)[v]; };
    int best = infinite_girth;
    std::vector<int> cycle;
    std::vector<int> dist(n), parent(n);
    for (int s = 0; s < n; ++s) {
        if (!ok(s)) continue;
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        parent[s] = -1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            if (2 * dist[x] + 1 >= best) break;
            for (int y : g.neighbors(x)) {
                if (!ok(y)) continue;
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push(y);
                } else if (y != parent[x]) {
                    const int len = dist[x] + dist[y] + 1;
                    if (len < best) {
                        best = len;
                        std::vector<int> left, right;
                        for (int a = x; a != -1; a = parent[a]) left.push_back(a);
                        for (int b = y; b != -1; b = parent[b]) right.push_back(b);
                        // Both walks end at s; trim the shared tail.
                        while (left.size() > 1 && right.size() > 1 && left[left.size() - 2] == right[right.size() - 2]) {
                            left.pop_back();
                            right.pop_back();
                        }
                        cycle = left;
                        for (auto it = right.rbegin() + 1; it != right.rend(); ++it) cycle.push_back(*it);
                    }
                }
            }
        }
    }
    return cycle;
}

} // namespace detail

inline int girth(const Graph& g) {
    const auto c = detail::shortest_cycle(g);
    return c.empty() ? infinite_girth : static_cast<int>(c.size());
}

// Component id per vertex, numbered by smallest member.
inline std::vector<int> component_labels(const Graph& g) {
    std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), -1);
    int next = 0;
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (label[s] >= 0) continue;
        std::vector<int> stack{s};
        label[s] = next;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : g.neighbors(x))
                if (label[y] < 0) {
                    label[y] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    return label;
}

inline bool is_connected(const Graph& g) {
    const auto l = component_labels(g);
    return std::all_of(l.begin(), l.end(), [](int c) { return c == 0; });
}

// Two-colouring if one exists.
inline std::optional<std::vector<int>> bipartition(const Graph& g) {
    std::vector<int> side(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : g.neighbors(x)) {
                if (side[y] < 0) {
                    side[y] = 1 - side[x];
                    stack.push_back(y);
                } else if (side[y] == side[x]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

inline bool is_bipartite(const Graph& g) { return bipartition(g).has_value(); }

inline bool is_forest(const Graph& g) {
    const auto l = component_labels(g);
    const int comps = l.empty() ? 0 : *std::max_element(l.begin(), l.end()) + 1;
    return g.edge_count() == g.vertex_count() - comps;
}

inline bool is_tree(const Graph& g) { return g.vertex_count() >= 1 && is_connected(g) && is_forest(g); }

// Trees with a vertex adjacent to all others (K_1 and K_2 count as stars).
inline bool is_star(const Graph& g) {
    if (!is_tree(g)) return false;
    const int n = g.vertex_count();
    if (n <= 2) return true;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == n - 1) return true;
    return false;
}

inline bool is_cycle(const Graph& g) {
    if (g.vertex_count() < 3 || !is_connected(g)) return false;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) != 2) return false;
    return true;
}

inline bool is_complete_bipartite(const Graph& g) {
    const auto side = bipartition(g);
    if (!side || !is_connected(g) || g.vertex_count() < 2) return false;
    const auto a = std::count(side->begin(), side->end(), 0);
    const auto b = static_cast<long>(side->size()) - a;
    return g.edge_count() == a * b;
}

inline int min_degree(const Graph& g) {
    int m = infinite_girth;
    for (int v = 0; v < g.vertex_count(); ++v) m = std::min(m, g.degree(v));
    return g.vertex_count() == 0 ? 0 : m;
}

inline int count_degree(const Graph& g, int d) {
    int c = 0;
    for (int v = 0; v < g.vertex_count(); ++v) c += g.degree(v) == d;
    return c;
}

struct ChromaticOptions {
    int max_vertices = 40;
    double max_nodes = 5e7;
};

namespace detail {

class Dsatur {
public:
    Dsatur(const Graph& g, double max_nodes) : g_(g), n_(g.vertex_count()), max_nodes_(max_nodes) {}

    int solve() {
        if (n_ == 0) return 0;
        const int lower = greedy_clique();
        best_ = greedy_upper();
        if (best_ == lower) return best_;
        color_.assign(n_, -1);
        forbidden_.assign(n_, std::vector<int>(n_ + 1, 0));
        search(0, 0, lower);
        return best_;
    }

private:
    int greedy_clique() const {
        int best = 1;
        for (int s = 0; s < n_; ++s) {
            std::vector<int> clique{s};
            std::vector<int> cand = g_.neighbors(s);
            std::sort(cand.begin(), cand.end(), [&](int a, int b) { return g_.degree(a) > g_.degree(b); });
            for (int c : cand) {
                bool all = true;
                for (int m : clique) all = all && g_.has_edge(c, m);
                if (all) clique.push_back(c);
            }
            best = std::max(best, static_cast<int>(clique.size()));
        }
        return best;
    }

    int greedy_upper() const {
        std::vector<int> order(n_), color(n_, -1);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g_.degree(a) > g_.degree(b); });
        int used = 0;
        for (int v : order) {
            std::vector<bool> taken(n_ + 1, false);
            for (int u : g_.neighbors(v))
                if (color[u] >= 0) taken[color[u]] = true;
            int c = 0;
            while (taken[c]) ++c;
            color[v] = c;
            used = std::max(used, c + 1);
        }
        return used;
    }

    int saturation(int v) const {
        int s = 0;
        for (int c = 0; c < n_; ++c) s += forbidden_[v][c] > 0;
        return s;
    }

    void assign(int v, int c, int delta) {
        for (int u : g_.neighbors(v)) forbidden_[u][c] += delta;
    }

    void search(int colored, int used, int lower) {
        if (++nodes_ > max_nodes_)
            throw BudgetError("chromatic number search exceeded " + std::to_string(static_cast<long long>(max_nodes_)) +
                              " nodes; graph too large for exact computation");
        if (colored == n_) {
            best_ = used;
            return;
        }
        int pick = -1, pick_sat = -1, pick_deg = -1;
        for (int v = 0; v < n_; ++v) {
            if (color_[v] >= 0) continue;
            const int s = saturation(v);
            const int d = g_.degree(v);
            if (s > pick_sat || (s == pick_sat && d > pick_deg)) {
                pick = v;
                pick_sat = s;
                pick_deg = d;
            }
        }
        for (int c = 0; c <= used && c + 1 < best_; ++c) {
            if (forbidden_[pick][c] > 0) continue;
            color_[pick] = c;
            assign(pick, c, 1);
            search(colored + 1, std::max(used, c + 1), lower);
            assign(pick, c, -1);
            color_[pick] = -1;
            if (best_ == lower) return;
        }
    }

    const Graph& g_;
    int n_;
    double max_nodes_;
    double nodes_ = 0;
    int best_ = 0;
    std::vector<int> color_;
    std::vector<std::vector<int>> forbidden_;
};

} // namespace detail

// Exact chromatic number by DSATUR branch and bound.
inline int chromatic_number(const Graph& g, const ChromaticOptions& opts = {}) {
    if (g.vertex_count() > opts.max_vertices)
        throw BudgetError("graph has " + std::to_string(g.vertex_count()) + " vertices, exact chromatic number limited to " +
                          std::to_string(opts.max_vertices));
    return detail::Dsatur(g, opts.max_nodes).solve();
}

// Exact independence number by branch and bound on the complement's cliques.
inline int independence_number(const Graph& g, double max_nodes = 5e7) {
    const int n = g.vertex_count();
    double nodes = 0;
    int best = 0;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto rec = [&](auto&& self, std::vector<int> cand, int size) -> void {
        if (++nodes > max_nodes) throw BudgetError("independence number search exceeded its node budget");
        if (cand.empty()) {
            best = std::max(best, size);
            return;
        }
        if (size + static_cast<int>(cand.size()) <= best) return;
        // Branch on a minimum-degree candidate: take it, or drop it.
        auto it = std::min_element(cand.begin(), cand.end(), [&](int a, int b) {
            int da = 0, db = 0;
            for (int c : cand) {
                da += g.has_edge(a, c);
                db += g.has_edge(b, c);
            }
            return da < db;
        });
        const int v = *it;
        std::vector<int> take;
        for (int c : cand)
            if (c != v && !g.has_edge(v, c)) take.push_back(c);
        self(self, take, size + 1);
        bool has_neighbor = false;
        for (int c : cand) has_neighbor = has_neighbor || g.has_edge(v, c);
        if (!has_neighbor) return;  // v is simplicial here, taking it is optimal
        std::vector<int> drop;
        for (int c : cand)
            if (c != v) drop.push_back(c);
        self(self, drop, size);
    };
    rec(rec, order, 0);
    return best;
}

// Maximal matching size, greedy.
inline int greedy_matching(const Graph& g) {
    std::vector<bool> used(static_cast<std::size_t>(g.vertex_count()), false);
    int m = 0;
    for (const auto& e : g.edges())
        if (!used[e.u] && !used[e.v]) {
            used[e.u] = used[e.v] = true;
            ++m;
        }
    return m;
}

struct HighGirthReport {
    Graph graph;
    int sampled_vertices = 0;
    double edge_probability = 0;
    int removed_vertices = 0;
    int girth = infinite_girth;
    int alpha_bound = 0;       // upper bound on the independence number
    bool alpha_exact = false;  // alpha_bound is the exact value
    int chromatic_lower_bound = 0;
};

// Erdos-style sampler: G(n, n^{1/(g-1)-1}), then delete one vertex from each
// cycle shorter than g. Vertices are relabelled compactly.
inline HighGirthReport random_high_girth(int n, int g, std::uint64_t seed) {
    if (g < 3) throw ParameterError("girth target must be at least 3");
    if (n < 0) throw ParameterError("vertex count must be non-negative");
    HighGirthReport rep;
    rep.sampled_vertices = n;
    rep.edge_probability = n > 0 ? std::min(1.0, std::pow(static_cast<double>(n), 1.0 / (g - 1) - 1.0)) : 0.0;
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.coin(rep.edge_probability)) edges.push_back({i, j});
    const Graph sampled(n, edges);
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    for (;;) {
        const auto c = detail::shortest_cycle(sampled, &alive);
        if (c.empty() || static_cast<int>(c.size()) >= g) break;
        alive[*std::min_element(c.begin(), c.end())] = false;
        ++rep.removed_vertices;
    }
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    int m = 0;
    for (int v = 0; v < n; ++v)
        if (alive[v]) index[v] = m++;
    std::vector<Edge> kept;
    for (const auto& e : sampled.edges())
        if (alive[e.u] && alive[e.v]) kept.push_back({index[e.u], index[e.v]});
    rep.graph = Graph(m, kept);
    rep.girth = girth(rep.graph);
    try {
        if (m > 80) throw BudgetError("large");
        rep.alpha_bound = independence_number(rep.graph, 2e6);
        rep.alpha_exact = true;
    } catch (const BudgetError&) {
        rep.alpha_bound = m - greedy_matching(rep.graph);
        rep.alpha_exact = false;
    }
    rep.chromatic_lower_bound = rep.alpha_bound > 0 ? (m + rep.alpha_bound - 1) / rep.alpha_bound : 0;
    return rep;
}

struct LocalDensityReport {
    bool dense = true;
    bool exact = true;
    std::vector<int> witness;       // violating subset, or the sparsest subset seen
    double witness_density = 1.0;
    std::uint64_t subsets_checked = 0;
    double confidence = 1.0;        // sampled mode: 1 - (1 - q)^samples style bound, see README
};

// Edge density of G[S] as e(S) / C(|S|,2).
inline double induced_density(const Graph& g, const std::vector<int>& s) {
    if (s.size() < 2) return 1.0;
    int e = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) e += g.has_edge(s[i], s[j]);
    return e / (0.5 * static_cast<double>(s.size()) * static_cast<double>(s.size() - 1));
}

// (rho, d)-density: every vertex subset of size >= rho|G| (and >= 2) induces
// density >= d. Exact for |G| <= 25, otherwise random subsets.
inline LocalDensityReport is_locally_dense(const Graph& g, double rho, double d, std::uint64_t seed = 0,
                                           int samples = 20000) {
    if (!(rho > 0 && rho <= 1)) throw ParameterError("rho must lie in (0,1]");
    const int n = g.vertex_count();
    const int min_size = std::max(2, static_cast<int>(std::ceil(rho * n - 1e-12)));
    LocalDensityReport rep;
    if (min_size > n) return rep;
    auto consider = [&](const std::vector<int>& s) {
        ++rep.subsets_checked;
        const double dens = induced_density(g, s);
        if (dens < rep.witness_density || rep.witness.empty()) {
            rep.witness_density = dens;
            rep.witness = s;
        }
    };
    if (n <= 25) {
        std::vector<int> s;
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            if (std::popcount(mask) < min_size) continue;
            s.clear();
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1u) s.push_back(v);
            consider(s);
        }
    } else {
        rep.exact = false;
        Rng rng(seed);
        std::vector<int> perm(n);
        for (int i = 0; i < samples; ++i) {
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm.begin(), perm.end());
            const int size = rng.integer(min_size, n);
            std::vector<int> s(perm.begin(), perm.begin() + size);
            std::sort(s.begin(), s.end());
            consider(s);
        }
        // Probability that a violating set occupying a 1e-3 fraction of the
        // sample space would have been missed.
        rep.confidence = 1.0 - std::pow(1.0 - 1e-3, samples);
    }
    rep.dense = rep.witness_density >= d;
    return rep;
}

} // namespace graphonlab

#endif
