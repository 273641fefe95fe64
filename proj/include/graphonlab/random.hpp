#ifndef GRAPHONLAB_RANDOM_HPP
#define GRAPHONLAB_RANDOM_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

#include "graph.hpp"
#include "graph_algorithms.hpp"
#include "numeric.hpp"
#include "step_function.hpp"

namespace graphonlab {

// Dirichlet measures (floored at 1e-3), uniform symmetric values.
inline StepGraphon random_graphon(Rng& rng, int k) {
    const auto mu = rng.dirichlet(k, 1e-3);
    Eigen::VectorXd m(k);
    for (int i = 0; i < k; ++i) m(i) = mu[i];
    Eigen::MatrixXd v(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) v(a, b) = v(b, a) = rng.uniform();
    return {m, v};
}

inline StepGraphon random_graphon(Rng& rng, int kmin, int kmax) { return random_graphon(rng, rng.integer(kmin, kmax)); }

// Deviation of a random graphon: density zero, sup norm at most one.
inline StepKernel random_kernel(Rng& rng, int k) { return deviation(random_graphon(rng, k)).u; }

inline Graph random_graph(Rng& rng, int n, double p) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.coin(p)) e.push_back({i, j});
    return Graph(n, e);
}

// Uniform labelled tree via a Pruefer sequence.
inline Graph random_tree(Rng& rng, int n) {
    if (n <= 1) return Graph(n, {});
    if (n == 2) return Graph(2, {{0, 1}});
    std::vector<int> seq(static_cast<std::size_t>(n - 2));
    for (auto& s : seq) s = rng.integer(0, n - 1);
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (int s : seq) ++deg[s];
    std::vector<Edge> e;
    for (int s : seq) {
        int leaf = 0;
        while (deg[leaf] != 1) ++leaf;
        e.push_back(make_edge(leaf, s));
        --deg[leaf];
        --deg[s];
    }
    int a = -1, b = -1;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) (a < 0 ? a : b) = v;
    e.push_back(make_edge(a, b));
    return Graph(n, e);
}

// Random connected graph, rejection sampled.
inline Graph random_connected_graph(Rng& rng, int n, double p) {
    for (;;) {
        Graph g = random_graph(rng, n, p);
        if (is_connected(g)) return g;
    }
}

// Random bipartite graph on parts of sizes a and b.
inline Graph random_bipartite(Rng& rng, int a, int b, double p) {
    std::vector<Edge> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            if (rng.coin(p)) e.push_back({i, a + j});
    return Graph(a + b, e);
}

} // namespace graphonlab

#endif
