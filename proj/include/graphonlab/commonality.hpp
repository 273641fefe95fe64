#ifndef GRAPHONLAB_COMMONALITY_HPP
#define GRAPHONLAB_COMMONALITY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "density.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "step_function.hpp"

namespace graphonlab {

struct CommonalityValue {
    double value = 0;
    double threshold = 0;
    double margin = 0;  // value - threshold
};

// k^{1 - |E(H)|}
inline double common_threshold(const Graph& h, int k) { return std::pow(static_cast<double>(k), 1.0 - h.edge_count()); }

// t(H,W) + t(H,1-W) against 2^{1-|E(H)|}.
inline CommonalityValue commonality_value(const Graph& h, const StepGraphon& w, const HomOptions& opts = {}) {
    const double v = hom_density(h, w, opts) + hom_density(h, complement(w), opts);
    const double th = common_threshold(h, 2);
    return {v, th, v - th};
}

inline CommonalityValue k_common_value(const Graph& h, const std::vector<StepGraphon>& ws, const HomOptions& opts = {}) {
    if (!validate_coloring(ws)) throw ValidationError("colouring does not sum to 1 blockwise");
    CompensatedSum<> s;
    for (const auto& w : ws) s += hom_density(h, w, opts);
    const double th = common_threshold(h, static_cast<int>(ws.size()));
    return {s.value(), th, s.value() - th};
}

// Partial derivatives of t(H,.) in the block values, one variable per
// unordered pair {a,b}: for a != b both M(a,b) and M(b,a) move together.
inline Eigen::MatrixXd gradient(const Graph& h, const StepKernel& w, const HomOptions& opts = {}) {
    const int k = w.block_count();
    const auto& mu = w.measures();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < h.edge_count(); ++i) {
        const Edge e = h.edges()[static_cast<std::size_t>(i)];
        const RootedTensor t = rooted_density(RootedGraph(remove_edge(h, i), {e.u, e.v}), w, opts);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) g(a, b) += mu(a) * mu(b) * t.at({a, b});
    }
    // g(a,b) covers x_u = a, x_v = b; the pair variable also gets the reverse.
    Eigen::MatrixXd out(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) out(a, b) = a == b ? g(a, a) : g(a, b) + g(b, a);
    return out;
}

} // namespace graphonlab

#endif
