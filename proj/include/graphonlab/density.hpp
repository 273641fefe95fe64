#ifndef GRAPHONLAB_DENSITY_HPP
#define GRAPHONLAB_DENSITY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "factor_network.hpp"
#include "graph.hpp"
#include "numeric.hpp"
#include "step_function.hpp"

namespace graphonlab {

struct HomOptions {
    Method method = Method::automatic;
    double budget = budget_from_env();
};

// Which blocks a vertex may use and with what weight.
struct VertexDomain {
    std::vector<int> blocks;
    std::vector<double> weights;
};

inline VertexDomain full_domain(const Eigen::VectorXd& mu) {
    VertexDomain d;
    for (Eigen::Index b = 0; b < mu.size(); ++b) {
        d.blocks.push_back(static_cast<int>(b));
        d.weights.push_back(mu(b));
    }
    return d;
}

inline std::vector<VertexDomain> full_domains(const Graph& h, const Eigen::VectorXd& mu) {
    return std::vector<VertexDomain>(static_cast<std::size_t>(h.vertex_count()), full_domain(mu));
}

// One variable per vertex of h, one factor per edge.
template <class Real = double>
FactorNetwork<Real> graph_network(const Graph& h, const Eigen::MatrixXd& values, const std::vector<VertexDomain>& dom) {
    if (static_cast<int>(dom.size()) != h.vertex_count()) throw ParameterError("one domain per vertex required");
    std::vector<std::vector<double>> w;
    for (const auto& d : dom) {
        if (d.blocks.size() != d.weights.size()) throw ParameterError("domain blocks and weights differ in length");
        for (int b : d.blocks)
            if (b < 0 || b >= values.rows()) throw ParameterError("domain names a block out of range");
        w.push_back(d.weights);
    }
    FactorNetwork<Real> net(std::move(w));
    for (const auto& e : h.edges()) {
        const auto& du = dom[e.u];
        const auto& dv = dom[e.v];
        std::vector<Real> t;
        t.reserve(du.blocks.size() * dv.blocks.size());
        for (int a : du.blocks)
            for (int b : dv.blocks) t.push_back(static_cast<Real>(values(a, b)));
        net.add_factor({e.u, e.v}, std::move(t));
    }
    return net;
}

// Tensor over root-block assignments, row-major, last root fastest.
struct RootedTensor {
    std::vector<int> dims;
    std::vector<double> values;

    double at(const std::vector<int>& idx) const {
        std::size_t off = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) off = off * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(idx[i]);
        return values.at(off);
    }
};

// t(H,W) as a sum over block assignments of vertex measures times edge values.
template <class Real = double>
Real hom_density_as(const Graph& h, const StepKernel& w, const HomOptions& opts = {}) {
    return graph_network<Real>(h, w.values(), full_domains(h, w.measures())).contract_scalar(opts.method, opts.budget);
}

inline double hom_density(const Graph& h, const StepKernel& w, const HomOptions& opts = {}) {
    return hom_density_as<double>(h, w, opts);
}

// Compensated pass in extended precision, used to re-verify search results.
inline double hom_density_extended(const Graph& h, const StepKernel& w, const HomOptions& opts = {}) {
    return static_cast<double>(hom_density_as<long double>(h, w, opts));
}

// t_{x_1..x_r}(H, W) per root block assignment; root measures are not applied.
inline RootedTensor rooted_density(const RootedGraph& h, const StepKernel& w, const HomOptions& opts = {}) {
    auto net = graph_network<double>(h.graph(), w.values(), full_domains(h.graph(), w.measures()));
    RootedTensor t;
    t.dims.assign(static_cast<std::size_t>(h.root_count()), w.block_count());
    t.values = net.contract(h.roots(), opts.method, opts.budget);
    return t;
}

// Contract a rooted tensor against the block measures on every root.
inline double contract_roots(const RootedTensor& t, const Eigen::VectorXd& mu) {
    CompensatedSum<> s;
    std::vector<int> idx(t.dims.size(), 0);
    for (double v : t.values) {
        double wgt = v;
        for (int i : idx) wgt *= mu(i);
        s += wgt;
        for (auto j = idx.size(); j-- > 0;) {
            if (++idx[j] < t.dims[j]) break;
            idx[j] = 0;
        }
    }
    return s.value();
}

// Sum over blocks of mu * t(G.) * t(H.), single-root case of the merge identity.
inline double merge_contract(const RootedTensor& g, const RootedTensor& h, const Eigen::VectorXd& mu) {
    if (g.dims != h.dims) throw ValidationError("rooted tensors have different shapes");
    RootedTensor prod = g;
    for (std::size_t i = 0; i < prod.values.size(); ++i) prod.values[i] *= h.values[i];
    return contract_roots(prod, mu);
}

// Step graphon of a finite graph: one block per vertex, adjacency values.
inline StepGraphon graph_as_graphon(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 1) throw ParameterError("host graph needs at least one vertex");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = 1.0;
    return StepGraphon::uniform(a);
}

// hom(H,G) / |G|^{|H|}.
inline double hom_density_graph(const Graph& h, const Graph& g, const HomOptions& opts = {}) {
    return hom_density(h, graph_as_graphon(g), opts);
}

// Integral of prod_v h(x_v) prod_uv W(x_u,x_v); dividing by |h|_1^{|H|}
// gives t(H, W[h]).
inline double weighted_density(const Graph& h, const StepKernel& w, const BlockFunction& weight, const HomOptions& opts = {}) {
    if (weight.block_count() != w.block_count()) throw ValidationError("weight function size mismatch");
    VertexDomain d;
    for (int b = 0; b < w.block_count(); ++b) {
        d.blocks.push_back(b);
        d.weights.push_back(w.measure(b) * weight.values(b));
    }
    const std::vector<VertexDomain> dom(static_cast<std::size_t>(h.vertex_count()), d);
    return graph_network<double>(h, w.values(), dom).contract_scalar(opts.method, opts.budget);
}

} // namespace graphonlab

#endif
