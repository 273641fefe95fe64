#ifndef GRAPHONLAB_EXPANSION_HPP
#define GRAPHONLAB_EXPANSION_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "density.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "numeric.hpp"
#include "step_function.hpp"
#include "witness.hpp"

namespace graphonlab {

struct ExpansionTerm {
    std::vector<int> edges;  // indices into h.edges()
    double coefficient = 0;  // p^{|E(H)|-|F|}
    double term = 0;         // t(H<F>, U)
    std::optional<char> group;
};

struct ExpansionReport {
    double p = 0;
    std::vector<ExpansionTerm> terms;
    double total = 0;
    double direct = 0;  // t(H, W) evaluated directly
};

struct ExpansionOptions {
    int max_edges = 20;
    HomOptions hom{};
    const PathedWitness* witness = nullptr;  // when set (and h is its graph), label each F
};

// t(H, p+U) = sum over F of p^{|E(H)|-|F|} t(H<F>, U).
inline ExpansionReport subset_expansion(const Graph& h, const StepGraphon& w, const ExpansionOptions& opts = {}) {
    const int m = h.edge_count();
    if (m > opts.max_edges || m > 30)
        throw BudgetError("subset expansion over " + std::to_string(m) + " edges exceeds the limit of " +
                          std::to_string(std::min(opts.max_edges, 30)));
    if (opts.witness != nullptr && !(opts.witness->graph == h))
        throw ValidationError("witness descriptor does not describe the expanded graph");
    const auto [p, u] = deviation(w);
    ExpansionReport rep;
    rep.p = p;
    CompensatedSum<> total;
    std::vector<bool> mask(static_cast<std::size_t>(m));
    for (std::uint32_t s = 0; s < (1u << m); ++s) {
        ExpansionTerm t;
        for (int i = 0; i < m; ++i) {
            mask[i] = (s >> i & 1u) != 0;
            if (mask[i]) t.edges.push_back(i);
        }
        t.coefficient = std::pow(p, m - static_cast<int>(t.edges.size()));
        t.term = hom_density(edge_subgraph(h, mask), u, opts.hom);
        if (opts.witness != nullptr && s != 0) t.group = classify_subset(*opts.witness, mask);
        total += t.coefficient * t.term;
        rep.terms.push_back(std::move(t));
    }
    rep.total = total.value();
    rep.direct = hom_density(h, w, opts.hom);
    return rep;
}

} // namespace graphonlab

#endif
