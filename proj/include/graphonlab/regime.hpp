#ifndef GRAPHONLAB_REGIME_HPP
#define GRAPHONLAB_REGIME_HPP

#include <cmath>
#include <string>

#include "commonality.hpp"
#include "cutnorm.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "independence.hpp"
#include "inequality.hpp"
#include "step_function.hpp"
#include "witness.hpp"

namespace graphonlab {

struct RegimeParams {
    int m = 0;
    int n = 0;
    int l = 0;
    Regime regime = Regime::local;
    double gamma0 = 1e-4;   // local: t(C4,W) - p^4 at most this
    double epsilon0 = 1e-2; // nonlocal: cut norm of W - p at least this
    double delta = 0.1;     // sparse part: alpha_delta(W) >= alpha0
    double alpha0 = 0.1;
};

// An empirical probe of the conclusion inequality on a small surrogate
// target; it does not check any theorem.
struct RegimeReport {
    Regime regime = Regime::local;
    int target_vertices = 0;
    int target_edges = 0;
    double p = 0;
    double gamma = 0;
    double cut_norm = 0;
    double alpha = 0;
    bool sparse_part = false;
    bool hypothesis_held = false;
    InequalityCheck conclusion;
    std::string note;
};

inline RegimeReport theorem_regime_check(const RootedGraph& h, const StepGraphon& w, const RegimeParams& prm,
                                         const HomOptions& opts = {}) {
    const Graph target = build_target(h, prm.m, prm.n, prm.l, prm.regime);
    RegimeReport r;
    r.regime = prm.regime;
    r.target_vertices = target.vertex_count();
    r.target_edges = target.edge_count();
    const auto [p, u] = deviation(w);
    r.p = p;
    r.gamma = hom_density(cycle_graph(4), w, opts) - std::pow(p, 4);
    r.cut_norm = w.block_count() <= max_exact_cut_blocks ? cut_norm_exact(u).value : cut_norm_lower_bound(u).value;
    r.alpha = independence_ratio(w, prm.delta).alpha;
    r.sparse_part = r.alpha >= prm.alpha0;
    switch (prm.regime) {
    case Regime::local:
        r.hypothesis_held = r.gamma <= prm.gamma0;
        r.conclusion = check_leq("conclusion", std::pow(p, r.target_edges), hom_density(target, w, opts));
        break;
    case Regime::nonlocal:
        r.hypothesis_held = r.cut_norm >= prm.epsilon0 && !r.sparse_part;
        r.conclusion = check_leq("conclusion", std::pow(p, r.target_edges), hom_density(target, w, opts));
        break;
    case Regime::kcommon: {
        r.hypothesis_held = true;
        const auto c = commonality_value(target, w, opts);
        r.conclusion = check_leq("conclusion", c.threshold, c.value);
        break;
    }
    }
    r.note = "empirical probe of the conclusion on a desk-scale surrogate; not a theorem check";
    if (r.sparse_part) r.note += "; sparse part present, hypothesis void";
    return r;
}

} // namespace graphonlab

#endif
