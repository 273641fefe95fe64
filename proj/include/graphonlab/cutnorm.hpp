#ifndef GRAPHONLAB_CUTNORM_HPP
#define GRAPHONLAB_CUTNORM_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "density.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "inequality.hpp"
#include "numeric.hpp"
#include "step_function.hpp"

namespace graphonlab {

inline constexpr int max_exact_cut_blocks = 24;

struct CutWitness {
    double value = 0;
    std::vector<int> s_blocks;
    std::vector<int> t_blocks;
    bool exact = true;  // false for the greedy lower bound
};

// |sum_{a in S, b in T} mu_a mu_b U_ab|.
inline double cut_value(const StepKernel& u, const std::vector<int>& s, const std::vector<int>& t) {
    CompensatedSum<> acc;
    for (int a : s)
        for (int b : t) acc += u.measure(a) * u.measure(b) * u.value(a, b);
    return std::abs(acc.value());
}

namespace detail {

inline std::vector<int> mask_blocks(std::uint32_t mask, int k) {
    std::vector<int> out;
    for (int b = 0; b < k; ++b)
        if (mask >> b & 1u) out.push_back(b);
    return out;
}

// Best T for fixed row sums r: all blocks whose row sum has the wanted sign
// (zeros included), for the +sum and the -sum objective.
struct SideChoice {
    double value;
    std::uint32_t t_mask;
};

inline SideChoice best_side(const std::vector<double>& r, const Eigen::VectorXd& mu) {
    double pos = 0, neg = 0;
    std::uint32_t tp = 0, tn = 0;
    for (std::size_t b = 0; b < r.size(); ++b) {
        if (r[b] >= 0) {
            pos += mu(b) * r[b];
            tp |= 1u << b;
        }
        if (r[b] <= 0) {
            neg -= mu(b) * r[b];
            tn |= 1u << b;
        }
    }
    return pos >= neg ? SideChoice{pos, tp} : SideChoice{neg, tn};
}

} // namespace detail

// Exact cut norm of a step kernel. The objective is bilinear in the block
// occupancies of S and T, so some optimum uses whole blocks; S runs over all
// block subsets in Gray-code order with incremental row sums, and T is read
// off from the signs of the row sums. Ties go to the smallest S mask.
inline CutWitness cut_norm_exact(const StepKernel& u) {
    const int k = u.block_count();
    if (k > max_exact_cut_blocks)
        throw BudgetError("exact cut norm limited to " + std::to_string(max_exact_cut_blocks) + " blocks, got " +
                          std::to_string(k) + "; use cut_norm_lower_bound for a greedy lower bound");
    const auto& mu = u.measures();
    std::vector<double> r(static_cast<std::size_t>(k), 0.0);
    double best = 0;
    std::uint32_t best_s = 0, best_t = 0;
    std::uint32_t gray = 0;
    const std::uint32_t total = 1u << k;
    for (std::uint32_t i = 1; i < total; ++i) {
        const int flip = std::countr_zero(i);
        gray ^= 1u << flip;
        if ((i & 1023u) == 0) {
            // Refresh to keep rounding drift bounded.
            std::fill(r.begin(), r.end(), 0.0);
            for (int a = 0; a < k; ++a)
                if (gray >> a & 1u)
                    for (int b = 0; b < k; ++b) r[b] += mu(a) * u.value(a, b);
        } else {
            const double sign = (gray >> flip & 1u) ? 1.0 : -1.0;
            for (int b = 0; b < k; ++b) r[b] += sign * mu(flip) * u.value(flip, b);
        }
        const auto side = detail::best_side(r, mu);
        if (side.value > best || (side.value == best && gray < best_s && best > 0)) {
            best = side.value;
            best_s = gray;
            best_t = side.t_mask;
        }
    }
    CutWitness w;
    w.s_blocks = detail::mask_blocks(best_s, k);
    w.t_blocks = detail::mask_blocks(best_t, k);
    w.value = best > 0 ? cut_value(u, w.s_blocks, w.t_blocks) : 0.0;
    return w;
}

// Alternating best responses from every singleton S; a lower bound only.
inline CutWitness cut_norm_lower_bound(const StepKernel& u) {
    const int k = u.block_count();
    const auto& mu = u.measures();
    CutWitness best;
    best.exact = false;
    for (int start = 0; start < k; ++start)
        for (double sign : {1.0, -1.0}) {
            std::vector<bool> s(static_cast<std::size_t>(k), false), t(static_cast<std::size_t>(k), false);
            s[start] = true;
            double value = -1;
            for (int round = 0; round < 100; ++round) {
                // T given S, then S given T, both for the signed objective.
                for (int b = 0; b < k; ++b) {
                    double r = 0;
                    for (int a = 0; a < k; ++a)
                        if (s[a]) r += mu(a) * u.value(a, b);
                    t[b] = sign * r >= 0;
                }
                for (int a = 0; a < k; ++a) {
                    double r = 0;
                    for (int b = 0; b < k; ++b)
                        if (t[b]) r += mu(b) * u.value(a, b);
                    s[a] = sign * r >= 0;
                }
                std::vector<int> sv, tv;
                for (int b = 0; b < k; ++b) {
                    if (s[b]) sv.push_back(b);
                    if (t[b]) tv.push_back(b);
                }
                const double v = cut_value(u, sv, tv);
                if (v <= value) break;
                value = v;
                if (v > best.value) {
                    best.value = v;
                    best.s_blocks = sv;
                    best.t_blocks = tv;
                }
            }
        }
    return best;
}

namespace detail {
inline void require_unit_sup(const StepKernel& u) {
    if (u.sup_norm() > 1.0 + 1e-12) throw ParameterError("kernel sup norm exceeds 1");
}
} // namespace detail

// |U|^4 <= t(C4,U) <= 4|U|, t(P2,U) <= 2|U|, and also t(P3,U) <= 2|U|.
inline std::vector<InequalityCheck> sandwich_check(const StepKernel& u, const HomOptions& opts = {}) {
    detail::require_unit_sup(u);
    const double c = cut_norm_exact(u).value;
    const double c4 = hom_density(cycle_graph(4), u, opts);
    return {check_leq("c4_lower", std::pow(c, 4), c4), check_leq("c4_upper", c4, 4 * c),
            check_leq("p2_upper", hom_density(path_graph(2), u, opts), 2 * c),
            check_leq("p3_upper", hom_density(path_graph(3), u, opts), 2 * c)};
}

// p^4 + |W - p|^4 / 8 <= t(C4, W).
inline InequalityCheck c4_deviation_bound(const StepGraphon& w, const HomOptions& opts = {}) {
    const auto [p, u] = deviation(w);
    const double c = cut_norm_exact(u).value;
    return check_leq("c4_deviation", std::pow(p, 4) + std::pow(c, 4) / 8, hom_density(cycle_graph(4), w, opts));
}

// |t(H,W1) - t(H,W2)| <= |E(H)| |W1 - W2|, on the common refinement when
// the block structures differ.
inline InequalityCheck counting_lemma_bound(const Graph& h, const StepKernel& w1, const StepKernel& w2,
                                            const HomOptions& opts = {}) {
    const auto [a, b] = same_blocks(w1, w2) ? std::pair<StepKernel, StepKernel>(w1, w2) : common_refinement(w1, w2);
    const auto [diff, scale] = kernel_difference(a, b);
    const double c = scale * cut_norm_exact(diff).value;
    return check_leq("counting_lemma", std::abs(hom_density(h, a, opts) - hom_density(h, b, opts)), h.edge_count() * c);
}

} // namespace graphonlab

#endif
