#ifndef GRAPHONLAB_INDEPENDENCE_HPP
#define GRAPHONLAB_INDEPENDENCE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "step_function.hpp"

namespace graphonlab {

struct IndependenceResult {
    double alpha = 0;          // |h|_1 of the witness, a lower bound on the true ratio
    BlockFunction h;           // empty (all zero) when nothing feasible was found
    int resolution_used = 0;
};

namespace detail {

inline double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Largest scale s with s*d <= mu, i.e. |h|_1 for the direction d.
inline double box_scale(const Eigen::VectorXd& mu, const Eigen::VectorXd& d) {
    double s = std::numeric_limits<double>::infinity();
    for (Eigen::Index b = 0; b < d.size(); ++b)
        if (d(b) > 0) s = std::min(s, mu(b) / d(b));
    return s;
}

} // namespace detail

// With x_b = mu_b h_b, the density of W[h] is x^T M x / (sum x)^2, so the
// constraint only sees the direction d = x / sum x. For a fixed direction the
// best h scales x up to the box x <= mu. The search runs over a simplex grid
// of directions and a grid over h (each coarsened until at most max_points),
// then a pattern search on the direction.
inline IndependenceResult independence_ratio(const StepGraphon& w, double delta, int resolution = 100,
                                             double max_points = 2e6) {
    if (!(delta > 0 && delta < 1)) throw ParameterError("delta must lie in (0,1)");
    if (resolution < 1) throw ParameterError("resolution must be positive");
    const int k = w.block_count();
    const Eigen::VectorXd& mu = w.measures();
    const Eigen::MatrixXd& m = w.values();
    auto feasible = [&](const Eigen::VectorXd& d) { return d.dot(m * d) <= delta + 1e-15; };
    int res = resolution;
    while (res > 1 && detail::binomial(res + k - 1, k - 1) > max_points) --res;
    IndependenceResult out;
    out.resolution_used = res;
    out.h = BlockFunction{Eigen::VectorXd::Zero(k)};
    Eigen::VectorXd best_d;
    double best = 0;
    Eigen::VectorXd d(k);
    auto visit = [&](auto&& self, int b, int left) -> void {
        if (b == k - 1) {
            d(b) = static_cast<double>(left) / res;
            if (feasible(d)) {
                const double s = detail::box_scale(mu, d);
                if (s > best) {
                    best = s;
                    best_d = d;
                }
            }
            return;
        }
        for (int c = 0; c <= left; ++c) {
            d(b) = static_cast<double>(c) / res;
            self(self, b + 1, left - c);
        }
    };
    visit(visit, 0, res);
    // Second grid directly over h, which catches optima the direction grid
    // rounds away when some blocks are only partly used.
    int hres = resolution;
    while (hres > 1 && std::pow(hres + 1.0, k) > max_points) --hres;
    Eigen::VectorXd x(k);
    auto visit_h = [&](auto&& self, int b) -> void {
        if (b == k) {
            const double mass = x.sum();
            if (mass <= 0) return;
            const Eigen::VectorXd dir = x / mass;
            if (!feasible(dir)) return;
            const double s = detail::box_scale(mu, dir);
            if (s > best) {
                best = s;
                best_d = dir;
            }
            return;
        }
        for (int i = 0; i <= hres; ++i) {
            x(b) = mu(b) * i / hres;
            self(self, b + 1);
        }
    };
    visit_h(visit_h, 0);
    if (best <= 0) return out;
    // Pattern search: shift mass between coordinates while feasible.
    for (double step = 1.0 / res; step > 1e-10; step *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    if (i == j || best_d(i) < step) continue;
                    Eigen::VectorXd t = best_d;
                    t(i) -= step;
                    t(j) += step;
                    if (!feasible(t)) continue;
                    const double s = detail::box_scale(mu, t);
                    if (s > best * (1 + 1e-15)) {
                        best = s;
                        best_d = t;
                        improved = true;
                    }
                }
        }
    }
    Eigen::VectorXd h(k);
    for (int b = 0; b < k; ++b) h(b) = std::min(1.0, best * best_d(b) / mu(b));
    out.h = BlockFunction{h};
    out.alpha = 0;
    for (int b = 0; b < k; ++b) out.alpha += mu(b) * h(b);
    return out;
}

} // namespace graphonlab

#endif
