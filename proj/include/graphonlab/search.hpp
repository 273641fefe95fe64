#ifndef GRAPHONLAB_SEARCH_HPP
#define GRAPHONLAB_SEARCH_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "commonality.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "numeric.hpp"
#include "step_function.hpp"

namespace graphonlab {

enum class Symmetry { none, cayley };
enum class Update { projected, exponentiated };

inline std::string to_string(Symmetry s) { return s == Symmetry::none ? "none" : "cayley"; }
inline std::string to_string(Update u) { return u == Update::projected ? "projected" : "exponentiated"; }

inline Symmetry parse_symmetry(const std::string& s) {
    if (s == "none") return Symmetry::none;
    if (s == "cayley") return Symmetry::cayley;
    throw ParameterError("unknown symmetry '" + s + "' (expected none or cayley)");
}

inline Update parse_update(const std::string& s) {
    if (s == "projected") return Update::projected;
    if (s == "exponentiated") return Update::exponentiated;
    throw ParameterError("unknown update '" + s + "' (expected projected or exponentiated)");
}

inline constexpr double counterexample_tolerance = 1e-8;

// With symmetry = cayley the blocks are the elements of F_2^d (blocks = 2^d,
// uniform measures) and every colour class is W_i(a,b) = s_i(a xor b).
struct SearchOptions {
    int colors = 2;
    int blocks = 3;
    std::uint64_t seed = 0;
    int restarts = 20;
    int iters = 2000;
    double step = 0.05;
    Symmetry symmetry = Symmetry::none;
    Update update = Update::projected;
    double saturation = 1e-3;  // start values of saturated initial tuples
    int threads = 1;
    HomOptions hom;
};

struct SearchState {
    int k = 0;
    std::vector<StepGraphon> coloring;
    Graph target;
    double value = 0;
    double threshold = 0;
    double margin = 0;
    std::vector<Eigen::MatrixXd> gradient;  // per colour, pair-variable derivative
    std::uint64_t seed = 0;
    int restart = 0;
    int iteration = 0;
    double step = 0;
    bool converged = false;
    double verified_value = 0;  // extended precision re-evaluation
    double verified_margin = 0;
    bool counterexample_found = false;
};

namespace detail {

// Euclidean projection onto the probability simplex (sort based).
inline Eigen::VectorXd project_simplex(const Eigen::VectorXd& y) {
    const auto n = y.size();
    std::vector<double> s(y.data(), y.data() + n);
    std::sort(s.begin(), s.end(), std::greater<>());
    double cum = 0, theta = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        cum += s[static_cast<std::size_t>(i)];
        const double t = (cum - 1) / static_cast<double>(i + 1);
        if (s[static_cast<std::size_t>(i)] - t > 0) theta = t;
    }
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = std::clamp(y(i) - theta, 0.0, 1.0);
    return x;
}

inline Eigen::VectorXd exponentiated_step(const Eigen::VectorXd& x, const Eigen::VectorXd& g, double step) {
    const double shift = g.minCoeff();
    Eigen::VectorXd z(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) z(i) = x(i) * std::exp(-step * (g(i) - shift));
    const double s = z.sum();
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = std::clamp(z(i) / s, 0.0, 1.0);
    return z;
}

// Search variables: x(j, i) is colour i on variable j (a block pair, or a
// group element under cayley symmetry). Rows lie on the simplex.
class Landscape {
public:
    Landscape(const Graph& h, const SearchOptions& o) : h_(h), o_(o) {
        if (o.colors < 2) throw ParameterError("need at least two colours");
        if (o.blocks < 1) throw ParameterError("need at least one block");
        if (h.vertex_count() < 1) throw ParameterError("target graph needs a vertex");
        if (o.symmetry == Symmetry::cayley) {
            if (o.blocks < 2 || (o.blocks & (o.blocks - 1)) != 0)
                throw ParameterError("cayley symmetry needs a power-of-two block count, got " + std::to_string(o.blocks));
            vars_ = o.blocks;
        } else {
            vars_ = o.blocks * (o.blocks + 1) / 2;
            for (int a = 0; a < o.blocks; ++a)
                for (int b = a; b < o.blocks; ++b) pairs_.push_back({a, b});
        }
        threshold_ = common_threshold(h, o.colors);
    }

    int variables() const noexcept { return vars_; }
    double threshold() const noexcept { return threshold_; }

    Eigen::MatrixXd matrix(const Eigen::MatrixXd& x, int color) const {
        const int n = o_.blocks;
        Eigen::MatrixXd m(n, n);
        if (o_.symmetry == Symmetry::cayley) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) m(a, b) = x(a ^ b, color);
        } else {
            for (int j = 0; j < vars_; ++j) {
                const auto [a, b] = pairs_[static_cast<std::size_t>(j)];
                m(a, b) = m(b, a) = x(j, color);
            }
        }
        return m;
    }

    std::vector<StepGraphon> coloring(const Eigen::MatrixXd& x, const Eigen::VectorXd& mu) const {
        std::vector<StepGraphon> ws;
        for (int i = 0; i < o_.colors; ++i) ws.emplace_back(mu, matrix(x, i));
        return ws;
    }

    // Objective sum_i t(H,W_i) and the search direction: the derivative per
    // variable divided by the mass of the block pairs it controls, scaled by
    // 1/threshold.
    double evaluate(const Eigen::MatrixXd& x, const Eigen::VectorXd& mu, Eigen::MatrixXd* dir) const {
        if (dir) dir->resize(vars_, o_.colors);
        CompensatedSum<> total;
        for (int i = 0; i < o_.colors; ++i) {
            const Eigen::MatrixXd m = matrix(x, i);
            if (o_.symmetry == Symmetry::cayley) {
                total += pinned_density(h_, m);
                if (dir) dir->col(i) = pinned_direction(m) / threshold_;
            } else {
                const StepKernel w(mu, m);
                total += hom_density(h_, w, o_.hom);
                if (dir) {
                    const Eigen::MatrixXd g = gradient(h_, w, o_.hom);
                    for (int j = 0; j < vars_; ++j) {
                        const auto [a, b] = pairs_[static_cast<std::size_t>(j)];
                        const double mass = a == b ? mu(a) * mu(a) : 2 * mu(a) * mu(b);
                        (*dir)(j, i) = g(a, b) / mass / threshold_;
                    }
                }
            }
        }
        return total.value();
    }

private:
    std::vector<VertexDomain> domains(const Eigen::MatrixXd& m) const {
        auto dom = full_domains(h_, Eigen::VectorXd::Constant(m.rows(), 1.0 / static_cast<double>(m.rows())));
        return dom;
    }

    // Under the translation symmetry t(H,W) = t with vertex 0 pinned to block 0.
    double pinned_density(const Graph& h, const Eigen::MatrixXd& m) const {
        auto dom = domains(m);
        dom[0] = VertexDomain{{0}, {1.0}};
        return graph_network<double>(h, m, dom).contract_scalar(o_.hom.method, o_.hom.budget);
    }

    // d t / d s(c) divided by 1/N, the mass of {(a,b): a xor b = c}:
    // sum over edges uv of t(H - uv) with x_u = 0 and x_v = c.
    Eigen::VectorXd pinned_direction(const Eigen::MatrixXd& m) const {
        const int n = static_cast<int>(m.rows());
        Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < h_.edge_count(); ++i) {
            const Edge e = h_.edges()[static_cast<std::size_t>(i)];
            const Graph g = remove_edge(h_, i);
            auto dom = domains(m);
            dom[static_cast<std::size_t>(e.u)] = VertexDomain{{0}, {1.0}};
            const auto t = graph_network<double>(g, m, dom).contract({e.v}, o_.hom.method, o_.hom.budget);
            for (int c = 0; c < n; ++c) d(c) += t[static_cast<std::size_t>(c)];
        }
        return d;
    }

    const Graph& h_;
    const SearchOptions& o_;
    int vars_ = 0;
    std::vector<std::pair<int, int>> pairs_;
    double threshold_ = 0;
};

struct RestartResult {
    Eigen::MatrixXd x;
    Eigen::VectorXd mu;
    double value = std::numeric_limits<double>::infinity();
    int iteration = 0;
    double step = 0;
    bool converged = false;
};

inline RestartResult run_restart(const Landscape& land, const SearchOptions& o, int restart) {
    Rng rng(sub_seed(o.seed, static_cast<std::uint64_t>(restart)));
    const int k = o.colors;
    RestartResult r;
    // Outer loop over measures: restart 0 uses uniform blocks, the rest
    // Dirichlet samples. Cayley symmetry fixes uniform measures.
    r.mu = Eigen::VectorXd::Constant(o.blocks, 1.0 / o.blocks);
    if (o.symmetry == Symmetry::none && restart > 0) {
        const auto d = rng.dirichlet(o.blocks, 0.02);
        for (int b = 0; b < o.blocks; ++b) r.mu(b) = d[static_cast<std::size_t>(b)];
        r.mu /= r.mu.sum();
    }
    r.x.resize(land.variables(), k);
    const bool saturate_all = o.symmetry == Symmetry::cayley;
    for (int j = 0; j < land.variables(); ++j) {
        if (saturate_all || rng.coin(0.5)) {
            const int c = rng.integer(0, k - 1);
            for (int i = 0; i < k; ++i) r.x(j, i) = i == c ? 1 - (k - 1) * o.saturation : o.saturation;
        } else {
            const auto d = rng.dirichlet(k);
            for (int i = 0; i < k; ++i) r.x(j, i) = d[static_cast<std::size_t>(i)];
        }
    }
    Eigen::MatrixXd dir;
    r.value = land.evaluate(r.x, r.mu, &dir);
    double step = o.step;
    const double min_step = o.step * 1e-12;
    for (int it = 0; it < o.iters; ++it) {
        Eigen::MatrixXd next(r.x.rows(), k);
        for (int j = 0; j < land.variables(); ++j) {
            const Eigen::VectorXd xj = r.x.row(j).transpose();
            const Eigen::VectorXd gj = dir.row(j).transpose();
            next.row(j) = (o.update == Update::projected ? project_simplex(xj - step * gj)
                                                         : exponentiated_step(xj, gj, step))
                              .transpose();
        }
        Eigen::MatrixXd next_dir;
        const double v = land.evaluate(next, r.mu, &next_dir);
        r.iteration = it + 1;
        if (v < r.value) {
            r.x = std::move(next);
            r.value = v;
            dir = std::move(next_dir);
            step = std::min(step * 1.2, o.step);
        } else {
            step *= 0.5;
            if (step < min_step) {
                r.converged = true;
                break;
            }
        }
    }
    r.step = step;
    return r;
}

} // namespace detail

// Minimises sum_i t(H, W_i) over k-colourings by simplex-constrained
// descent. Restarts are independent and reduced by index, so the result
// does not depend on the thread count.
inline SearchState search_counterexample(const Graph& h, const SearchOptions& o) {
    if (o.restarts < 1) throw ParameterError("restarts must be positive");
    if (o.iters < 0) throw ParameterError("iters must be nonnegative");
    if (!(o.step > 0)) throw ParameterError("step must be positive");
    const detail::Landscape land(h, o);
    std::vector<detail::RestartResult> results(static_cast<std::size_t>(o.restarts));
    const int nt = std::max(1, std::min(o.threads, o.restarts));
    std::vector<std::exception_ptr> err(static_cast<std::size_t>(nt));
    auto work = [&](int first) {
        try {
            for (int r = first; r < o.restarts; r += nt) results[static_cast<std::size_t>(r)] = detail::run_restart(land, o, r);
        } catch (...) {
            err[static_cast<std::size_t>(first)] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
    for (auto& e : err)
        if (e) std::rethrow_exception(e);

    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r)
        if (results[r].value < results[best].value) best = r;
    const auto& b = results[best];

    SearchState s;
    s.k = o.colors;
    s.coloring = land.coloring(b.x, b.mu);
    s.target = h;
    s.seed = o.seed;
    s.restart = static_cast<int>(best);
    s.iteration = b.iteration;
    s.step = b.step;
    s.converged = b.converged;
    s.threshold = land.threshold();
    s.value = b.value;
    s.margin = s.value - s.threshold;
    for (const auto& w : s.coloring) s.gradient.push_back(gradient(h, w, o.hom));
    CompensatedSum<> ext;
    for (const auto& w : s.coloring) ext += hom_density_extended(h, w, o.hom);
    s.verified_value = ext.value();
    s.verified_margin = s.verified_value - s.threshold;
    s.counterexample_found = s.margin < -counterexample_tolerance && s.verified_margin < -counterexample_tolerance;
    return s;
}

// Re-evaluates a stored state from its colouring alone.
inline SearchState reverify(SearchState s, const HomOptions& opts = {}) {
    if (!validate_coloring(s.coloring)) throw ValidationError("stored colouring does not sum to 1 blockwise");
    s.k = static_cast<int>(s.coloring.size());
    s.threshold = common_threshold(s.target, s.k);
    CompensatedSum<> v, ext;
    s.gradient.clear();
    for (const auto& w : s.coloring) {
        v += hom_density(s.target, w, opts);
        ext += hom_density_extended(s.target, w, opts);
        s.gradient.push_back(gradient(s.target, w, opts));
    }
    s.value = v.value();
    s.margin = s.value - s.threshold;
    s.verified_value = ext.value();
    s.verified_margin = s.verified_value - s.threshold;
    s.counterexample_found = s.margin < -counterexample_tolerance && s.verified_margin < -counterexample_tolerance;
    return s;
}

} // namespace graphonlab

#endif
