#ifndef GRAPHONLAB_SPECTRAL_HPP
#define GRAPHONLAB_SPECTRAL_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "density.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "inequality.hpp"
#include "numeric.hpp"
#include "step_function.hpp"

namespace graphonlab {

inline constexpr double eigenvalue_cutoff = 1e-12;

struct SpectralData {
    Eigen::VectorXd measures;
    Eigen::VectorXd eigenvalues;     // non-increasing in absolute value, zeros dropped
    Eigen::MatrixXd eigenfunctions;  // column i holds f_i on the blocks
    Eigen::VectorXd overlaps;        // c_i = <j, f_i>, non-negative
    double p = 0;                    // density
    double delta = 1;                // 1 - c_1 (1 when the spectrum is empty)
    std::optional<double> gamma;     // t(C4,W) - p^4, graphons only

    int rank() const noexcept { return static_cast<int>(eigenvalues.size()); }
    BlockFunction eigenfunction(int i) const { return {eigenfunctions.col(i)}; }
};

namespace detail {

inline SpectralData decompose_values(const Eigen::VectorXd& mu, const Eigen::MatrixXd& m) {
    const Eigen::Index k = mu.size();
    const Eigen::VectorXd root = mu.cwiseSqrt();
    const Eigen::MatrixXd s = root.asDiagonal() * m * root.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
    if (solver.info() != Eigen::Success) throw Error("symmetric eigensolver failed");
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < k; ++i)
        if (std::abs(solver.eigenvalues()(i)) >= eigenvalue_cutoff) keep.push_back(i);
    std::stable_sort(keep.begin(), keep.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double la = solver.eigenvalues()(a), lb = solver.eigenvalues()(b);
        if (std::abs(la) != std::abs(lb)) return std::abs(la) > std::abs(lb);
        return la > lb;
    });
    SpectralData d;
    d.measures = mu;
    const auto r = static_cast<Eigen::Index>(keep.size());
    d.eigenvalues.resize(r);
    d.eigenfunctions.resize(k, r);
    d.overlaps.resize(r);
    for (Eigen::Index i = 0; i < r; ++i) {
        d.eigenvalues(i) = solver.eigenvalues()(keep[i]);
        d.eigenfunctions.col(i) = solver.eigenvectors().col(keep[i]).cwiseQuotient(root);
    }
    auto overlap = [&](Eigen::Index i) { return mu.dot(d.eigenfunctions.col(i)); };
    // Within a cluster of equal eigenvalues, rotate so j projects onto the
    // first basis vector only; this makes c_1 and delta basis independent.
    for (Eigen::Index i = 0; i < r;) {
        Eigen::Index e = i + 1;
        const double tol = 1e-10 * std::max(1.0, std::abs(d.eigenvalues(i)));
        while (e < r && std::abs(d.eigenvalues(e) - d.eigenvalues(i)) <= tol) ++e;
        if (e - i > 1) {
            Eigen::VectorXd c(e - i);
            for (Eigen::Index t = i; t < e; ++t) c(t - i) = overlap(t);
            const double norm = c.norm();
            if (norm > eigenvalue_cutoff) {
                Eigen::VectorXd v = c;
                v(0) -= norm;
                if (v.norm() > 1e-15 * norm) {
                    v.normalize();
                    const Eigen::MatrixXd q = Eigen::MatrixXd::Identity(e - i, e - i) - 2.0 * v * v.transpose();
                    d.eigenfunctions.middleCols(i, e - i) = d.eigenfunctions.middleCols(i, e - i) * q;
                }
            }
        }
        i = e;
    }
    for (Eigen::Index i = 0; i < r; ++i) {
        double c = overlap(i);
        if (std::abs(c) < eigenvalue_cutoff) {
            Eigen::Index first = 0;
            while (first < k && std::abs(d.eigenfunctions(first, i)) <= eigenvalue_cutoff) ++first;
            if (first < k && d.eigenfunctions(first, i) < 0) d.eigenfunctions.col(i) *= -1.0;
            c = overlap(i);
        } else if (c < 0) {
            d.eigenfunctions.col(i) *= -1.0;
            c = -c;
        }
        d.overlaps(i) = c;
    }
    d.delta = r > 0 ? 1.0 - d.overlaps(0) : 1.0;
    return d;
}

} // namespace detail

// Spectrum of the integral operator of a step kernel, via the symmetric
// matrix D^{1/2} M D^{1/2}, D = diag(mu); eigenfunctions are returned in
// block coordinates and are orthonormal in the mu-weighted inner product.
inline SpectralData decompose(const StepKernel& w) {
    auto d = detail::decompose_values(w.measures(), w.values());
    d.p = density(w);
    return d;
}

inline SpectralData decompose(const StepGraphon& w) {
    auto d = decompose(static_cast<const StepKernel&>(w));
    d.gamma = hom_density(cycle_graph(4), w) - std::pow(d.p, 4);
    return d;
}

// t(C_n) = sum lambda_i^n.
inline double cycle_density_spectral(const SpectralData& s, int n) {
    if (n < 3) throw ParameterError("cycle length must be at least 3");
    CompensatedSum<> acc;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) acc += std::pow(s.eigenvalues(i), n);
    return acc.value();
}

// t(P_n) = sum lambda_i^{n-1} c_i^2.
inline double path_density_spectral(const SpectralData& s, int n) {
    if (n < 2) throw ParameterError("path order must be at least 2");
    CompensatedSum<> acc;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        acc += std::pow(s.eigenvalues(i), n - 1) * s.overlaps(i) * s.overlaps(i);
    return acc.value();
}

// <g, f_i> for each retained eigenfunction.
inline Eigen::VectorXd project(const BlockFunction& g, const SpectralData& s) {
    if (g.block_count() != s.measures.size()) throw ValidationError("block function does not match the spectrum's blocks");
    Eigen::VectorXd out(s.rank());
    for (int i = 0; i < s.rank(); ++i) out(i) = inner(s.measures, g, s.eigenfunction(i));
    return out;
}

// max over blocks of |sum lambda_i f_i(a) f_i(b) - M_ab|.
inline double reconstruction_error(const SpectralData& s, const StepKernel& w) {
    const Eigen::MatrixXd r = s.eigenfunctions * s.eigenvalues.asDiagonal() * s.eigenfunctions.transpose();
    return (r - w.values()).cwiseAbs().maxCoeff();
}

// The standard eigenvalue estimates for a graphon of density p > 0, in
// terms of gamma = t(C4) - p^4 and delta = 1 - c_1.
inline std::vector<InequalityCheck> estimate_report(const SpectralData& s, const StepGraphon& w) {
    const double p = density(w);
    if (!(p > 0)) throw ParameterError("estimates need a graphon of positive density");
    const double gamma = s.gamma ? *s.gamma : hom_density(cycle_graph(4), w) - std::pow(p, 4);
    const double g4 = std::pow(std::max(gamma, 0.0), 0.25);
    const double l1 = s.rank() > 0 ? s.eigenvalues(0) : 0.0;
    const double delta = s.delta;
    std::vector<InequalityCheck> r;
    r.push_back(check_leq("gamma_nonnegative", 0.0, gamma));
    r.push_back(check_leq("lambda1_at_least_p", p, l1));
    r.push_back(check_leq("lambda1_small", l1, p + gamma / (4 * p * p * p)));
    for (int i = 1; i < s.rank(); ++i)
        r.push_back(check_leq("lambda_small[" + std::to_string(i + 1) + "]", std::abs(s.eigenvalues(i)), g4));
    for (int m = 4; m <= 12; ++m) {
        CompensatedSum<> tail;
        for (int i = 1; i < s.rank(); ++i) tail += std::pow(s.eigenvalues(i), m);
        r.push_back(check_leq("power_sum[m=" + std::to_string(m) + "]", tail.value(), std::pow(g4, m)));
    }
    for (int m = 1; m <= 12; ++m) {
        const double t = hom_density(path_graph(m + 1), w);
        const double centre = std::pow(l1, m) * (1 - delta) * (1 - delta);
        const double spread = std::pow(g4, m);
        r.push_back(check_leq("path_range_lower[m=" + std::to_string(m) + "]", centre - spread, t));
        r.push_back(check_leq("path_range_upper[m=" + std::to_string(m) + "]", t, centre + spread));
    }
    double all = 0, tail = 0;
    for (int i = 0; i < s.rank(); ++i) {
        all += s.overlaps(i) * s.overlaps(i);
        if (i > 0) tail += s.overlaps(i) * s.overlaps(i);
    }
    r.push_back(check_leq("overlap_sum", all, 1.0));
    r.push_back(check_leq("overlap_tail", tail, 2 * delta));
    r.push_back(check_leq("delta_small", delta, gamma / std::pow(p, 4)));
    r.push_back(check_leq("lambda1_big", p * (1 + 2 * delta) - 8 * delta * g4, l1));
    return r;
}

} // namespace graphonlab

#endif
