#ifndef GRAPHONLAB_STEP_FUNCTION_HPP
#define GRAPHONLAB_STEP_FUNCTION_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace graphonlab {

inline constexpr double measure_tolerance = 1e-12;

// Symmetric step function on [0,1]^2 with k interval blocks of the given
// measures (block b is the b-th interval from the left) and values in [-1,1].
class StepKernel {
public:
    StepKernel(Eigen::VectorXd measures, Eigen::MatrixXd values) : mu_(std::move(measures)), m_(std::move(values)) {
        validate(-1.0, "kernel");
    }

    static StepKernel constant(double c) { return {Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Constant(1, 1, c)}; }

    int block_count() const noexcept { return static_cast<int>(mu_.size()); }
    const Eigen::VectorXd& measures() const noexcept { return mu_; }
    const Eigen::MatrixXd& values() const noexcept { return m_; }
    double measure(int b) const { return mu_(b); }
    double value(int a, int b) const { return m_(a, b); }

    double sup_norm() const { return m_.cwiseAbs().maxCoeff(); }

    friend bool operator==(const StepKernel& a, const StepKernel& b) { return a.mu_ == b.mu_ && a.m_ == b.m_; }

protected:
    struct Unchecked {};
    StepKernel(Eigen::VectorXd measures, Eigen::MatrixXd values, Unchecked)
        : mu_(std::move(measures)), m_(std::move(values)) {}

    void validate(double lo, const char* what) {
        const auto k = mu_.size();
        if (k < 1) throw ValidationError(std::string(what) + " needs at least one block");
        if (m_.rows() != k || m_.cols() != k)
            throw ValidationError(std::string(what) + " values must be a " + std::to_string(k) + "x" + std::to_string(k) +
                                  " matrix");
        CompensatedSum<> total;
        for (Eigen::Index b = 0; b < k; ++b) {
            if (!std::isfinite(mu_(b)) || mu_(b) < measure_tolerance)
                throw ValidationError("block " + std::to_string(b) + " has measure " + std::to_string(mu_(b)) +
                                      "; measures must be at least 1e-12");
            total += mu_(b);
        }
        if (std::abs(total.value() - 1.0) > measure_tolerance)
            throw ValidationError("block measures sum to " + std::to_string(total.value()) + ", not 1");
        for (Eigen::Index a = 0; a < k; ++a)
            for (Eigen::Index b = 0; b < k; ++b) {
                const double v = m_(a, b);
                if (!std::isfinite(v)) throw ValidationError(std::string(what) + " has a non-finite value");
                if (m_(a, b) != m_(b, a))
                    throw ValidationError(std::string(what) + " values are not symmetric at (" + std::to_string(a) + "," +
                                          std::to_string(b) + ")");
                if (v < lo || v > 1.0)
                    throw ValidationError(std::string(what) + " value " + std::to_string(v) + " at (" + std::to_string(a) +
                                          "," + std::to_string(b) + ") outside [" + (lo < 0 ? "-1" : "0") + ",1]");
            }
    }

    Eigen::VectorXd mu_;
    Eigen::MatrixXd m_;
};

// Step graphon: a kernel with values in [0,1].
class StepGraphon : public StepKernel {
public:
    StepGraphon(Eigen::VectorXd measures, Eigen::MatrixXd values)
        : StepKernel(std::move(measures), std::move(values), Unchecked{}) {
        validate(0.0, "graphon");
    }

    static StepGraphon constant(double p) { return {Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Constant(1, 1, p)}; }

    // Uniform measures over k blocks.
    static StepGraphon uniform(const Eigen::MatrixXd& values) {
        const auto k = values.rows();
        return {Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k)), values};
    }
};

// Block-constant function [0,1] -> R over a fixed block structure.
struct BlockFunction {
    Eigen::VectorXd values;

    static BlockFunction ones(int k) { return {Eigen::VectorXd::Ones(k)}; }
    int block_count() const noexcept { return static_cast<int>(values.size()); }
};

// <f, g> in L2 of the block measures.
inline double inner(const Eigen::VectorXd& mu, const BlockFunction& f, const BlockFunction& g) {
    if (f.block_count() != mu.size() || g.block_count() != mu.size())
        throw ValidationError("block function size does not match the block structure");
    CompensatedSum<> s;
    for (Eigen::Index b = 0; b < mu.size(); ++b) s += mu(b) * f.values(b) * g.values(b);
    return s.value();
}

inline double l1_norm(const Eigen::VectorXd& mu, const BlockFunction& h) {
    if (h.block_count() != mu.size()) throw ValidationError("block function size does not match the block structure");
    CompensatedSum<> s;
    for (Eigen::Index b = 0; b < mu.size(); ++b) s += mu(b) * std::abs(h.values(b));
    return s.value();
}

// Sum of mu_a mu_b M_ab.
inline double density(const StepKernel& w) {
    CompensatedSum<> s;
    const auto& mu = w.measures();
    for (int a = 0; a < w.block_count(); ++a)
        for (int b = 0; b < w.block_count(); ++b) s += mu(a) * mu(b) * w.value(a, b);
    return s.value();
}

// deg_W as a block function.
inline BlockFunction degree_function(const StepKernel& w) {
    BlockFunction d{Eigen::VectorXd::Zero(w.block_count())};
    for (int a = 0; a < w.block_count(); ++a) {
        CompensatedSum<> s;
        for (int b = 0; b < w.block_count(); ++b) s += w.measure(b) * w.value(a, b);
        d.values(a) = s.value();
    }
    return d;
}

inline StepGraphon complement(const StepGraphon& w) {
    return {w.measures(), Eigen::MatrixXd::Ones(w.block_count(), w.block_count()) - w.values()};
}

struct Deviation {
    double p;
    StepKernel u;
};

// W = p + U with p the density of W.
inline Deviation deviation(const StepGraphon& w) {
    const double p = density(w);
    Eigen::MatrixXd u = w.values().array() - p;
    return {p, StepKernel(w.measures(), u)};
}

// W[h]: measures mu_b h_b / |h|_1, zero-mass blocks dropped.
inline StepGraphon restrict(const StepGraphon& w, const BlockFunction& h) {
    const int k = w.block_count();
    if (h.block_count() != k) throw ValidationError("weight function size does not match the block structure");
    for (int b = 0; b < k; ++b)
        if (h.values(b) < 0 || h.values(b) > 1) throw ValidationError("weight function values must lie in [0,1]");
    const double norm = l1_norm(w.measures(), h);
    if (!(norm > 0)) throw ParameterError("weight function has zero mass");
    std::vector<int> keep;
    for (int b = 0; b < k; ++b)
        if (w.measure(b) * h.values(b) / norm >= measure_tolerance) keep.push_back(b);
    const auto kk = static_cast<Eigen::Index>(keep.size());
    Eigen::VectorXd mu(kk);
    Eigen::MatrixXd m(kk, kk);
    CompensatedSum<> total;
    for (Eigen::Index i = 0; i < kk; ++i) total += mu(i) = w.measure(keep[i]) * h.values(keep[i]) / norm;
    mu /= total.value();
    for (Eigen::Index i = 0; i < kk; ++i)
        for (Eigen::Index j = 0; j < kk; ++j) m(i, j) = w.value(keep[i], keep[j]);
    return {mu, m};
}

inline bool same_blocks(const StepKernel& a, const StepKernel& b) {
    return a.block_count() == b.block_count() && a.measures() == b.measures();
}

// True iff the colouring sums to 1 blockwise within 1e-10.
inline bool validate_coloring(const std::vector<StepGraphon>& ws) {
    if (ws.empty()) throw ValidationError("empty colouring");
    for (const auto& w : ws)
        if (!same_blocks(w, ws.front())) throw ValidationError("colouring graphons have different block structures");
    const int k = ws.front().block_count();
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            double s = 0;
            for (const auto& w : ws) s += w.value(a, b);
            if (std::abs(s - 1.0) > 1e-10) return false;
        }
    return true;
}

// Restates two step functions over the common refinement of their interval
// blocks. Breakpoints closer than 1e-12 are merged.
inline std::pair<StepKernel, StepKernel> common_refinement(const StepKernel& x, const StepKernel& y) {
    auto cuts = [](const StepKernel& w) {
        std::vector<double> c{0.0};
        CompensatedSum<> s;
        for (int b = 0; b < w.block_count(); ++b) {
            s += w.measure(b);
            c.push_back(s.value());
        }
        c.back() = 1.0;
        return c;
    };
    const auto cx = cuts(x), cy = cuts(y);
    std::vector<double> all(cx);
    all.insert(all.end(), cy.begin(), cy.end());
    std::sort(all.begin(), all.end());
    std::vector<double> merged{0.0};
    for (double c : all)
        if (c - merged.back() >= measure_tolerance) merged.push_back(c);
    merged.back() = 1.0;
    const auto k = static_cast<Eigen::Index>(merged.size() - 1);
    Eigen::VectorXd mu(k);
    std::vector<int> bx(k), by(k);
    auto locate = [](const std::vector<double>& c, double mid) {
        auto it = std::upper_bound(c.begin(), c.end(), mid);
        return std::clamp(static_cast<int>(it - c.begin()) - 1, 0, static_cast<int>(c.size()) - 2);
    };
    for (Eigen::Index i = 0; i < k; ++i) {
        mu(i) = merged[i + 1] - merged[i];
        const double mid = 0.5 * (merged[i] + merged[i + 1]);
        bx[i] = locate(cx, mid);
        by[i] = locate(cy, mid);
    }
    mu /= mu.sum();
    Eigen::MatrixXd mx(k, k), my(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            mx(i, j) = x.value(bx[i], bx[j]);
            my(i, j) = y.value(by[i], by[j]);
        }
    return {StepKernel(mu, mx), StepKernel(mu, my)};
}

// Difference of two kernels on shared blocks, halved when needed so the
// result stays a valid kernel; returns the scale used.
inline std::pair<StepKernel, double> kernel_difference(const StepKernel& a, const StepKernel& b) {
    if (!same_blocks(a, b)) throw ValidationError("kernels have different block structures");
    Eigen::MatrixXd d = a.values() - b.values();
    const double sup = d.cwiseAbs().maxCoeff();
    const double scale = sup > 1.0 ? sup : 1.0;
    return {StepKernel(a.measures(), d / scale), scale};
}

} // namespace graphonlab

#endif
