#ifndef GRAPHONLAB_NUMERIC_HPP
#define GRAPHONLAB_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"

namespace graphonlab {

// Neumaier variant of Kahan summation.
template <class T = double>
class CompensatedSum {
public:
    CompensatedSum& operator+=(T x) noexcept {
        const T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    T value() const noexcept { return sum_ + comp_; }

private:
    T sum_{0};
    T comp_{0};
};

inline constexpr double default_budget = 1e8;

// Elementary-operation budget, overridable through GRAPHONLAB_BUDGET.
inline double budget_from_env(double fallback = default_budget) {
    const char* raw = std::getenv("GRAPHONLAB_BUDGET");
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(v > 0))
        throw ParameterError("GRAPHONLAB_BUDGET must be a positive number, got '" + std::string(raw) + "'");
    return v;
}

// One-sided inequality slack used by every checked inequality.
inline double slack_for(double rhs) noexcept { return 1e-10 * std::max(1.0, std::abs(rhs)); }

inline bool holds_leq(double lhs, double rhs) noexcept { return lhs <= rhs + slack_for(rhs); }

inline double relative_error(double a, double b) noexcept {
    return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Seeded randomness. mt19937_64 output is fixed by the standard, the
// distributions are not, so the few we need are written out here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // Uniform in [0,1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi].
    int integer(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return lo + static_cast<int>(x % span);
    }

    bool coin(double p) { return uniform() < p; }

    double exponential() {
        double u = uniform();
        while (u <= 0.0) u = uniform();
        return -std::log(u);
    }

    // Flat Dirichlet sample, every coordinate at least `floor`.
    std::vector<double> dirichlet(int k, double floor = 0.0) {
        std::vector<double> x(static_cast<std::size_t>(k));
        double total = 0;
        for (auto& v : x) total += (v = exponential());
        for (auto& v : x) v /= total;
        if (floor > 0) {
            total = 0;
            for (auto& v : x) total += (v = std::max(v, floor));
            for (auto& v : x) v /= total;
        }
        return x;
    }

    template <class It>
    void shuffle(It first, It last) {
        for (auto n = last - first; n > 1; --n) std::swap(first[n - 1], first[integer(0, static_cast<int>(n - 1))]);
    }

private:
    std::mt19937_64 engine_;
};

// Derives independent sub-seeds (restart i, trial i) from a master seed.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace graphonlab

#endif
