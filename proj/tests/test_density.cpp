#include <graphonlab/density.hpp>
#include <graphonlab/expansion.hpp>
#include <graphonlab/independence.hpp>
#include <graphonlab/random.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace graphonlab;

namespace {

StepGraphon two_block() {
    Eigen::MatrixXd m(2, 2);
    m << 0.8, 0.2, 0.2, 0.8;
    return StepGraphon::uniform(m);
}

// Each block split into r equal sub-blocks.
StepKernel refine(const StepKernel& w, int r) {
    const int k = w.block_count();
    Eigen::VectorXd mu(k * r);
    Eigen::MatrixXd m(k * r, k * r);
    for (int a = 0; a < k * r; ++a) {
        mu(a) = w.measure(a / r) / r;
        for (int b = 0; b < k * r; ++b) m(a, b) = w.value(a / r, b / r);
    }
    mu /= mu.sum();
    return {mu, m};
}

Graph random_small_graph(Rng& rng, int max_vertices) { return random_graph(rng, rng.integer(1, max_vertices), 0.5); }

} // namespace

TEST(StepFunctions, Validation) {
    Eigen::VectorXd mu(2);
    mu << 0.5, 0.5;
    Eigen::MatrixXd asym(2, 2);
    asym << 0.1, 0.2, 0.3, 0.4;
    EXPECT_THROW(StepGraphon(mu, asym), ValidationError);
    Eigen::MatrixXd big = Eigen::MatrixXd::Constant(2, 2, 1.5);
    EXPECT_THROW(StepGraphon(mu, big), ValidationError);
    Eigen::MatrixXd neg = Eigen::MatrixXd::Constant(2, 2, -0.5);
    EXPECT_THROW(StepGraphon(mu, neg), ValidationError);
    EXPECT_NO_THROW(StepKernel(mu, neg));
    Eigen::VectorXd bad(2);
    bad << 0.5, 0.6;
    EXPECT_THROW(StepGraphon(bad, Eigen::MatrixXd::Zero(2, 2)), ValidationError);
    Eigen::VectorXd tiny(2);
    tiny << 1.0, 1e-13;
    EXPECT_THROW(StepGraphon(tiny, Eigen::MatrixXd::Zero(2, 2)), ValidationError);
}

TEST(Density, Examples) {
    EXPECT_DOUBLE_EQ(density(StepGraphon::constant(0.3)), 0.3);
    EXPECT_NEAR(density(two_block()), 0.5, 1e-15);
    const auto w = two_block();
    EXPECT_NEAR(density(complement(w)), 1 - density(w), 1e-15);
}

TEST(HomDensity, Examples) {
    const auto w = two_block();
    EXPECT_NEAR(hom_density(complete_graph(2), w), density(w), 1e-15);
    EXPECT_NEAR(hom_density(complete_graph(3), w), 0.152, 1e-15);
    EXPECT_NEAR(oracle::hom_density(complete_graph(3), w), 0.152, 1e-15);
    const Graph k3_plus_isolated(4, complete_graph(3).edges());
    EXPECT_NEAR(hom_density(k3_plus_isolated, w), hom_density(complete_graph(3), w), 1e-15);
}

TEST(HomDensity, EliminationMatchesEnumeration) {
    Rng rng(100);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph h = random_small_graph(rng, 6);
        const auto w = random_graphon(rng, 1, 4);
        const double a = hom_density(h, w, {Method::elimination, 1e9});
        const double b = hom_density(h, w, {Method::enumeration, 1e9});
        EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(b)));
        EXPECT_LE(std::abs(a - oracle::hom_density(h, w)), 1e-12);
    }
}

TEST(HomDensity, KernelsMatchOracle) {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph h = random_small_graph(rng, 6);
        const auto u = random_kernel(rng, rng.integer(1, 4));
        EXPECT_LE(std::abs(hom_density(h, u) - oracle::hom_density(h, u)), 1e-12);
    }
}

TEST(HomDensity, InvariantUnderBlockRefinement) {
    Rng rng(102);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph h = random_small_graph(rng, 5);
        const auto w = random_graphon(rng, 1, 3);
        const double base = hom_density(h, w);
        for (int r : {1, 2, 3}) EXPECT_LE(relative_error(hom_density(h, refine(w, r)), base), 1e-10);
    }
}

TEST(HomDensity, BudgetErrorIsRaised) {
    const auto w = StepGraphon::uniform(Eigen::MatrixXd::Constant(20, 20, 0.5));
    EXPECT_THROW(hom_density(complete_graph(8), w, {Method::automatic, 1e6}), BudgetError);
}

TEST(RootedDensity, SingleRootEdgeIsDegree) {
    const auto w = random_graphon(*std::make_unique<Rng>(7), 4);
    const auto t = rooted_density(construct_family(family::Path{2}), w);
    const auto deg = degree_function(w);
    for (int a = 0; a < 4; ++a) EXPECT_NEAR(t.values[a], deg.values(a), 1e-15);
}

TEST(RootedDensity, MatchesOracleAndContractsToUnrooted) {
    Rng rng(103);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = rng.integer(2, 5);
        const Graph g = random_graph(rng, n, 0.5);
        std::vector<int> roots{0};
        for (int v = 1; v < n && roots.size() < 2; ++v)
            if (!g.has_edge(0, v) && rng.coin(0.5)) roots.push_back(v);
        const RootedGraph h(g, roots);
        const auto w = random_graphon(rng, 1, 3);
        const auto t = rooted_density(h, w);
        std::vector<int> idx(roots.size(), 0);
        for (std::size_t i = 0; i < t.values.size(); ++i) {
            EXPECT_NEAR(t.values[i], oracle::rooted_entry(g, w, roots, idx), 1e-13);
            for (auto j = idx.size(); j-- > 0;) {
                if (++idx[j] < w.block_count()) break;
                idx[j] = 0;
            }
        }
        EXPECT_LE(relative_error(contract_roots(t, w.measures()), hom_density(g, w)), 1e-12);
    }
}

TEST(RootedDensity, MergeIdentity) {
    Rng rng(104);
    for (int trial = 0; trial < 50; ++trial) {
        const RootedGraph g(random_connected_graph(rng, rng.integer(2, 4), 0.6), {0});
        const RootedGraph h(random_connected_graph(rng, rng.integer(2, 4), 0.6), {0});
        const auto w = random_graphon(rng, 1, 4);
        const double merged = hom_density(rooted_sum(g, h), w);
        const double contracted = merge_contract(rooted_density(g, w), rooted_density(h, w), w.measures());
        EXPECT_LE(relative_error(merged, contracted), 1e-10);
    }
}

TEST(RootedDensity, TwoRootMergeIdentity) {
    Rng rng(105);
    const RootedGraph p3(path_graph(3), {0, 2});
    for (int trial = 0; trial < 20; ++trial) {
        const auto w = random_graphon(rng, 2, 4);
        const double merged = hom_density(rooted_sum(p3, p3), w);  // C4
        const double contracted = merge_contract(rooted_density(p3, w), rooted_density(p3, w), w.measures());
        EXPECT_LE(relative_error(merged, hom_density(cycle_graph(4), w)), 1e-12);
        EXPECT_LE(relative_error(merged, contracted), 1e-10);
    }
}

TEST(Restrict, Examples) {
    const auto w = random_graphon(*std::make_unique<Rng>(8), 3);
    const auto same = restrict(w, BlockFunction::ones(3));
    EXPECT_LE((same.values() - w.values()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_LE((same.measures() - w.measures()).cwiseAbs().maxCoeff(), 1e-15);
    BlockFunction ind{Eigen::VectorXd::Zero(3)};
    ind.values(1) = 1;
    const auto one = restrict(w, ind);
    EXPECT_EQ(one.block_count(), 1);
    EXPECT_DOUBLE_EQ(one.value(0, 0), w.value(1, 1));
    EXPECT_THROW(restrict(w, BlockFunction{Eigen::VectorXd::Zero(3)}), ParameterError);
}

TEST(Restrict, WeightedIntegralFormAndLowerBound) {
    Rng rng(106);
    for (int trial = 0; trial < 50; ++trial) {
        const auto w = random_graphon(rng, 2, 4);
        BlockFunction h{Eigen::VectorXd(w.block_count())};
        for (int b = 0; b < w.block_count(); ++b) h.values(b) = rng.uniform(0.05, 1.0);
        const Graph g = random_small_graph(rng, 5);
        const double norm = l1_norm(w.measures(), h);
        const double direct = hom_density(g, restrict(w, h));
        const double integral = weighted_density(g, w, h) / std::pow(norm, g.vertex_count());
        EXPECT_LE(relative_error(direct, integral), 1e-10);
        EXPECT_TRUE(holds_leq(std::pow(norm, g.vertex_count()) * direct, hom_density(g, w)));
    }
}

TEST(Complement, Involution) {
    const auto w = random_graphon(*std::make_unique<Rng>(9), 3);
    EXPECT_LE((complement(complement(w)).values() - w.values()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_DOUBLE_EQ(complement(StepGraphon::constant(0.3)).value(0, 0), 0.7);
}

TEST(Deviation, Examples) {
    const auto [p, u] = deviation(StepGraphon::constant(0.4));
    EXPECT_DOUBLE_EQ(p, 0.4);
    EXPECT_EQ(u.value(0, 0), 0.0);
    const auto d = deviation(two_block());
    EXPECT_NEAR(d.u.value(0, 0), 0.3, 1e-15);
    EXPECT_NEAR(d.u.value(0, 1), -0.3, 1e-15);
    Rng rng(10);
    for (int trial = 0; trial < 50; ++trial) {
        const auto dv = deviation(random_graphon(rng, 1, 5));
        EXPECT_LE(std::abs(density(dv.u)), 1e-14);
        EXPECT_LE(dv.u.sup_norm(), 1.0);
    }
}

TEST(Sidorenko, PathsAndC4) {
    Rng rng(107);
    for (int trial = 0; trial < 100; ++trial) {
        const auto w = random_graphon(rng, 1, 5);
        const double p = density(w);
        for (int n = 2; n <= 6; ++n) EXPECT_TRUE(holds_leq(std::pow(p, n - 1), hom_density(path_graph(n), w)));
        EXPECT_TRUE(holds_leq(std::pow(p, 4), hom_density(cycle_graph(4), w)));
    }
}

TEST(ValidateColoring, Examples) {
    const auto w = two_block();
    EXPECT_TRUE(validate_coloring({w, complement(w)}));
    const auto third = StepGraphon::constant(1.0 / 3.0);
    EXPECT_TRUE(validate_coloring({third, third, third}));
    EXPECT_FALSE(validate_coloring({w, w}));
    EXPECT_THROW(validate_coloring({w, StepGraphon::constant(0.5)}), ValidationError);
}

TEST(Expansion, ZeroDeviation) {
    const auto rep = subset_expansion(complete_graph(3), StepGraphon::constant(0.3));
    EXPECT_NEAR(rep.total, std::pow(0.3, 3), 1e-15);
    for (const auto& t : rep.terms)
        if (!t.edges.empty()) {
            EXPECT_EQ(t.term, 0.0);
        }
}

TEST(Expansion, TriangleOnTwoBlocks) {
    const auto rep = subset_expansion(complete_graph(3), two_block());
    ASSERT_EQ(rep.terms.size(), 8u);
    for (const auto& t : rep.terms) {
        const Graph part = edge_subgraph(complete_graph(3), [&] {
            std::vector<Edge> f;
            for (int i : t.edges) f.push_back(complete_graph(3).edges()[i]);
            return f;
        }());
        EXPECT_NEAR(t.term, oracle::hom_density(part, deviation(two_block()).u), 1e-15);
        switch (t.edges.size()) {
        case 0: EXPECT_NEAR(t.coefficient * t.term, 0.125, 1e-15); break;
        case 1:
        case 2: EXPECT_NEAR(t.term, 0.0, 1e-15); break;
        case 3: EXPECT_NEAR(t.term, 0.027, 1e-15); break;
        }
    }
    EXPECT_NEAR(rep.total, 0.152, 1e-15);
}

TEST(Expansion, TooManyEdges) {
    EXPECT_THROW(subset_expansion(complete_graph(7), two_block()), BudgetError);
}

TEST(IndependenceRatio, ZeroDiagonalBlock) {
    Eigen::VectorXd mu(2);
    mu << 0.3, 0.7;
    Eigen::MatrixXd m(2, 2);
    m << 0.0, 0.9, 0.9, 0.6;
    const auto r = independence_ratio(StepGraphon(mu, m), 0.1);
    EXPECT_GE(r.alpha, 0.3 - 1e-12);
    EXPECT_LE(density(restrict(StepGraphon(mu, m), r.h)), 0.1 + 1e-12);
}

TEST(IndependenceRatio, ConstantAboveDelta) {
    const auto r = independence_ratio(StepGraphon::constant(0.5), 0.2);
    EXPECT_EQ(r.alpha, 0.0);
    EXPECT_EQ(r.h.values.sum(), 0.0);
    EXPECT_NEAR(independence_ratio(StepGraphon::constant(0.1), 0.2).alpha, 1.0, 1e-15);
    EXPECT_THROW(independence_ratio(StepGraphon::constant(0.1), 1.0), ParameterError);
}

TEST(IndependenceRatio, MatchesGridOracle) {
    Rng rng(108);
    for (int trial = 0; trial < 5; ++trial) {
        const auto w = random_graphon(rng, 3);
        const double delta = 0.1;
        const auto r = independence_ratio(w, delta, 100);
        // Exhaustive grid over h in {0, .01, ..., 1}^3.
        double best = 0;
        for (int i = 0; i <= 100; ++i)
            for (int j = 0; j <= 100; ++j)
                for (int l = 0; l <= 100; ++l) {
                    if (i + j + l == 0) continue;
                    Eigen::Vector3d h(i / 100.0, j / 100.0, l / 100.0);
                    const Eigen::Vector3d x = w.measures().cwiseProduct(h);
                    const double mass = x.sum();
                    if (x.dot(w.values() * x) <= delta * mass * mass) best = std::max(best, mass);
                }
        EXPECT_GE(r.alpha, best - 1e-12);
        EXPECT_LE(r.alpha, best + 0.01 * 3);
        if (r.alpha > 0) {
            EXPECT_LE(density(restrict(w, r.h)), delta + 1e-12);
        }
    }
}
