#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "spectrank/graphs.hpp"

using namespace spectrank;

namespace {

bool same_edges(const ComparisonGraph& a, const ComparisonGraph& b) {
    return a.n == b.n && a.edges == b.edges && a.weights == b.weights;
}

}  // namespace

TEST_CASE("from_edges sorts, indexes, and exposes weights") {
    auto g = ComparisonGraph::from_edges(4, {{2, 3}, {0, 1}, {1, 3}}, {0.5, 1.0, 0.25});
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 3}, {2, 3}});
    CHECK(g.weight(0, 1) == doctest::Approx(1.0));
    CHECK(g.weight(1, 0) == doctest::Approx(1.0));
    CHECK(g.weight(1, 3) == doctest::Approx(0.25));
    CHECK(g.weight(2, 3) == doctest::Approx(0.5));
    CHECK(g.weight(0, 2) == 0.0);
    CHECK(g.has_edge(3, 1));
    CHECK_FALSE(g.has_edge(0, 3));
    const auto deg = g.weighted_degrees();
    CHECK(deg[1] == doctest::Approx(1.25));
    CHECK(deg[3] == doctest::Approx(0.75));
}

TEST_CASE("connectivity respects zero weights") {
    auto g = ComparisonGraph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK(is_connected(g));
    auto cut = ComparisonGraph::from_edges(3, {{0, 1}, {1, 2}}, {1.0, 0.0});
    CHECK_FALSE(is_connected(cut));
    CHECK_FALSE(is_connected(ComparisonGraph::from_edges(3, {{0, 1}})));
}

TEST_CASE("sampling plan stores symmetric probabilities and validates") {
    auto plan = SamplingPlan::uniform(5, 0.3);
    CHECK(plan.prob(1, 4) == doctest::Approx(0.3));
    plan.set_prob(4, 1, 0.9);
    CHECK(plan.prob(1, 4) == doctest::Approx(0.9));
    CHECK(plan.prob(4, 1) == doctest::Approx(0.9));
    plan.validate();

    auto bad = SamplingPlan::uniform(4, 0.5);
    bad.set_prob(0, 1, 0.25);  // below base_p
    CHECK_THROWS_AS(bad.validate(), InvalidPlan);
    CHECK_THROWS_AS(SamplingPlan::uniform(4, -0.1).validate(), InvalidPlan);
    CHECK_THROWS_AS(SamplingPlan::uniform(4, 1.5).validate(), InvalidPlan);
    auto zero = SamplingPlan::uniform(4, 0.0);
    zero.validate();
    CHECK(zero.zero_base_warning);
}

TEST_CASE("semi-random generation honors certain and impossible pairs") {
    auto plan = SamplingPlan::uniform(6, 0.0);
    plan.set_prob(0, 1, 1.0);
    plan.set_prob(2, 3, 1.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = gen_semi_random(plan, seed);
        CHECK(g.edge_count() == 2);
        CHECK(g.has_edge(0, 1));
        CHECK(g.has_edge(2, 3));
    }
}

TEST_CASE("ER generation equals the uniform-plan path and is deterministic") {
    for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
        const auto er = gen_er(30, 0.4, seed);
        const auto via_plan = gen_semi_random(SamplingPlan::uniform(30, 0.4), seed);
        CHECK(same_edges(er, via_plan));
        CHECK(same_edges(er, gen_er(30, 0.4, seed)));
    }
}

TEST_CASE("ER edge counts stay inside a 4-sigma band") {
    const int n = 60;
    const double p = 0.3;
    const double pairs = n * (n - 1) / 2.0;
    const double sigma = std::sqrt(pairs * p * (1 - p));
    double total = 0.0;
    const int reps = 50;
    for (int seed = 0; seed < reps; ++seed)
        total += static_cast<double>(gen_er(n, p, seed).edge_count());
    const double mean = total / reps;
    CHECK(std::abs(mean - pairs * p) < 4.0 * sigma / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("assortative SBM spec expands to the right pair probabilities") {
    SbmSpec spec;
    spec.n = 8;
    spec.m = 2;
    spec.p = 0.1;
    spec.q = {0.5, 0.8};
    spec.validate();
    CHECK(spec.pair_prob(0, 3) == doctest::Approx(0.5));   // both in block 0
    CHECK(spec.pair_prob(4, 7) == doctest::Approx(0.8));   // both in block 1
    CHECK(spec.pair_prob(1, 6) == doctest::Approx(0.1));   // across
    const auto plan = spec.to_plan();
    CHECK(plan.base_p == doctest::Approx(0.1));
    CHECK(plan.prob(0, 1) == doctest::Approx(0.5));
    CHECK(plan.prob(2, 5) == doctest::Approx(0.1));

    SbmSpec bad = spec;
    bad.q = {0.8, 0.5};  // not ascending
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = spec;
    bad.q = {0.05, 0.8};  // q_1 <= p
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = spec;
    bad.n = 9;  // m does not divide n
    CHECK_THROWS_AS(bad.validate(), BlockSizeError);
    bad = spec;
    bad.n = 2;  // blocks of size 1
    CHECK_THROWS_AS(bad.validate(), BlockSizeError);
}

TEST_CASE("generalized SBM block matrix drives sampling blockwise") {
    SbmSpec spec;
    spec.n = 12;
    spec.m = 3;
    spec.block_matrix = {1.0, 1.0, 0.0, 1.0, 0.7, 0.7, 0.0, 0.7, 0.7};
    spec.validate();
    const auto g = gen_sbm(spec, 5);
    // Probability-1 blocks are complete; probability-0 blocks are empty.
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 8; ++j) CHECK(g.has_edge(i, j));
    for (int i = 0; i < 4; ++i)
        for (int j = 8; j < 12; ++j) CHECK_FALSE(g.has_edge(i, j));

    SbmSpec asym = spec;
    asym.block_matrix[1] = 0.3;  // breaks symmetry
    CHECK_THROWS_AS(asym.validate(), ConfigError);
}

TEST_CASE("degenerate SBM with equal probabilities reproduces ER bit-for-bit") {
    SbmSpec spec;
    spec.n = 20;
    spec.m = 2;
    spec.block_matrix = {0.35, 0.35, 0.35, 0.35};
    for (std::uint64_t seed : {0ull, 7ull, 123ull})
        CHECK(same_edges(gen_sbm(spec, seed), gen_er(20, 0.35, seed)));
}

TEST_CASE("monotone coupling keeps the ER edges inside the semi-random graph") {
    auto plan = SamplingPlan::uniform(25, 0.2);
    for (int i = 0; i < 25; ++i)
        for (int j = i + 1; j < 25; ++j)
            if ((i + j) % 3 == 0) plan.set_prob(i, j, 0.9);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto [er, sr] = monotone_coupling(plan, seed);
        for (const auto& [i, j] : er.edges) CHECK(sr.has_edge(i, j));
        // The ER component matches the plain generator on the same seed.
        CHECK(same_edges(er, gen_er(25, 0.2, seed)));
        CHECK(same_edges(sr, gen_semi_random(plan, seed)));
    }
}

TEST_CASE("edge lists round-trip through the text format") {
    const auto g = ComparisonGraph::from_edges(5, {{0, 2}, {1, 4}, {3, 4}}, {0.5, 1.0, 0.125});
    std::stringstream ss;
    write_edge_list(ss, g);
    const auto back = read_edge_list(ss);
    CHECK(same_edges(g, back));

    std::stringstream bad("x 5\n0 1 1.0\n");
    CHECK_THROWS_AS(read_edge_list(bad), IoError);
}
