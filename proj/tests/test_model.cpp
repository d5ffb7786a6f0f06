#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "spectrank/graphs.hpp"
#include "spectrank/model.hpp"

using namespace spectrank;

TEST_CASE("new_btl_model normalizes pi and computes the dynamic range") {
    const auto model = new_btl_model({1.0, 2.0, 4.0});
    CHECK(model.n() == 3);
    CHECK(model.h == doctest::Approx(4.0));
    CHECK(model.pi[0] == doctest::Approx(1.0 / 7.0));
    CHECK(model.pi[1] == doctest::Approx(2.0 / 7.0));
    CHECK(model.pi[2] == doctest::Approx(4.0 / 7.0));
    CHECK(model.pi[0] + model.pi[1] + model.pi[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("model validation rejects bad score vectors") {
    CHECK_THROWS_AS(new_btl_model({1.0}), TooFewItems);
    CHECK_THROWS_AS(new_btl_model({1.0, 0.0}), NonPositiveScore);
    CHECK_THROWS_AS(new_btl_model({1.0, -2.0}), NonPositiveScore);
    CHECK_THROWS_AS(new_btl_model({1.0, std::nan("")}), NonPositiveScore);
    CHECK_THROWS_AS(new_btl_model({1.0, std::numeric_limits<double>::infinity()}),
                    NonPositiveScore);
}

TEST_CASE("pref_prob is the score ratio and complements under swap") {
    const auto model = new_btl_model({1.0, 3.0});
    CHECK(pref_prob(model, 0, 1) == doctest::Approx(0.75));
    CHECK(pref_prob(model, 1, 0) == doctest::Approx(0.25));
    CHECK(pref_prob(model, 0, 1) + pref_prob(model, 1, 0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(pref_prob(model, 1, 1), SameItem);
}

TEST_CASE("sample_comparisons is seed-deterministic and edge-order-independent") {
    const auto model = new_btl_model({1.0, 2.0, 3.0, 4.0});
    const auto g = gen_er(4, 1.0, 7);
    const auto a = sample_comparisons(model, g, 50, 42);
    const auto b = sample_comparisons(model, g, 50, 42);
    CHECK(a.wins == b.wins);
    const auto c = sample_comparisons(model, g, 50, 43);
    CHECK(a.wins != c.wins);

    // Counts must match the per-edge streams regardless of enumeration order,
    // so sampling on a sub-graph agrees edge-by-edge with the full graph.
    const auto sub = ComparisonGraph::from_edges(4, {{0, 1}, {2, 3}});
    const auto d = sample_comparisons(model, sub, 50, 42);
    CHECK(d.wins[0] == a.wins[g.find_edge(0, 1)]);
    CHECK(d.wins[1] == a.wins[g.find_edge(2, 3)]);
}

TEST_CASE("empirical win frequency approaches the model probability") {
    const auto model = new_btl_model({1.0, 3.0});
    const auto g = ComparisonGraph::from_edges(2, {{0, 1}});
    const int k = 200000;
    const auto ds = sample_comparisons(model, g, k, 1);
    // 4-sigma band around p = 0.75 with sigma = sqrt(p(1-p)/k).
    const double sigma = std::sqrt(0.75 * 0.25 / k);
    CHECK(std::abs(ds.p_hat(0) - 0.75) < 4.0 * sigma);
}

TEST_CASE("large-k inversion sampler matches the Bernoulli-sum mean and variance") {
    const auto model = new_btl_model({1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
    const auto g = gen_er(10, 1.0, 3);
    const int k = 20001;  // above the Bernoulli-sum cutoff
    const auto ds = sample_comparisons(model, g, k, 5);
    double mean = 0.0;
    for (std::size_t e = 0; e < ds.edges.size(); ++e) mean += ds.p_hat(e);
    mean /= static_cast<double>(ds.edges.size());
    CHECK(std::abs(mean - 0.5) < 0.01);
    for (std::size_t e = 0; e < ds.edges.size(); ++e) {
        CHECK(ds.wins[e] >= 0);
        CHECK(ds.wins[e] <= k);
    }
}

TEST_CASE("uniform-log generator hits the requested dynamic range bound") {
    const auto model = gen_uniform_log_model(200, 4.0, 11);
    for (double a : model.alpha) {
        CHECK(a >= 1.0);
        CHECK(a <= 4.0);
    }
    CHECK(model.h <= 4.0);
    CHECK(model.h > 2.0);  // 200 draws essentially fill [1, 4]
    const auto again = gen_uniform_log_model(200, 4.0, 11);
    CHECK(model.alpha == again.alpha);
}

TEST_CASE("model_from_json covers both spellings") {
    const auto explicit_model = model_from_json(nlohmann::json{{"alpha", {1.0, 2.0}}});
    CHECK(explicit_model.alpha == std::vector<double>{1.0, 2.0});
    const auto generated = model_from_json(nlohmann::json{
        {"n", 8}, {"alpha_gen", {{"kind", "uniform_log"}, {"h", 4.0}, {"seed", 9}}}});
    CHECK(generated.n() == 8);
    CHECK_THROWS_AS(model_from_json(nlohmann::json{{"nope", 1}}), ConfigError);
}

TEST_CASE("dataset round-trips through the text format") {
    const auto model = new_btl_model({1.0, 2.0, 3.0});
    const auto g = gen_er(3, 1.0, 1);
    const auto ds = sample_comparisons(model, g, 12, 2);
    std::stringstream ss;
    write_dataset(ss, ds);
    const auto back = read_dataset(ss);
    CHECK(back.n == ds.n);
    CHECK(back.k == ds.k);
    CHECK(back.edges == ds.edges);
    CHECK(back.wins == ds.wins);
}
