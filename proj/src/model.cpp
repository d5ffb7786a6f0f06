#include "spectrank/model.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "spectrank/graphs.hpp"
#include "spectrank/rng.hpp"

namespace spectrank {

BtlModel new_btl_model(std::vector<double> alpha) {
    if (alpha.size() < 2) throw TooFewItems("BTL model needs at least 2 items");
    double total = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double a : alpha) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw NonPositiveScore("all scores must be strictly positive and finite");
        total += a;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    BtlModel model;
    model.alpha = std::move(alpha);
    model.pi.resize(model.alpha.size());
    for (std::size_t i = 0; i < model.alpha.size(); ++i) model.pi[i] = model.alpha[i] / total;
    model.h = hi / lo;
    return model;
}

double pref_prob(const BtlModel& model, int i, int j) {
    if (i == j) throw SameItem("pref_prob requires i != j");
    return model.alpha[j] / (model.alpha[i] + model.alpha[j]);
}

namespace {

// Exact binomial draw by cdf inversion from one uniform; used for very large
// k where summing Bernoulli draws would be wasteful. The pmf is anchored at
// the mode via lgamma (P(Z=0) underflows for large k) and walked with the
// exact recurrence, so far-tail terms below double precision are the only
// truncation.
int binomial_inversion(int k, double p, double u) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return k;
    const int mode = std::min(k, static_cast<int>((k + 1) * p));
    const double log_pmf_mode = std::lgamma(k + 1.0) - std::lgamma(mode + 1.0) -
                                std::lgamma(k - mode + 1.0) + mode * std::log(p) +
                                (k - mode) * std::log1p(-p);
    const double pmf_mode = std::exp(log_pmf_mode);
    const double ratio = p / (1.0 - p);

    // cdf(mode) by summing downward from the mode until terms vanish.
    double cdf = pmf_mode;
    double pmf = pmf_mode;
    for (int z = mode; z > 0; --z) {
        pmf *= z / (ratio * (k - z + 1));
        cdf += pmf;
        if (pmf < cdf * 1e-18) break;
    }
    if (u > cdf) {  // walk up from the mode
        pmf = pmf_mode;
        for (int z = mode + 1; z <= k; ++z) {
            pmf *= ratio * (k - z + 1) / z;
            cdf += pmf;
            if (u <= cdf) return z;
        }
        return k;
    }
    // Walk down: find the smallest z with u <= cdf(z).
    pmf = pmf_mode;
    for (int z = mode; z > 0; --z) {
        cdf -= pmf;
        if (u > cdf) return z;
        pmf *= z / (ratio * (k - z + 1));
    }
    return 0;
}

constexpr int kBernoulliSumLimit = 10000;

}  // namespace

ComparisonDataset sample_comparisons(const BtlModel& model, const ComparisonGraph& graph,
                                     int k, std::uint64_t seed) {
    if (graph.n != model.n()) throw SizeMismatch("graph node count must match model size");
    if (k < 1) throw ConfigError("k must be >= 1");

    ComparisonDataset ds;
    ds.n = graph.n;
    ds.k = k;
    ds.seed = seed;
    ds.edges = graph.edges;
    ds.wins.resize(graph.edges.size());
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        auto [i, j] = graph.edges[e];
        const double p = pref_prob(model, i, j);
        auto stream = rng::pair_stream(seed, i, j, rng::kTagComparisons);
        int z = 0;
        if (k <= kBernoulliSumLimit) {
            for (int m = 0; m < k; ++m) z += stream.next_u01() < p ? 1 : 0;
        } else {
            z = binomial_inversion(k, p, stream.next_u01());
        }
        ds.wins[e] = z;
    }
    return ds;
}

BtlModel gen_uniform_log_model(int n, double h, std::uint64_t seed) {
    if (n < 2) throw TooFewItems("model generator needs n >= 2");
    if (!(h >= 1.0)) throw ConfigError("uniform_log generator requires h >= 1");
    std::vector<double> alpha(n);
    const double log_h = std::log(h);
    for (int i = 0; i < n; ++i) {
        const double u = rng::pair_uniform(seed, static_cast<std::uint64_t>(i), 0,
                                           rng::kTagModelGen);
        alpha[i] = std::exp(u * log_h);
    }
    return new_btl_model(std::move(alpha));
}

BtlModel model_from_json(const nlohmann::json& doc) {
    if (doc.contains("alpha")) {
        return new_btl_model(doc.at("alpha").get<std::vector<double>>());
    }
    if (doc.contains("alpha_gen")) {
        const auto& gen = doc.at("alpha_gen");
        if (gen.at("kind").get<std::string>() != "uniform_log")
            throw ConfigError("unknown alpha_gen kind");
        return gen_uniform_log_model(doc.at("n").get<int>(), gen.at("h").get<double>(),
                                     gen.at("seed").get<std::uint64_t>());
    }
    throw ConfigError("model spec needs either \"alpha\" or \"alpha_gen\"");
}

void write_dataset(std::ostream& os, const ComparisonDataset& dataset) {
    os << "n " << dataset.n << " k " << dataset.k << "\n";
    for (std::size_t e = 0; e < dataset.edges.size(); ++e)
        os << dataset.edges[e].first << " " << dataset.edges[e].second << " "
           << dataset.wins[e] << "\n";
}

ComparisonDataset read_dataset(std::istream& is) {
    std::string h1, h2;
    ComparisonDataset ds;
    if (!(is >> h1 >> ds.n >> h2 >> ds.k) || h1 != "n" || h2 != "k")
        throw IoError("bad dataset header");
    int i, j, z;
    while (is >> i >> j >> z) {
        if (z < 0 || z > ds.k) throw IoError("win count outside [0, k]");
        ds.edges.emplace_back(i, j);
        ds.wins.push_back(z);
    }
    return ds;
}

}  // namespace spectrank
