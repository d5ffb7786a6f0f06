#pragma once

#include <iosfwd>
#include <vector>

#include "spectrank/graphs.hpp"
#include "spectrank/model.hpp"

namespace spectrank {

enum class Provenance { Canonical, Empirical };

// Dense row-stochastic matrix built from a weighted comparison graph.
// Off-diagonal (i, j) = p_ij * w_ij / d with d the maximum weighted degree,
// diagonal the complement, so every diagonal entry is nonnegative.
struct MarkovMatrix {
    int n = 0;
    std::vector<double> s;  // row-major n*n
    double d = 0.0;
    Provenance provenance = Provenance::Canonical;

    double entry(int i, int j) const { return s[static_cast<std::size_t>(i) * n + j]; }
};

MarkovMatrix build_canonical_markov(const ComparisonGraph& graph, const BtlModel& model);
MarkovMatrix build_empirical_markov(const ComparisonGraph& graph,
                                    const ComparisonDataset& dataset);

// Power iteration on v^T S with uniform start; l1 residual stopping rule.
std::vector<double> stationary_distribution(const MarkovMatrix& markov, double tol = 1e-10,
                                            long max_iters = 1000000);

// Dense linear-solve oracle: v^T (S - I) = 0, sum(v) = 1.
std::vector<double> stationary_exact(const MarkovMatrix& markov);

struct RankResult {
    std::vector<double> pi_hat;
    std::vector<int> ranking;  // descending score, ties broken by ascending index
};

RankResult rank_centrality(const ComparisonGraph& graph, const ComparisonDataset& dataset,
                           double tol = 1e-10, long max_iters = 1000000);

std::vector<int> ranking_from_scores(const std::vector<double>& scores);

void write_markov_csv(std::ostream& os, const MarkovMatrix& markov);

}  // namespace spectrank
