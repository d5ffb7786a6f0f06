#pragma once

#include <iosfwd>
#include <tuple>
#include <vector>

#include "spectrank/chain.hpp"
#include "spectrank/graphs.hpp"
#include "spectrank/spectra.hpp"

namespace spectrank {

// Degree-constrained Fiedler-value maximization over edge weights in [0,1]:
// matrix multiplicative weights outer iterations with a greedy weight
// allocation oracle, deterministic given (graph, config).
struct ReweightConfig {
    double degree_cap = 0.0;    // <= 0 selects twice the lower-quartile input degree
    double degree_floor = 1.0;
    int iterations = 200;
    double step_size = 0.0;     // <= 0 selects 0.5 / sqrt(iterations)
    enum class Oracle { Greedy } oracle = Oracle::Greedy;

    double resolved_cap(const ComparisonGraph& graph) const;
    double resolved_step() const;
    void validate() const;
};

struct ReweightResult {
    std::vector<double> weights;  // aligned with the input graph's edge list
    double achieved_fiedler = 0.0;
    int iterations_used = 0;
    bool feasible = false;
};

ReweightResult mmwu_reweight(const ComparisonGraph& graph, const ReweightConfig& config);

// New graph with the same edge set and replaced weights. Zero-weight edges
// stay in the edge set but are inert in every weighted computation.
ComparisonGraph apply_weights(const ComparisonGraph& graph,
                              const std::vector<double>& weights);
ComparisonGraph apply_weights(const ComparisonGraph& graph,
                              const std::vector<std::tuple<int, int, double>>& weights);

struct WeightedRankResult {
    std::vector<double> pi_hat;
    std::vector<int> ranking;
    SpectralReport report;          // gaps of the weighted graph / empirical matrix
    ReweightResult reweight;
    ComparisonGraph weighted_graph; // after any irreducibility repair
};

WeightedRankResult weighted_rank_centrality(const ComparisonGraph& graph,
                                            const ComparisonDataset& dataset,
                                            const ReweightConfig& config,
                                            double tol = 1e-10, long max_iters = 1000000);

// All-pairs (i, j, w) triples, 0 for absent edges; reproduces the weight heatmaps.
void write_heatmap_csv(std::ostream& os, const ComparisonGraph& graph);

}  // namespace spectrank
