#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spectrank/errors.hpp"

#include "json.hpp"

namespace spectrank {

struct ComparisonGraph;

// Bradley-Terry-Luce model: positive scores alpha, canonical unit-1-norm
// score vector pi, and dynamic range h = max(alpha)/min(alpha).
struct BtlModel {
    std::vector<double> alpha;
    std::vector<double> pi;
    double h = 1.0;

    int n() const { return static_cast<int>(alpha.size()); }
};

BtlModel new_btl_model(std::vector<double> alpha);

// Probability that j is preferred over i: alpha_j / (alpha_i + alpha_j).
double pref_prob(const BtlModel& model, int i, int j);

// Win counts per observed pair, k comparisons each, fully seed-determined.
struct ComparisonDataset {
    int n = 0;
    int k = 0;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted
    std::vector<int> wins;                   // wins[e] = Z_ij, j beating i, aligned with edges
    std::uint64_t seed = 0;

    double p_hat(std::size_t edge_index) const {
        return static_cast<double>(wins[edge_index]) / k;
    }
};

ComparisonDataset sample_comparisons(const BtlModel& model, const ComparisonGraph& graph,
                                     int k, std::uint64_t seed);

// Accepts {"alpha":[..]} or {"n":N,"alpha_gen":{"kind":"uniform_log","h":H,"seed":S}},
// where uniform_log draws log-scores uniformly over [0, log h].
BtlModel model_from_json(const nlohmann::json& doc);

BtlModel gen_uniform_log_model(int n, double h, std::uint64_t seed);

// Dataset text format: header "n <items> k <comparisons>", then "i j z" per line.
void write_dataset(std::ostream& os, const ComparisonDataset& dataset);
ComparisonDataset read_dataset(std::istream& is);

}  // namespace spectrank
