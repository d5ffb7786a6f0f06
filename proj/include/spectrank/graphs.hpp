#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "spectrank/errors.hpp"

namespace spectrank {

// Undirected simple graph with per-edge weights in [0, 1]. Edges are stored
// once per unordered pair (i < j); a dense pair -> edge-index table backs
// O(1) weight lookup for n <= 2048 (experiment scale is far below that).
struct ComparisonGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted lexicographically
    std::vector<double> weights;             // aligned with edges

    std::vector<std::vector<int>> adjacency;  // node -> incident edge indices
    std::vector<std::int32_t> edge_index;     // dense n*n lookup, -1 if absent

    static ComparisonGraph from_edges(int n, std::vector<std::pair<int, int>> edges,
                                      std::vector<double> weights = {});

    bool has_edge(int i, int j) const;
    int find_edge(int i, int j) const;  // -1 if absent
    double weight(int i, int j) const;  // 0 for absent pairs

    std::size_t edge_count() const { return edges.size(); }
    std::vector<double> weighted_degrees() const;
};

struct DegreeStats {
    double d_min = 0.0;
    double d_max = 0.0;
    double mean = 0.0;
};

bool is_connected(const ComparisonGraph& graph);  // over edges with weight > 0
DegreeStats degree_stats(const ComparisonGraph& graph);

// Symmetric per-pair edge probabilities q_ij in [base_p, 1].
struct SamplingPlan {
    int n = 0;
    double base_p = 0.0;
    std::vector<double> q;  // upper-triangular, row-major: (i,j) with i<j
    bool zero_base_warning = false;

    static SamplingPlan uniform(int n, double p);
    static std::size_t pair_offset(int n, int i, int j);
    double prob(int i, int j) const;
    void set_prob(int i, int j, double value);
    void validate() const;
};

// Stochastic block model on contiguous equal-size blocks B_1 = {0..n/m-1}, ...
// Either the assortative form (cross probability p, ascending within-block q)
// or a full symmetric m x m block probability matrix.
struct SbmSpec {
    int n = 0;
    int m = 0;
    double p = 0.0;
    std::vector<double> q;              // size m, ascending, q[0] > p (assortative form)
    std::vector<double> block_matrix;   // size m*m row-major; empty unless generalized

    bool generalized() const { return !block_matrix.empty(); }
    double pair_prob(int i, int j) const;  // i != j node indices
    SamplingPlan to_plan() const;
    void validate() const;
};

ComparisonGraph gen_semi_random(const SamplingPlan& plan, std::uint64_t seed);
ComparisonGraph gen_er(int n, double p, std::uint64_t seed);
ComparisonGraph gen_sbm(const SbmSpec& spec, std::uint64_t seed);

// Shared-uniform coupling: one U_ij per pair, ER edge iff U <= base_p,
// semi-random edge iff U <= q_ij. The ER edge set is a subset on every draw.
std::pair<ComparisonGraph, ComparisonGraph> monotone_coupling(const SamplingPlan& plan,
                                                              std::uint64_t seed);

// Edge-list text format: header "n <count>", then "i j w" per line, 0-indexed.
void write_edge_list(std::ostream& os, const ComparisonGraph& graph);
ComparisonGraph read_edge_list(std::istream& is);
void write_edge_list_file(const std::string& path, const ComparisonGraph& graph);
ComparisonGraph read_edge_list_file(const std::string& path);

}  // namespace spectrank
