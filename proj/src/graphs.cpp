#include "spectrank/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "spectrank/rng.hpp"

namespace spectrank {

namespace {
constexpr int kDenseLookupLimit = 2048;
}

ComparisonGraph ComparisonGraph::from_edges(int n, std::vector<std::pair<int, int>> edges,
                                            std::vector<double> weights) {
    ComparisonGraph g;
    g.n = n;
    if (weights.empty()) weights.assign(edges.size(), 1.0);
    if (weights.size() != edges.size())
        throw SizeMismatch("edge and weight counts differ");

    std::vector<std::size_t> order(edges.size());
    for (std::size_t e = 0; e < order.size(); ++e) order[e] = e;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });

    g.edges.reserve(edges.size());
    g.weights.reserve(edges.size());
    g.adjacency.resize(n);
    if (n <= kDenseLookupLimit) g.edge_index.assign(static_cast<std::size_t>(n) * n, -1);
    for (std::size_t e : order) {
        auto [i, j] = edges[e];
        if (i == j) throw InvalidPlan("self-loops are not allowed");
        if (i > j) std::swap(i, j);
        if (i < 0 || j >= n) throw InvalidPlan("edge endpoint out of range");
        const double w = weights[e];
        if (w < 0.0 || w > 1.0) throw WeightOutOfRange("edge weight outside [0, 1]");
        const int idx = static_cast<int>(g.edges.size());
        g.edges.emplace_back(i, j);
        g.weights.push_back(w);
        g.adjacency[i].push_back(idx);
        g.adjacency[j].push_back(idx);
        if (!g.edge_index.empty()) {
            g.edge_index[static_cast<std::size_t>(i) * n + j] = idx;
            g.edge_index[static_cast<std::size_t>(j) * n + i] = idx;
        }
    }
    return g;
}

int ComparisonGraph::find_edge(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) return -1;
    if (!edge_index.empty()) return edge_index[static_cast<std::size_t>(i) * n + j];
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(i, j));
    if (it != edges.end() && *it == std::make_pair(i, j))
        return static_cast<int>(it - edges.begin());
    return -1;
}

bool ComparisonGraph::has_edge(int i, int j) const { return find_edge(i, j) >= 0; }

double ComparisonGraph::weight(int i, int j) const {
    const int e = find_edge(i, j);
    return e < 0 ? 0.0 : weights[e];
}

std::vector<double> ComparisonGraph::weighted_degrees() const {
    std::vector<double> deg(n, 0.0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        deg[edges[e].first] += weights[e];
        deg[edges[e].second] += weights[e];
    }
    return deg;
}

bool is_connected(const ComparisonGraph& graph) {
    if (graph.n <= 1) return true;
    std::vector<char> seen(graph.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int e : graph.adjacency[v]) {
            if (graph.weights[e] <= 0.0) continue;
            const auto [a, b] = graph.edges[e];
            const int u = a == v ? b : a;
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == graph.n;
}

DegreeStats degree_stats(const ComparisonGraph& graph) {
    DegreeStats stats;
    const auto deg = graph.weighted_degrees();
    if (deg.empty()) return stats;
    stats.d_min = *std::min_element(deg.begin(), deg.end());
    stats.d_max = *std::max_element(deg.begin(), deg.end());
    double total = 0.0;
    for (double d : deg) total += d;
    stats.mean = total / graph.n;
    return stats;
}

std::size_t SamplingPlan::pair_offset(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    // Row-major upper triangle: row i holds pairs (i, i+1..n-1).
    return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2 +
           (j - i - 1);
}

SamplingPlan SamplingPlan::uniform(int n, double p) {
    SamplingPlan plan;
    plan.n = n;
    plan.base_p = p;
    plan.q.assign(static_cast<std::size_t>(n) * (n - 1) / 2, p);
    plan.zero_base_warning = p == 0.0;
    return plan;
}

double SamplingPlan::prob(int i, int j) const { return q[pair_offset(n, i, j)]; }

void SamplingPlan::set_prob(int i, int j, double value) { q[pair_offset(n, i, j)] = value; }

void SamplingPlan::validate() const {
    if (n < 2) throw InvalidPlan("plan needs n >= 2");
    if (base_p < 0.0 || base_p > 1.0) throw InvalidPlan("base_p outside [0, 1]");
    if (q.size() != static_cast<std::size_t>(n) * (n - 1) / 2)
        throw InvalidPlan("plan probability table has wrong size");
    for (double v : q)
        if (v < base_p || v > 1.0)
            throw InvalidPlan("pair probability outside [base_p, 1]");
}

double SbmSpec::pair_prob(int i, int j) const {
    const int bi = i / (n / m);
    const int bj = j / (n / m);
    if (generalized()) return block_matrix[static_cast<std::size_t>(bi) * m + bj];
    return bi == bj ? q[bi] : p;
}

void SbmSpec::validate() const {
    if (m < 2) throw BlockSizeError("SBM needs m >= 2 blocks");
    if (n % m != 0 || n / m < 2) throw BlockSizeError("n must be a multiple of m with n/m >= 2");
    if (generalized()) {
        if (block_matrix.size() != static_cast<std::size_t>(m) * m)
            throw ConfigError("block matrix must be m x m");
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                const double v = block_matrix[static_cast<std::size_t>(a) * m + b];
                if (v < 0.0 || v > 1.0) throw ConfigError("block probability outside [0, 1]");
                if (v != block_matrix[static_cast<std::size_t>(b) * m + a])
                    throw ConfigError("block matrix must be symmetric");
            }
    } else {
        if (static_cast<int>(q.size()) != m) throw ConfigError("need one q per block");
        if (p < 0.0 || p > 1.0) throw ConfigError("p outside [0, 1]");
        for (int l = 0; l < m; ++l) {
            if (q[l] < 0.0 || q[l] > 1.0) throw ConfigError("q outside [0, 1]");
            if (l > 0 && q[l] < q[l - 1]) throw ConfigError("q must be ascending");
        }
        if (!(q[0] > p)) throw ConfigError("assortative SBM requires q_1 > p");
    }
}

SamplingPlan SbmSpec::to_plan() const {
    validate();
    SamplingPlan plan;
    plan.n = n;
    plan.base_p = generalized() ? 0.0 : p;
    plan.q.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
    if (generalized()) {
        double lo = 1.0;
        for (double v : block_matrix) lo = std::min(lo, v);
        plan.base_p = lo;
    }
    plan.zero_base_warning = plan.base_p == 0.0;
    std::size_t off = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) plan.q[off++] = pair_prob(i, j);
    return plan;
}

ComparisonGraph gen_semi_random(const SamplingPlan& plan, std::uint64_t seed) {
    plan.validate();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < plan.n; ++i)
        for (int j = i + 1; j < plan.n; ++j) {
            const double u = rng::pair_uniform(seed, i, j, rng::kTagEdgeUniform);
            if (u < plan.prob(i, j)) edges.emplace_back(i, j);
        }
    return ComparisonGraph::from_edges(plan.n, std::move(edges));
}

ComparisonGraph gen_er(int n, double p, std::uint64_t seed) {
    return gen_semi_random(SamplingPlan::uniform(n, p), seed);
}

ComparisonGraph gen_sbm(const SbmSpec& spec, std::uint64_t seed) {
    return gen_semi_random(spec.to_plan(), seed);
}

std::pair<ComparisonGraph, ComparisonGraph> monotone_coupling(const SamplingPlan& plan,
                                                              std::uint64_t seed) {
    plan.validate();
    std::vector<std::pair<int, int>> er_edges;
    std::vector<std::pair<int, int>> sr_edges;
    for (int i = 0; i < plan.n; ++i)
        for (int j = i + 1; j < plan.n; ++j) {
            const double u = rng::pair_uniform(seed, i, j, rng::kTagEdgeUniform);
            if (u < plan.base_p) er_edges.emplace_back(i, j);
            if (u < plan.prob(i, j)) sr_edges.emplace_back(i, j);
        }
    return {ComparisonGraph::from_edges(plan.n, std::move(er_edges)),
            ComparisonGraph::from_edges(plan.n, std::move(sr_edges))};
}

void write_edge_list(std::ostream& os, const ComparisonGraph& graph) {
    os << "n " << graph.n << "\n";
    os << std::setprecision(14);
    for (std::size_t e = 0; e < graph.edges.size(); ++e)
        os << graph.edges[e].first << " " << graph.edges[e].second << " " << graph.weights[e]
           << "\n";
}

ComparisonGraph read_edge_list(std::istream& is) {
    std::string header;
    int n = 0;
    if (!(is >> header >> n) || header != "n") throw IoError("bad edge-list header");
    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;
    int i, j;
    double w;
    while (is >> i >> j >> w) {
        edges.emplace_back(i, j);
        weights.push_back(w);
    }
    return ComparisonGraph::from_edges(n, std::move(edges), std::move(weights));
}

void write_edge_list_file(const std::string& path, const ComparisonGraph& graph) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path + " for writing");
    write_edge_list(os, graph);
}

ComparisonGraph read_edge_list_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path);
    return read_edge_list(is);
}

}  // namespace spectrank
