#include "spectrank/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <Eigen/Dense>

#include "spectrank/kernels.hpp"

namespace spectrank {

namespace {

MarkovMatrix build_markov(const ComparisonGraph& graph,
                          const std::vector<double>& edge_probs, Provenance provenance) {
    if (graph.edge_count() == 0) throw EmptyGraph("Markov matrix needs at least one edge");
    const auto stats = degree_stats(graph);
    if (!(stats.d_max > 0.0)) throw EmptyGraph("maximum weighted degree must be positive");

    MarkovMatrix markov;
    markov.n = graph.n;
    markov.d = stats.d_max;
    markov.provenance = provenance;
    markov.s.assign(static_cast<std::size_t>(graph.n) * graph.n, 0.0);

    std::vector<double> row_mass(graph.n, 0.0);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const auto [i, j] = graph.edges[e];
        const double w = graph.weights[e];
        const double p_ij = edge_probs[e];        // prob j beats i
        const double p_ji = 1.0 - p_ij;
        markov.s[static_cast<std::size_t>(i) * graph.n + j] = p_ij * w / markov.d;
        markov.s[static_cast<std::size_t>(j) * graph.n + i] = p_ji * w / markov.d;
        row_mass[i] += p_ij * w;
        row_mass[j] += p_ji * w;
    }
    for (int i = 0; i < graph.n; ++i)
        markov.s[static_cast<std::size_t>(i) * graph.n + i] = 1.0 - row_mass[i] / markov.d;
    return markov;
}

}  // namespace

MarkovMatrix build_canonical_markov(const ComparisonGraph& graph, const BtlModel& model) {
    if (graph.n != model.n()) throw SizeMismatch("graph and model sizes differ");
    std::vector<double> probs(graph.edge_count());
    for (std::size_t e = 0; e < graph.edges.size(); ++e)
        probs[e] = pref_prob(model, graph.edges[e].first, graph.edges[e].second);
    return build_markov(graph, probs, Provenance::Canonical);
}

MarkovMatrix build_empirical_markov(const ComparisonGraph& graph,
                                    const ComparisonDataset& dataset) {
    if (graph.n != dataset.n || graph.edges != dataset.edges)
        throw EdgeSetMismatch("dataset edge set must equal graph edge set");
    std::vector<double> probs(graph.edge_count());
    for (std::size_t e = 0; e < graph.edges.size(); ++e) probs[e] = dataset.p_hat(e);
    return build_markov(graph, probs, Provenance::Empirical);
}

std::vector<double> stationary_distribution(const MarkovMatrix& markov, double tol,
                                            long max_iters) {
    const int n = markov.n;
    std::vector<double> v(n, 1.0 / n);
    std::vector<double> next(n);
    for (long iter = 0; iter < max_iters; ++iter) {
        kernels::left_matvec(v.data(), markov.s.data(), next.data(), n);
        const double residual = kernels::l1_diff(v.data(), next.data(), n);
        const double total = kernels::sum(next.data(), n);
        kernels::scale(next.data(), 1.0 / total, n);
        v.swap(next);
        if (residual <= tol) return v;
    }
    throw NoConvergence(max_iters);
}

std::vector<double> stationary_exact(const MarkovMatrix& markov) {
    const int n = markov.n;
    // v^T (S - I) = 0 with one equation replaced by the normalization sum(v) = 1.
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = markov.entry(j, i) - (i == j ? 1.0 : 0.0);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    a.row(n - 1).setOnes();
    rhs(n - 1) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) throw SingularSystem("Markov chain is reducible");
    const Eigen::VectorXd v = lu.solve(rhs);
    return {v.data(), v.data() + n};
}

std::vector<int> ranking_from_scores(const std::vector<double>& scores) {
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    return order;
}

RankResult rank_centrality(const ComparisonGraph& graph, const ComparisonDataset& dataset,
                           double tol, long max_iters) {
    if (!is_connected(graph)) throw NotConnected("rank centrality needs a connected graph");
    const MarkovMatrix markov = build_empirical_markov(graph, dataset);
    RankResult result;
    result.pi_hat = stationary_distribution(markov, tol, max_iters);
    result.ranking = ranking_from_scores(result.pi_hat);
    return result;
}

void write_markov_csv(std::ostream& os, const MarkovMatrix& markov) {
    os << "n," << markov.n << ",d," << markov.d << "\n";
    os.precision(12);
    for (int i = 0; i < markov.n; ++i) {
        for (int j = 0; j < markov.n; ++j) {
            if (j) os << ",";
            os << markov.entry(i, j);
        }
        os << "\n";
    }
}

}  // namespace spectrank
