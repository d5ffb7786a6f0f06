#include "spectrank/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace spectrank {

namespace {

std::vector<double> eigenvalue_moduli_desc(const Eigen::MatrixXd& m, bool symmetric) {
    std::vector<double> moduli;
    if (symmetric) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw EigensolveFailure("symmetric eigensolve failed");
        for (int i = 0; i < m.rows(); ++i) moduli.push_back(std::fabs(solver.eigenvalues()(i)));
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
        if (solver.info() != Eigen::Success) throw EigensolveFailure("general eigensolve failed");
        for (int i = 0; i < m.rows(); ++i) moduli.push_back(std::abs(solver.eigenvalues()(i)));
    }
    std::sort(moduli.rbegin(), moduli.rend());
    return moduli;
}

Eigen::MatrixXd weighted_adjacency(const ComparisonGraph& graph) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(graph.n, graph.n);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const auto [i, j] = graph.edges[e];
        a(i, j) = a(j, i) = graph.weights[e];
    }
    return a;
}

double second_smallest_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw EigensolveFailure("symmetric eigensolve failed");
    return solver.eigenvalues()(1);  // ascending order
}

}  // namespace

double markov_spectral_gap(const MarkovMatrix& markov, const BtlModel* model) {
    const int n = markov.n;
    Eigen::MatrixXd m(n, n);
    bool symmetric = false;
    if (markov.provenance == Provenance::Canonical && model != nullptr) {
        // Reversibility w.r.t. pi makes D^{1/2} S D^{-1/2} symmetric.
        std::vector<double> root(n);
        for (int i = 0; i < n; ++i) root[i] = std::sqrt(model->pi[i]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = root[i] * markov.entry(i, j) / root[j];
        m = 0.5 * (m + m.transpose().eval());  // scrub roundoff asymmetry
        symmetric = true;
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = markov.entry(i, j);
    }
    const auto moduli = eigenvalue_moduli_desc(m, symmetric);
    return 1.0 - moduli[1];
}

std::vector<double> laplacian(const ComparisonGraph& graph) {
    const int n = graph.n;
    std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const auto [i, j] = graph.edges[e];
        const double w = graph.weights[e];
        l[static_cast<std::size_t>(i) * n + i] += w;
        l[static_cast<std::size_t>(j) * n + j] += w;
        l[static_cast<std::size_t>(i) * n + j] -= w;
        l[static_cast<std::size_t>(j) * n + i] -= w;
    }
    return l;
}

double fiedler_value(const ComparisonGraph& graph) {
    const auto l = laplacian(graph);
    return second_smallest_eigenvalue(
        Eigen::Map<const Eigen::MatrixXd>(l.data(), graph.n, graph.n));
}

double normalized_laplacian_gap(const ComparisonGraph& graph) {
    const auto deg = graph.weighted_degrees();
    for (double d : deg)
        if (!(d > 0.0)) throw IsolatedVertex("normalized Laplacian needs positive degrees");
    Eigen::MatrixXd a = weighted_adjacency(graph);
    Eigen::VectorXd inv_root(graph.n);
    for (int i = 0; i < graph.n; ++i) inv_root(i) = 1.0 / std::sqrt(deg[i]);
    Eigen::MatrixXd lsym = Eigen::MatrixXd::Identity(graph.n, graph.n) -
                           inv_root.asDiagonal() * a * inv_root.asDiagonal();
    return second_smallest_eigenvalue(lsym);
}

double rw_spectral_gap(const ComparisonGraph& graph) {
    if (!is_connected(graph)) throw NotConnected("random-walk gap needs a connected graph");
    const auto deg = graph.weighted_degrees();
    for (double d : deg)
        if (!(d > 0.0)) throw IsolatedVertex("random walk needs positive degrees");
    Eigen::MatrixXd a = weighted_adjacency(graph);
    Eigen::VectorXd inv_root(graph.n);
    for (int i = 0; i < graph.n; ++i) inv_root(i) = 1.0 / std::sqrt(deg[i]);
    Eigen::MatrixXd sym = inv_root.asDiagonal() * a * inv_root.asDiagonal();
    const auto moduli = eigenvalue_moduli_desc(sym, true);
    return 1.0 - moduli[1];
}

double pi_weighted_fiedler(const ComparisonGraph& graph, const BtlModel& model) {
    if (graph.n != model.n()) throw SizeMismatch("graph and model sizes differ");
    const int n = graph.n;
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        const auto [i, j] = graph.edges[e];
        const double c =
            model.pi[i] * model.pi[j] / (model.pi[i] + model.pi[j]) * graph.weights[e];
        l(i, i) += c;
        l(j, j) += c;
        l(i, j) -= c;
        l(j, i) -= c;
    }
    return second_smallest_eigenvalue(l);
}

SpectralReport spectral_report(const ComparisonGraph& graph, const BtlModel* model,
                               std::uint64_t seed) {
    SpectralReport report;
    report.n = graph.n;
    report.seed = seed;
    // Without a model the canonical matrix defaults to uniform scores.
    BtlModel uniform;
    if (model == nullptr) {
        uniform = new_btl_model(std::vector<double>(graph.n, 1.0));
        model = &uniform;
    }
    const MarkovMatrix s = build_canonical_markov(graph, *model);
    report.markov_gap = markov_spectral_gap(s, model);
    report.fiedler = fiedler_value(graph);
    report.normalized_gap = normalized_laplacian_gap(graph);
    report.rw_gap = rw_spectral_gap(graph);
    report.pi_fiedler = pi_weighted_fiedler(graph, *model);
    return report;
}

std::string SpectralReport::csv_header() {
    return "n,seed,markov_gap,fiedler,normalized_gap,rw_gap,pi_fiedler";
}

std::string SpectralReport::csv_row() const {
    std::ostringstream os;
    os.precision(12);
    os << n << "," << seed << "," << markov_gap << "," << fiedler << "," << normalized_gap
       << "," << rw_gap << ",";
    if (pi_fiedler) os << *pi_fiedler;
    return os.str();
}

}  // namespace spectrank
