#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectrank/chain.hpp"
#include "spectrank/graphs.hpp"
#include "spectrank/model.hpp"

namespace spectrank {

// Gap conventions: Markov and random-walk matrices order eigenvalues by
// modulus descending (gap = 1 - |lambda_2|); Laplacians by algebraic value
// ascending (Fiedler value = second smallest).
struct SpectralReport {
    int n = 0;
    std::uint64_t seed = 0;
    double markov_gap = 0.0;
    double fiedler = 0.0;
    double normalized_gap = 0.0;
    double rw_gap = 0.0;
    std::optional<double> pi_fiedler;

    // One CSV row: n, seed, markov_gap, fiedler, normalized_gap, rw_gap, pi_fiedler.
    std::string csv_row() const;
    static std::string csv_header();
};

// 1 - |lambda_2(S)|. Canonical matrices are reversible w.r.t. pi and are
// solved through the symmetrization D_pi^{1/2} S D_pi^{-1/2}; empirical
// matrices go through a dense general eigensolve.
double markov_spectral_gap(const MarkovMatrix& markov, const BtlModel* model = nullptr);

std::vector<double> laplacian(const ComparisonGraph& graph);  // dense row-major n*n
double fiedler_value(const ComparisonGraph& graph);

// Second smallest eigenvalue of I - D^{-1/2} A D^{-1/2} on the weighted adjacency.
double normalized_laplacian_gap(const ComparisonGraph& graph);

// 1 - |lambda_2(D^{-1} A)| via the similar symmetric form.
double rw_spectral_gap(const ComparisonGraph& graph);

// Fiedler value of the pi-weighted Laplacian with edge coefficients
// pi_i pi_j / (pi_i + pi_j) * w_ij.
double pi_weighted_fiedler(const ComparisonGraph& graph, const BtlModel& model);

SpectralReport spectral_report(const ComparisonGraph& graph, const BtlModel* model,
                               std::uint64_t seed);

}  // namespace spectrank
