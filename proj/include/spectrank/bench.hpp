#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spectrank/graphs.hpp"
#include "spectrank/model.hpp"
#include "spectrank/reweight.hpp"

#include "json.hpp"

namespace spectrank {

double rel_linf_error(const std::vector<double>& pi_hat, const std::vector<double>& pi);
double rel_l2_error(const std::vector<double>& pi_hat, const std::vector<double>& pi);

struct VariationCheck {
    bool holds = false;
    double worst_ratio = 0.0;  // max_i n * sum(q_ij^2) / (sum(q_ij))^2
};

// Row-wise variation condition: n * sum_j q_ij^2 <= s * (sum_j q_ij)^2.
VariationCheck check_variation_condition(const SamplingPlan& plan, double s);

// Scalar probability that may depend on n: either a constant or
// factor * log(n) / n.
struct ProbSpec {
    double value = 0.0;
    std::optional<double> logn_factor;

    double resolve(int n) const;
};

struct GraphSpec {
    enum class Kind { Er, Sbm, GeneralizedSbm, Plan } kind = Kind::Er;
    ProbSpec p;                      // ER / SBM cross-block probability
    int m = 0;                       // block count for SBM forms
    std::vector<ProbSpec> q;         // SBM within-block probabilities
    std::vector<ProbSpec> blocks;    // m*m row-major for the generalized form
    SamplingPlan plan;               // explicit plan; fixes n to plan.n

    ComparisonGraph generate(int n, std::uint64_t seed) const;
};

struct ModelSpec {
    std::vector<double> alpha;       // explicit scores, or
    double uniform_log_h = 0.0;      // > 0 selects the seeded log-uniform generator

    BtlModel generate(int n, std::uint64_t seed) const;
};

struct ExperimentConfig {
    std::string name;
    GraphSpec graph;
    ModelSpec model;
    std::vector<int> n_grid;
    int k = 32;
    int trials = 25;
    bool run_unweighted = true;
    bool run_weighted = true;
    std::uint64_t base_seed = 20250823;
    ReweightConfig reweight;
    int threads = 1;

    void validate() const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);  // strict keys
ExperimentConfig preset_experiment1();
ExperimentConfig preset_experiment2();

struct MethodMetrics {
    double rel_linf_error = 0.0;
    double rel_l2_error = 0.0;
    double markov_gap = 0.0;   // canonical Markov matrix gap
    double fiedler = 0.0;
};

struct TrialRecord {
    int n = 0;
    int trial_index = 0;
    std::uint64_t seed = 0;
    bool connected = false;
    std::optional<MethodMetrics> unweighted;
    std::optional<MethodMetrics> weighted;
    double wall_time = 0.0;
    std::string error;  // nonempty when the trial failed fatally
};

struct AggregateRow {
    std::string experiment;
    int n = 0;
    std::string method;
    double median_rel_linf = 0.0;
    double median_rel_l2 = 0.0;
    double median_markov_gap = 0.0;
    double median_fiedler = 0.0;
    double mean_rel_linf = 0.0;   // diagnostics only
    double iqr_rel_linf = 0.0;    // diagnostics only
    int trials_used = 0;
    int trials_discarded = 0;
};

struct ExperimentTable {
    std::vector<TrialRecord> records;
    std::vector<AggregateRow> rows;
    bool had_fatal_error = false;
};

ExperimentTable run_experiment(const ExperimentConfig& config);

// Pinned schema: experiment,n,method,median_rel_linf,median_rel_l2,
// median_markov_gap,median_fiedler,trials_used,trials_discarded
void write_results_csv(std::ostream& os, const ExperimentTable& table);
void write_diagnostics_csv(std::ostream& os, const ExperimentTable& table);

struct ProbeRow {
    int k = 0;
    int n = 0;
    std::string method;
    double median_rel_linf = 0.0;
};

struct ProbeResult {
    std::vector<ProbeRow> rows;
    // Least-squares slope of log(median error) against log(k), per method.
    std::vector<std::pair<std::string, double>> slopes;
};

ProbeResult scaling_probe(const ExperimentConfig& config, const std::vector<int>& k_grid);

void write_probe_csv(std::ostream& os, const ProbeResult& probe);

double median(std::vector<double> values);

}  // namespace spectrank
