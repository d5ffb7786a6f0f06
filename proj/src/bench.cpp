#include "spectrank/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "spectrank/chain.hpp"
#include "spectrank/rng.hpp"
#include "spectrank/spectra.hpp"

namespace spectrank {

double rel_linf_error(const std::vector<double>& pi_hat, const std::vector<double>& pi) {
    if (pi_hat.size() != pi.size()) throw LengthMismatch("vector lengths differ");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        num = std::max(num, std::fabs(pi_hat[i] - pi[i]));
        den = std::max(den, std::fabs(pi[i]));
    }
    if (den == 0.0) throw LengthMismatch("reference vector has zero norm");
    return num / den;
}

double rel_l2_error(const std::vector<double>& pi_hat, const std::vector<double>& pi) {
    if (pi_hat.size() != pi.size()) throw LengthMismatch("vector lengths differ");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        num += (pi_hat[i] - pi[i]) * (pi_hat[i] - pi[i]);
        den += pi[i] * pi[i];
    }
    if (den == 0.0) throw LengthMismatch("reference vector has zero norm");
    return std::sqrt(num / den);
}

VariationCheck check_variation_condition(const SamplingPlan& plan, double s) {
    plan.validate();
    VariationCheck check;
    for (int i = 0; i < plan.n; ++i) {
        double sum_q = 0.0, sum_q2 = 0.0;
        for (int j = 0; j < plan.n; ++j) {
            if (j == i) continue;
            const double q = plan.prob(i, j);
            sum_q += q;
            sum_q2 += q * q;
        }
        if (sum_q2 == 0.0) continue;
        const double ratio = sum_q > 0.0 ? plan.n * sum_q2 / (sum_q * sum_q)
                                         : std::numeric_limits<double>::infinity();
        check.worst_ratio = std::max(check.worst_ratio, ratio);
    }
    check.holds = check.worst_ratio <= s;
    return check;
}

double ProbSpec::resolve(int n) const {
    if (logn_factor) return *logn_factor * std::log(static_cast<double>(n)) / n;
    return value;
}

ComparisonGraph GraphSpec::generate(int n, std::uint64_t seed) const {
    switch (kind) {
        case Kind::Er:
            return gen_er(n, p.resolve(n), seed);
        case Kind::Sbm: {
            SbmSpec spec;
            spec.n = n;
            spec.m = m;
            spec.p = p.resolve(n);
            for (const auto& ql : q) spec.q.push_back(ql.resolve(n));
            return gen_sbm(spec, seed);
        }
        case Kind::GeneralizedSbm: {
            SbmSpec spec;
            spec.n = n;
            spec.m = m;
            for (const auto& b : blocks) spec.block_matrix.push_back(b.resolve(n));
            return gen_sbm(spec, seed);
        }
        case Kind::Plan:
            if (n != plan.n) throw ConfigError("explicit plan fixes n to its own size");
            return gen_semi_random(plan, seed);
    }
    throw ConfigError("unknown graph kind");
}

BtlModel ModelSpec::generate(int n, std::uint64_t seed) const {
    if (!alpha.empty()) {
        if (static_cast<int>(alpha.size()) != n)
            throw ConfigError("explicit alpha length must match n");
        return new_btl_model(alpha);
    }
    if (uniform_log_h > 0.0) return gen_uniform_log_model(n, uniform_log_h, seed);
    throw ConfigError("model spec needs alpha or a uniform_log generator");
}

void ExperimentConfig::validate() const {
    if (n_grid.empty()) throw ConfigError("n_grid must be nonempty");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (k < 1) throw ConfigError("k must be >= 1");
    if (!run_unweighted && !run_weighted) throw ConfigError("methods must be nonempty");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    reweight.validate();
    for (int n : n_grid) {
        if (n < 2) throw ConfigError("every n must be >= 2");
        if ((graph.kind == GraphSpec::Kind::Sbm ||
             graph.kind == GraphSpec::Kind::GeneralizedSbm) &&
            (graph.m < 2 || n % graph.m != 0))
            throw ConfigError("every n must be divisible by the block count");
        if (graph.kind == GraphSpec::Kind::Plan && n != graph.plan.n)
            throw ConfigError("explicit plan requires n_grid == {plan.n}");
    }
}

namespace {

using nlohmann::json;

void require_keys(const json& doc, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (const auto& item : doc.items()) {
        bool ok = false;
        for (const char* key : allowed)
            if (item.key() == key) ok = true;
        if (!ok) throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
    }
}

ProbSpec prob_from_json(const json& value, const std::string& where) {
    ProbSpec spec;
    if (value.is_number()) {
        spec.value = value.get<double>();
    } else if (value.is_object()) {
        require_keys(value, {"logn_factor"}, where);
        spec.logn_factor = value.at("logn_factor").get<double>();
    } else {
        throw ConfigError("probability in " + where + " must be a number or {logn_factor}");
    }
    return spec;
}

GraphSpec graph_from_json(const json& doc) {
    require_keys(doc, {"kind", "p", "m", "q", "blocks", "n", "base_p", "pairs"}, "graph");
    GraphSpec spec;
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "er") {
        spec.kind = GraphSpec::Kind::Er;
        spec.p = prob_from_json(doc.at("p"), "graph.p");
    } else if (kind == "sbm") {
        spec.kind = GraphSpec::Kind::Sbm;
        spec.m = doc.at("m").get<int>();
        spec.p = prob_from_json(doc.at("p"), "graph.p");
        for (const auto& v : doc.at("q")) spec.q.push_back(prob_from_json(v, "graph.q"));
    } else if (kind == "gsbm") {
        spec.kind = GraphSpec::Kind::GeneralizedSbm;
        spec.m = doc.at("m").get<int>();
        for (const auto& row : doc.at("blocks"))
            for (const auto& v : row) spec.blocks.push_back(prob_from_json(v, "graph.blocks"));
        if (spec.blocks.size() != static_cast<std::size_t>(spec.m) * spec.m)
            throw ConfigError("graph.blocks must be m x m");
    } else if (kind == "plan") {
        spec.kind = GraphSpec::Kind::Plan;
        const int n = doc.at("n").get<int>();
        spec.plan = SamplingPlan::uniform(n, doc.at("base_p").get<double>());
        for (const auto& triple : doc.at("pairs"))
            spec.plan.set_prob(triple.at(0).get<int>(), triple.at(1).get<int>(),
                               triple.at(2).get<double>());
        spec.plan.validate();
    } else {
        throw ConfigError("unknown graph kind \"" + kind + "\"");
    }
    return spec;
}

ModelSpec model_spec_from_json(const json& doc) {
    require_keys(doc, {"alpha", "kind", "h"}, "model");
    ModelSpec spec;
    if (doc.contains("alpha")) {
        spec.alpha = doc.at("alpha").get<std::vector<double>>();
    } else {
        if (doc.at("kind").get<std::string>() != "uniform_log")
            throw ConfigError("unknown model kind");
        spec.uniform_log_h = doc.at("h").get<double>();
    }
    return spec;
}

ReweightConfig reweight_from_json(const json& doc) {
    require_keys(doc, {"degree_cap", "degree_floor", "iterations", "step_size"}, "reweight");
    ReweightConfig config;
    if (doc.contains("degree_cap")) config.degree_cap = doc.at("degree_cap").get<double>();
    if (doc.contains("degree_floor")) config.degree_floor = doc.at("degree_floor").get<double>();
    if (doc.contains("iterations")) config.iterations = doc.at("iterations").get<int>();
    if (doc.contains("step_size")) config.step_size = doc.at("step_size").get<double>();
    return config;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
    require_keys(doc,
                 {"name", "graph", "model", "n_grid", "k", "trials", "methods", "base_seed",
                  "reweight", "threads"},
                 "config");
    ExperimentConfig config;
    config.name = doc.at("name").get<std::string>();
    config.graph = graph_from_json(doc.at("graph"));
    config.model = model_spec_from_json(doc.at("model"));
    config.n_grid = doc.at("n_grid").get<std::vector<int>>();
    if (doc.contains("k")) config.k = doc.at("k").get<int>();
    if (doc.contains("trials")) config.trials = doc.at("trials").get<int>();
    if (doc.contains("methods")) {
        config.run_unweighted = false;
        config.run_weighted = false;
        for (const auto& method : doc.at("methods")) {
            const auto name = method.get<std::string>();
            if (name == "unweighted")
                config.run_unweighted = true;
            else if (name == "weighted")
                config.run_weighted = true;
            else
                throw ConfigError("unknown method \"" + name + "\"");
        }
    }
    if (doc.contains("base_seed")) config.base_seed = doc.at("base_seed").get<std::uint64_t>();
    if (doc.contains("reweight")) config.reweight = reweight_from_json(doc.at("reweight"));
    if (doc.contains("threads")) config.threads = doc.at("threads").get<int>();
    config.validate();
    return config;
}

ExperimentConfig preset_experiment1() {
    ExperimentConfig config;
    config.name = "experiment1";
    config.graph.kind = GraphSpec::Kind::GeneralizedSbm;
    config.graph.m = 3;
    ProbSpec one{1.0, std::nullopt}, zero{0.0, std::nullopt};
    ProbSpec logn{0.0, 2.0};
    config.graph.blocks = {one, one, zero, one, logn, logn, zero, logn, logn};
    config.model.uniform_log_h = 8.0;
    config.n_grid = {30, 45, 60, 75, 90, 105, 120, 135};
    config.k = 32;
    config.trials = 25;
    return config;
}

ExperimentConfig preset_experiment2() {
    ExperimentConfig config = preset_experiment1();
    config.name = "experiment2";
    config.graph = GraphSpec{};
    config.graph.kind = GraphSpec::Kind::Er;
    config.graph.p.logn_factor = 2.0;
    return config;
}

double median(std::vector<double> values) {
    if (values.empty()) throw LengthMismatch("median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t h = values.size() / 2;
    return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

namespace {

double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const double pos = q * (values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - lo;
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

TrialRecord run_trial(const ExperimentConfig& config, int n, int trial) {
    TrialRecord record;
    record.n = n;
    record.trial_index = trial;
    record.seed = rng::mix({config.base_seed, static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(trial), rng::kTagTrialSeed});
    const auto start = std::chrono::steady_clock::now();
    try {
        const BtlModel model =
            config.model.generate(n, rng::mix({record.seed, rng::kTagModelGen}));
        const ComparisonGraph graph = config.graph.generate(n, record.seed);
        record.connected = is_connected(graph);
        if (record.connected) {
            const ComparisonDataset dataset =
                sample_comparisons(model, graph, config.k, record.seed);
            if (config.run_unweighted) {
                const RankResult rank = rank_centrality(graph, dataset);
                MethodMetrics metrics;
                metrics.rel_linf_error = rel_linf_error(rank.pi_hat, model.pi);
                metrics.rel_l2_error = rel_l2_error(rank.pi_hat, model.pi);
                metrics.markov_gap =
                    markov_spectral_gap(build_canonical_markov(graph, model), &model);
                metrics.fiedler = fiedler_value(graph);
                record.unweighted = metrics;
            }
            if (config.run_weighted) {
                const WeightedRankResult weighted =
                    weighted_rank_centrality(graph, dataset, config.reweight);
                MethodMetrics metrics;
                metrics.rel_linf_error = rel_linf_error(weighted.pi_hat, model.pi);
                metrics.rel_l2_error = rel_l2_error(weighted.pi_hat, model.pi);
                metrics.markov_gap = markov_spectral_gap(
                    build_canonical_markov(weighted.weighted_graph, model), &model);
                metrics.fiedler = weighted.reweight.achieved_fiedler;
                record.weighted = metrics;
            }
        }
    } catch (const Error& err) {
        record.error = err.what();
    }
    record.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

void aggregate(const ExperimentConfig& config, ExperimentTable& table) {
    for (int n : config.n_grid) {
        for (const std::string method : {"unweighted", "weighted"}) {
            if (method == "unweighted" && !config.run_unweighted) continue;
            if (method == "weighted" && !config.run_weighted) continue;
            std::vector<double> linf, l2, gap, fiedler;
            int discarded = 0;
            for (const TrialRecord& record : table.records) {
                if (record.n != n) continue;
                const auto& metrics =
                    method == "unweighted" ? record.unweighted : record.weighted;
                if (!record.connected || !record.error.empty() || !metrics) {
                    ++discarded;
                    continue;
                }
                linf.push_back(metrics->rel_linf_error);
                l2.push_back(metrics->rel_l2_error);
                gap.push_back(metrics->markov_gap);
                fiedler.push_back(metrics->fiedler);
            }
            AggregateRow row;
            row.experiment = config.name;
            row.n = n;
            row.method = method;
            row.trials_used = static_cast<int>(linf.size());
            row.trials_discarded = discarded;
            if (!linf.empty()) {
                row.median_rel_linf = median(linf);
                row.median_rel_l2 = median(l2);
                row.median_markov_gap = median(gap);
                row.median_fiedler = median(fiedler);
                double total = 0.0;
                for (double v : linf) total += v;
                row.mean_rel_linf = total / linf.size();
                row.iqr_rel_linf = quantile(linf, 0.75) - quantile(linf, 0.25);
            }
            table.rows.push_back(row);
        }
    }
}

}  // namespace

ExperimentTable run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::vector<std::pair<int, int>> tasks;
    for (int n : config.n_grid)
        for (int trial = 0; trial < config.trials; ++trial) tasks.emplace_back(n, trial);

    ExperimentTable table;
    table.records.resize(tasks.size());
    const int workers = std::min<int>(config.threads, static_cast<int>(tasks.size()));
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t)
            table.records[t] = run_trial(config, tasks[t].first, tasks[t].second);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1))
                table.records[t] = run_trial(config, tasks[t].first, tasks[t].second);
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& thread : pool) thread.join();
    }
    for (const TrialRecord& record : table.records)
        if (!record.error.empty()) table.had_fatal_error = true;
    aggregate(config, table);
    return table;
}

void write_results_csv(std::ostream& os, const ExperimentTable& table) {
    os << "experiment,n,method,median_rel_linf,median_rel_l2,median_markov_gap,"
          "median_fiedler,trials_used,trials_discarded\n";
    os.precision(12);
    for (const AggregateRow& row : table.rows)
        os << row.experiment << "," << row.n << "," << row.method << ","
           << row.median_rel_linf << "," << row.median_rel_l2 << ","
           << row.median_markov_gap << "," << row.median_fiedler << "," << row.trials_used
           << "," << row.trials_discarded << "\n";
}

void write_diagnostics_csv(std::ostream& os, const ExperimentTable& table) {
    os << "experiment,n,method,mean_rel_linf,iqr_rel_linf\n";
    os.precision(12);
    for (const AggregateRow& row : table.rows)
        os << row.experiment << "," << row.n << "," << row.method << "," << row.mean_rel_linf
           << "," << row.iqr_rel_linf << "\n";
}

ProbeResult scaling_probe(const ExperimentConfig& config, const std::vector<int>& k_grid) {
    if (k_grid.size() < 2) throw ConfigError("k_grid needs at least two entries");
    for (std::size_t i = 1; i < k_grid.size(); ++i)
        if (k_grid[i] <= k_grid[i - 1]) throw ConfigError("k_grid must be ascending");

    ProbeResult probe;
    for (int k : k_grid) {
        ExperimentConfig cfg = config;
        cfg.k = k;
        const ExperimentTable table = run_experiment(cfg);
        for (const AggregateRow& row : table.rows)
            probe.rows.push_back({k, row.n, row.method, row.median_rel_linf});
    }

    // Least-squares log-log slope per method at the largest n.
    const int n_ref = *std::max_element(config.n_grid.begin(), config.n_grid.end());
    for (const std::string method : {"unweighted", "weighted"}) {
        std::vector<double> xs, ys;
        for (const ProbeRow& row : probe.rows)
            if (row.method == method && row.n == n_ref && row.median_rel_linf > 0.0) {
                xs.push_back(std::log(static_cast<double>(row.k)));
                ys.push_back(std::log(row.median_rel_linf));
            }
        if (xs.size() < 2) continue;
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= xs.size();
        my /= ys.size();
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        probe.slopes.emplace_back(method, sxy / sxx);
    }
    return probe;
}

void write_probe_csv(std::ostream& os, const ProbeResult& probe) {
    os << "k,n,method,median_rel_linf\n";
    os.precision(12);
    for (const ProbeRow& row : probe.rows)
        os << row.k << "," << row.n << "," << row.method << "," << row.median_rel_linf << "\n";
    for (const auto& [method, slope] : probe.slopes)
        os << "# slope," << method << "," << slope << "\n";
}

}  // namespace spectrank
