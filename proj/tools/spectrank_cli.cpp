// Command-line harness: graph generation, (weighted) rank centrality,
// spectral diagnostics, and the Monte Carlo experiment runner.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "spectrank/bench.hpp"
#include "spectrank/chain.hpp"
#include "spectrank/graphs.hpp"
#include "spectrank/kernels.hpp"
#include "spectrank/model.hpp"
#include "spectrank/reweight.hpp"
#include "spectrank/rng.hpp"
#include "spectrank/spectra.hpp"

namespace {

using spectrank::ConfigError;

nlohmann::json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    nlohmann::json doc;
    is >> doc;
    return doc;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open output file " + path);
    return os;
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
    } else {
        open_out(out) << text;
    }
}

struct CommonOpts {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config, "JSON configuration file");
    cmd->add_option("--out", opts.out, "output file (default: stdout)");
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--threads", opts.threads, "worker threads for trial sweeps");
}

int run(int argc, char** argv) {
    CLI::App app{"spectral ranking of pairwise comparisons with edge reweighting"};
    app.require_subcommand(1);
    bool scalar_only = false;
    app.add_flag("--scalar-kernels", scalar_only, "force the scalar reference kernels");

    CommonOpts generate_opts;
    auto* generate = app.add_subcommand("generate", "sample a comparison graph to an edge list");
    add_common(generate, generate_opts);
    int gen_n = 0;
    generate->add_option("--n", gen_n, "node count (required unless the plan fixes it)");

    CommonOpts rank_opts;
    auto* rank = app.add_subcommand("rank", "estimate scores from an edge list and a dataset");
    add_common(rank, rank_opts);
    std::string rank_graph, rank_dataset, rank_model;
    int rank_k = 32;
    bool rank_weighted = false;
    rank->add_option("--graph", rank_graph, "edge-list file")->required();
    rank->add_option("--dataset", rank_dataset, "comparison dataset file");
    rank->add_option("--model", rank_model, "model JSON; samples a dataset when none is given");
    rank->add_option("--k", rank_k, "comparisons per pair when sampling");
    rank->add_flag("--weighted", rank_weighted, "run the reweighted pipeline");

    CommonOpts reweight_opts;
    auto* reweight = app.add_subcommand("reweight", "optimize edge weights for the Fiedler value");
    add_common(reweight, reweight_opts);
    std::string rw_graph, rw_heatmap;
    spectrank::ReweightConfig rw_config;
    reweight->add_option("--graph", rw_graph, "edge-list file")->required();
    reweight->add_option("--degree-cap", rw_config.degree_cap, "maximum weighted degree");
    reweight->add_option("--degree-floor", rw_config.degree_floor, "minimum weighted degree");
    reweight->add_option("--iterations", rw_config.iterations, "MMWU iterations");
    reweight->add_option("--step-size", rw_config.step_size, "MMWU step size");
    reweight->add_option("--heatmap", rw_heatmap, "write an all-pairs weight CSV here");

    CommonOpts spectra_opts;
    auto* spectra = app.add_subcommand("spectra", "spectral diagnostics of an edge list");
    add_common(spectra, spectra_opts);
    std::string sp_graph, sp_model;
    spectra->add_option("--graph", sp_graph, "edge-list file")->required();
    spectra->add_option("--model", sp_model, "model JSON (defaults to uniform scores)");

    CommonOpts experiment_opts;
    auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo sweep to CSV");
    add_common(experiment, experiment_opts);
    std::string preset;
    int exp_k = 0, exp_trials = 0;
    experiment->add_option("--preset", preset, "experiment1 or experiment2");
    experiment->add_option("--k", exp_k, "override comparisons per pair");
    experiment->add_option("--trials", exp_trials, "override trial count");

    CommonOpts probe_opts;
    auto* probe = app.add_subcommand("probe-k", "median error scaling over a k grid");
    add_common(probe, probe_opts);
    std::string probe_preset, probe_kgrid;
    probe->add_option("--preset", probe_preset, "experiment1 or experiment2");
    probe->add_option("--k-grid", probe_kgrid, "comma-separated ascending k values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (scalar_only) spectrank::kernels::force_isa(spectrank::kernels::Isa::Scalar);

    auto preset_or_config = [](const std::string& name, const std::string& config_path) {
        if (!name.empty()) {
            if (name == "experiment1") return spectrank::preset_experiment1();
            if (name == "experiment2") return spectrank::preset_experiment2();
            throw ConfigError("unknown preset \"" + name + "\"");
        }
        if (config_path.empty()) throw ConfigError("need --preset or --config");
        return spectrank::experiment_config_from_json(load_json(config_path));
    };

    if (*generate) {
        if (generate_opts.config.empty()) throw ConfigError("generate needs --config");
        const auto doc = load_json(generate_opts.config);
        const spectrank::GraphSpec spec =
            spectrank::experiment_config_from_json(nlohmann::json{
                {"name", "generate"},
                {"graph", doc.at("graph")},
                {"model", {{"kind", "uniform_log"}, {"h", 1.0}}},
                {"n_grid", {doc.contains("n") ? doc.at("n").get<int>() : gen_n}}}).graph;
        const int n = doc.contains("n") ? doc.at("n").get<int>() : gen_n;
        if (n < 2) throw ConfigError("generate needs n >= 2 (via --n or config)");
        const auto graph = spec.generate(n, generate_opts.seed);
        std::ostringstream os;
        spectrank::write_edge_list(os, graph);
        emit(generate_opts.out, os.str());
        return 0;
    }

    if (*rank) {
        const auto graph = spectrank::read_edge_list_file(rank_graph);
        spectrank::ComparisonDataset dataset;
        if (!rank_dataset.empty()) {
            std::ifstream is(rank_dataset);
            if (!is) throw ConfigError("cannot open dataset " + rank_dataset);
            dataset = spectrank::read_dataset(is);
        } else if (!rank_model.empty()) {
            const auto model = spectrank::model_from_json(load_json(rank_model));
            dataset = spectrank::sample_comparisons(model, graph, rank_k, rank_opts.seed);
        } else {
            throw ConfigError("rank needs --dataset or --model");
        }
        std::ostringstream os;
        os.precision(12);
        if (rank_weighted) {
            spectrank::ReweightConfig config;
            const auto result = spectrank::weighted_rank_centrality(graph, dataset, config);
            os << "item,pi_hat,rank\n";
            for (int i = 0; i < graph.n; ++i)
                os << i << "," << result.pi_hat[i] << ","
                   << std::find(result.ranking.begin(), result.ranking.end(), i) -
                          result.ranking.begin()
                   << "\n";
        } else {
            const auto result = spectrank::rank_centrality(graph, dataset);
            os << "item,pi_hat,rank\n";
            for (int i = 0; i < graph.n; ++i)
                os << i << "," << result.pi_hat[i] << ","
                   << std::find(result.ranking.begin(), result.ranking.end(), i) -
                          result.ranking.begin()
                   << "\n";
        }
        emit(rank_opts.out, os.str());
        return 0;
    }

    if (*reweight) {
        const auto graph = spectrank::read_edge_list_file(rw_graph);
        const auto result = spectrank::mmwu_reweight(graph, rw_config);
        const auto weighted = spectrank::apply_weights(graph, result.weights);
        std::ostringstream os;
        spectrank::write_edge_list(os, weighted);
        emit(reweight_opts.out, os.str());
        if (!rw_heatmap.empty()) {
            auto hm = open_out(rw_heatmap);
            spectrank::write_heatmap_csv(hm, weighted);
        }
        std::cerr << "achieved_fiedler " << result.achieved_fiedler << " feasible "
                  << (result.feasible ? "true" : "false") << "\n";
        return 0;
    }

    if (*spectra) {
        const auto graph = spectrank::read_edge_list_file(sp_graph);
        spectrank::BtlModel model;
        const spectrank::BtlModel* model_ptr = nullptr;
        if (!sp_model.empty()) {
            model = spectrank::model_from_json(load_json(sp_model));
            model_ptr = &model;
        }
        const auto report = spectrank::spectral_report(graph, model_ptr, spectra_opts.seed);
        emit(spectra_opts.out,
             spectrank::SpectralReport::csv_header() + "\n" + report.csv_row() + "\n");
        return 0;
    }

    if (*experiment) {
        auto config = preset_or_config(preset, experiment_opts.config);
        if (exp_k > 0) config.k = exp_k;
        if (exp_trials > 0) config.trials = exp_trials;
        if (experiment->count("--seed")) config.base_seed = experiment_opts.seed;
        config.threads = experiment_opts.threads;
        const auto table = spectrank::run_experiment(config);
        std::ostringstream os;
        spectrank::write_results_csv(os, table);
        emit(experiment_opts.out, os.str());
        if (!experiment_opts.out.empty()) {
            auto diag = open_out(experiment_opts.out + ".diag.csv");
            spectrank::write_diagnostics_csv(diag, table);
        }
        return table.had_fatal_error ? 3 : 0;
    }

    if (*probe) {
        auto config = preset_or_config(probe_preset, probe_opts.config);
        if (probe->count("--seed")) config.base_seed = probe_opts.seed;
        config.threads = probe_opts.threads;
        std::vector<int> k_grid;
        std::stringstream ss(probe_kgrid);
        for (std::string part; std::getline(ss, part, ',');) k_grid.push_back(std::stoi(part));
        const auto result = spectrank::scaling_probe(config, k_grid);
        std::ostringstream os;
        spectrank::write_probe_csv(os, result);
        emit(probe_opts.out, os.str());
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const spectrank::IoError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const spectrank::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
}
