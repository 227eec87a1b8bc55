#include "cli.hpp"

#include "metastack/api.hpp"
#include "metastack/errors.hpp"
#include "metastack/serialization.hpp"
#include "metastack/store.hpp"
#include "metastack/views.hpp"

#include <CLI11.hpp>

#include <array>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace metastack::cli {

namespace {

int exit_code_for(const Error& e) {
    const auto& code = e.code();
    if (code == "duplicate_experiment")
        return duplicate;
    if (code == "not_found" || code == "unknown_candidate")
        return not_found;
    if (code == "model_training_failure" || code == "io_failure" || code == "schema_validation_error")
        return unexpected;
    return config_error;
}

ExperimentConfig read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

constexpr std::array<const char*, all_metrics.size()> short_metric_names{
    "acc", "bal_acc", "precision", "recall", "f1", "auc", "gmean", "mcc"};

void print_ranking_table(const ExperimentRecord& record, const MetricWeights& weights, std::ostream& out) {
    const auto ranked = rank_candidates(record.results, weights);
    out << std::left << std::setw(5) << "rank" << std::setw(16) << "candidate" << std::setw(24) << "algorithm"
        << std::right << std::setw(8) << "score";
    for (const char* name : short_metric_names)
        out << std::setw(10) << name;
    out << '\n';
    out << std::fixed << std::setprecision(4);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& r = record.results[ranked[i].result_index];
        out << std::left << std::setw(5) << i + 1 << std::setw(16) << ranked[i].candidate_id << std::setw(24)
            << to_string(r.candidate.algorithm) << std::right << std::setw(8) << ranked[i].score;
        for (Metric m : all_metrics) {
            if (const auto v = r.metrics.get(m))
                out << std::setw(10) << *v;
            else
                out << std::setw(10) << "-";
        }
        out << '\n';
    }
    for (const auto& f : record.failures)
        out << "failed: " << f.candidate_id << " (" << f.message << ")\n";
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stacking ensemble workbench: train, rank and compare alternative metamodels"};
    app.require_subcommand(1);
    std::string root = default_store_root().string();

    auto* run_cmd = app.add_subcommand("run", "Run an experiment from a JSON config and save it");
    std::string config_path;
    bool overwrite = false;
    int threads = 0;
    run_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run_cmd->add_option("--out", root, "Experiment store directory");
    run_cmd->add_flag("--overwrite", overwrite, "Replace an existing record with the same id");
    run_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* rank_cmd = app.add_subcommand("rank", "Rank the metamodels of an experiment");
    std::string experiment;
    std::string weights_text;
    std::string format = "table";
    rank_cmd->add_option("experiment_id", experiment)->required();
    rank_cmd->add_option("--weights", weights_text, "metric:weight pairs, e.g. accuracy:0.5,mcc:0.5");
    rank_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json", "csv"}));
    rank_cmd->add_option("--root", root, "Experiment store directory");

    auto* compare_cmd = app.add_subcommand("compare", "Compare two metamodels instance by instance");
    std::string candidate_a, candidate_b;
    std::string compare_format = "json";
    compare_cmd->add_option("experiment_id", experiment)->required();
    compare_cmd->add_option("a", candidate_a)->required();
    compare_cmd->add_option("b", candidate_b)->required();
    compare_cmd->add_option("--format", compare_format)->check(CLI::IsMember({"json", "csv"}));
    compare_cmd->add_option("--root", root, "Experiment store directory");

    auto* problematic_cmd = app.add_subcommand("problematic", "List problematic instances");
    std::optional<double> min_fraction_wrong, confidence_ceiling;
    std::string problematic_format = "text";
    problematic_cmd->add_option("experiment_id", experiment)->required();
    problematic_cmd->add_option("--min-fraction-wrong", min_fraction_wrong);
    problematic_cmd->add_option("--confidence-ceiling", confidence_ceiling);
    problematic_cmd->add_option("--format", problematic_format)->check(CLI::IsMember({"text", "json"}));
    problematic_cmd->add_option("--root", root, "Experiment store directory");

    auto* list_cmd = app.add_subcommand("list", "List saved experiments, newest first");
    list_cmd->add_option("--root", root, "Experiment store directory");

    auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
    std::string host = default_host;
    int port = default_port;
    std::string cors_origin;
    serve_cmd->add_option("--host", host);
    serve_cmd->add_option("--port", port);
    serve_cmd->add_option("--root", root, "Experiment store directory");
    serve_cmd->add_option("--cors-origin", cors_origin, "Allowed browser origin for the UI");
    serve_cmd->add_option("--threads", threads, "Worker threads per experiment run (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*run_cmd) {
            RunOptions options;
            options.threads = threads;
            options.store_root = root;
            options.overwrite = overwrite;
            const auto record = run_experiment(read_config(config_path), options);
            for (const auto& f : record.failures)
                err << "candidate " << f.candidate_id << " failed: " << f.message << '\n';
            out << record.experiment_id << '\n';
        } else if (*rank_cmd) {
            const auto record = load_experiment(root, experiment);
            const MetricWeights weights =
                weights_text.empty() ? record.config.metric_weights : parse_weights(weights_text);
            if (format == "json")
                out << render(ranking_view(record, weights));
            else if (format == "csv")
                out << ranking_csv(record, weights);
            else
                print_ranking_table(record, weights, out);
        } else if (*compare_cmd) {
            const auto record = load_experiment(root, experiment);
            if (compare_format == "csv")
                out << comparison_csv(record, candidate_a, candidate_b);
            else
                out << render(comparison_view(record, candidate_a, candidate_b));
        } else if (*problematic_cmd) {
            const auto record = load_experiment(root, experiment);
            ProblematicCriterion criterion = record.config.problematic;
            if (min_fraction_wrong)
                criterion.min_fraction_wrong = *min_fraction_wrong;
            if (confidence_ceiling)
                criterion.confidence_ceiling = *confidence_ceiling;
            if (problematic_format == "json") {
                out << render(instances_view(record, true, criterion));
            } else {
                const auto set = find_problematic(record.results, record.instance_ids, criterion);
                for (const auto& s : set.instances)
                    out << s.instance_id << '\t' << format_number(s.fraction_wrong) << '\t'
                        << format_number(s.mean_confidence) << '\n';
            }
        } else if (*list_cmd) {
            const auto listing = list_experiments(root);
            for (const auto& e : listing.experiments)
                out << e.experiment_id << '\t' << e.created_at << '\t' << e.dataset_summary.name << '\t'
                    << e.dataset_summary.n_instances << '\n';
            for (const auto& w : listing.warnings)
                err << "warning: " << w.file << ": " << w.message << '\n';
        } else if (*serve_cmd) {
            ApiOptions options;
            options.store_root = root;
            options.cors_origin = cors_origin;
            options.threads = threads;
            ApiService service(options);
            if (!serve(service, host, port)) {
                err << "error: cannot bind " << host << ':' << port << '\n';
                return unexpected;
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return unexpected;
    }
    return ok;
}

} // namespace metastack::cli
