#include "fixtures.hpp"

#include "metastack/classifier.hpp"
#include "metastack/metamodels.hpp"
#include "metastack/metrics.hpp"
#include "metastack/serialization.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace fixtures {

using namespace metastack;

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("metastack-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

namespace {

Dataset make_dataset(std::string name, std::vector<std::vector<double>> rows, std::vector<int> labels,
                     std::vector<std::string> class_names) {
    Dataset ds;
    ds.name = std::move(name);
    const std::size_t width = rows.empty() ? 0 : rows[0].size();
    ds.features = Matrix(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j)
            ds.features(i, j) = rows[i][j];
    for (std::size_t j = 0; j < width; ++j)
        ds.feature_names.push_back("x" + std::to_string(j));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "i%03zu", i);
        ds.instance_ids.emplace_back(buf);
    }
    ds.labels = std::move(labels);
    ds.class_names = std::move(class_names);
    ds.validate();
    return ds;
}

} // namespace

Dataset separable_dataset(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    while (rows.size() < n) {
        const double a = rng.uniform(-1.0, 1.0), b = rng.uniform(-1.0, 1.0);
        if (std::abs(a + b) < 0.2)
            continue;
        const int label = a + b > 0 ? 1 : 0;
        // Alternate classes so both stay balanced.
        if (label != static_cast<int>(rows.size() % 2))
            continue;
        rows.push_back({a, b});
        labels.push_back(label);
    }
    return make_dataset("separable", std::move(rows), std::move(labels), {"neg", "pos"});
}

Dataset toy_dataset_20() {
    Rng rng(2024);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 20; ++i) {
        const int label = i % 2;
        const double centre = label == 0 ? -0.5 : 0.5;
        rows.push_back({centre + rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
        labels.push_back(label);
    }
    return make_dataset("toy20", std::move(rows), std::move(labels), {"a", "b"});
}

Dataset one_d_dataset(std::size_t n_per_class) {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (std::size_t i = 0; i < n_per_class; ++i) {
        const double step = static_cast<double>(i + 1) / static_cast<double>(n_per_class);
        rows.push_back({-step});
        labels.push_back(0);
        rows.push_back({step});
        labels.push_back(1);
    }
    return make_dataset("line", std::move(rows), std::move(labels), {"left", "right"});
}

std::string to_csv(const Dataset& ds) {
    std::ostringstream out;
    out << "id";
    for (const auto& f : ds.feature_names)
        out << ',' << f;
    out << ",label\n";
    out.precision(17);
    for (std::size_t i = 0; i < ds.n_instances(); ++i) {
        out << ds.instance_ids[i];
        for (std::size_t j = 0; j < ds.n_features(); ++j)
            out << ',' << ds.features(i, j);
        out << ',' << ds.class_names[static_cast<std::size_t>(ds.labels[i])] << '\n';
    }
    return out.str();
}

MetamodelResult random_result(Rng& rng, const std::vector<int>& labels, int n_classes,
                              const std::string& candidate_id) {
    MetamodelResult r;
    r.candidate.candidate_id = candidate_id;
    r.candidate.algorithm = Algorithm::naive_bayes;
    r.candidate.hyperparameters = normalize_hyperparameters(Algorithm::naive_bayes, {});
    r.candidate.seed = static_cast<std::int64_t>(rng.below(1000000));
    const auto k = static_cast<std::size_t>(n_classes);
    r.oof_probabilities = Matrix(labels.size(), k);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        double sum = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const double v = rng.uniform() + 1e-3;
            r.oof_probabilities(i, c) = v;
            sum += v;
        }
        for (std::size_t c = 0; c < k; ++c)
            r.oof_probabilities(i, c) /= sum;
    }
    r.predicted_labels = argmax_rows(r.oof_probabilities);
    r.correct.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        r.correct[i] = r.predicted_labels[i] == labels[i];
    r.metrics = compute_metrics(labels, r.predicted_labels, r.oof_probabilities);
    r.fit_seconds = rng.uniform();
    return r;
}

ExperimentRecord random_record(Rng& rng) {
    ExperimentRecord rec;
    const int n_classes = 2 + static_cast<int>(rng.below(3));
    const std::size_t n = static_cast<std::size_t>(n_classes) * (2 + rng.below(6));
    for (std::size_t i = 0; i < n; ++i) {
        rec.labels.push_back(static_cast<int>(i % static_cast<std::size_t>(n_classes)));
        rec.instance_ids.push_back("row-" + std::to_string(i) + (i % 3 == 0 ? " \"quoted\", é" : ""));
    }
    rec.config.name = "random-" + std::to_string(rng.below(1000));
    rec.config.dataset = "data/example.csv";
    rec.config.target_column = "label";
    rec.config.k = 2;
    rec.config.seed = static_cast<std::int64_t>(rng.next() >> 1);
    rec.config.include_raw_features = rng.below(2) == 1;
    rec.config.base_specs = default_base_specs(rec.config.seed);
    rec.config.metamodel_grid = default_metamodel_grid();
    for (auto& w : rec.config.metric_weights.weights)
        w = rng.uniform();
    rec.config.metric_weights.weights[0] += 0.5;
    rec.config.problematic = {0.25 + 0.5 * rng.uniform(), 0.1 + 0.8 * rng.uniform()};
    rec.experiment_id = experiment_id(normalize_config(rec.config));
    rec.config = normalize_config(rec.config);
    rec.created_at = utc_timestamp();
    rec.dataset_summary.name = "example";
    rec.dataset_summary.n_instances = n;
    rec.dataset_summary.n_features = 1 + rng.below(10);
    for (int c = 0; c < n_classes; ++c)
        rec.dataset_summary.class_names.push_back("class " + std::to_string(c));
    const std::size_t n_results = 1 + rng.below(4);
    for (std::size_t r = 0; r < n_results; ++r)
        rec.results.push_back(random_result(rng, rec.labels, n_classes, "nb-" + std::to_string(r)));
    if (rng.below(2) == 1)
        rec.failures.push_back({"lr-deadbeef", "training diverged: non-finite weights"});
    return rec;
}

nlohmann::json toy_config_json() {
    return {{"name", "toy"},
            {"dataset_csv", to_csv(toy_dataset_20())},
            {"target_column", "label"},
            {"id_column", "id"},
            {"k", 4},
            {"seed", 11},
            {"base_specs",
             {{{"model_id", "nb"}, {"algorithm", "naive_bayes"}},
              {{"model_id", "knn"}, {"algorithm", "k_nearest_neighbors"}, {"hyperparameters", {{"k", 3}}}}}},
            {"metamodel_grid",
             {{"logistic_regression", {{{"C", 1.0}}, {{"C", 0.1}}}},
              {"decision_tree", {{{"max_depth", 2}}}},
              {"naive_bayes", {nlohmann::json::object()}}}}};
}

ExperimentRecord handmade_record() {
    ExperimentRecord rec;
    rec.config.name = "handmade";
    rec.config.dataset = "data/handmade.csv";
    rec.config.target_column = "label";
    rec.config.k = 2;
    rec.config.seed = 1;
    rec.config.base_specs = {{"nb", Algorithm::naive_bayes, {}, 5}};
    rec.config.metamodel_grid = {{Algorithm::decision_tree, {{}}}, {Algorithm::naive_bayes, {{}}}};
    rec.config = normalize_config(rec.config);
    rec.experiment_id = experiment_id(rec.config);
    rec.created_at = "2026-01-02T03:04:05.000Z";
    rec.dataset_summary = {"handmade", 4, 2, {"no", "yes"}};
    rec.instance_ids = {"w", "x", "y", "z"};
    rec.labels = {0, 1, 0, 1};

    auto make = [&](const std::string& id, Algorithm algo, std::vector<std::vector<double>> rows) {
        MetamodelResult r;
        r.candidate = {id, algo, normalize_hyperparameters(algo, {}), 7};
        r.oof_probabilities = Matrix(4, 2);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t c = 0; c < 2; ++c)
                r.oof_probabilities(i, c) = rows[i][c];
        r.predicted_labels = argmax_rows(r.oof_probabilities);
        for (std::size_t i = 0; i < 4; ++i)
            r.correct.push_back(r.predicted_labels[i] == rec.labels[i]);
        r.metrics = compute_metrics(rec.labels, r.predicted_labels, r.oof_probabilities);
        r.fit_seconds = 0.125;
        return r;
    };
    rec.results.push_back(make("dt-00000001", Algorithm::decision_tree,
                               {{0.75, 0.25}, {0.25, 0.75}, {0.5, 0.5}, {0.125, 0.875}}));
    rec.results.push_back(make("nb-00000002", Algorithm::naive_bayes,
                               {{0.875, 0.125}, {0.625, 0.375}, {0.25, 0.75}, {0.25, 0.75}}));
    rec.failures.push_back({"lr-00000003", "training diverged"});
    return rec;
}

} // namespace fixtures
