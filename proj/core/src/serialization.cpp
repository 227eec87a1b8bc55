#include "metastack/serialization.hpp"

#include "metastack/errors.hpp"
#include "metastack/hash.hpp"

#include <set>

namespace metastack {

using nlohmann::json;

namespace {

const std::set<std::string>& config_keys() {
    static const std::set<std::string> keys{
        "name", "dataset", "dataset_csv", "target_column", "id_column", "delimiter", "k", "seed",
        "include_raw_features", "base_specs", "metamodel_grid", "metric_weights", "problematic"};
    return keys;
}

template <typename T>
T field(const json& j, const char* key, const char* what) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("'") + key + "' must be " + what);
    }
}

Matrix matrix_from_json(const json& j) {
    const auto& rows = j;
    if (!rows.is_array())
        throw SchemaValidationError("matrix must be an array of rows");
    if (rows.empty())
        return {};
    const std::size_t cols = rows.at(0).size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!r.is_array() || r.size() != cols)
            throw SchemaValidationError("ragged matrix");
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = r[c].get<double>();
    }
    return m;
}

std::optional<double> optional_number(const json& j) {
    if (j.is_null())
        return std::nullopt;
    return j.get<double>();
}

MetricVector metrics_from_json(const json& j) {
    MetricVector m;
    for (Metric metric : all_metrics)
        m.set(metric, optional_number(j.at(std::string(to_string(metric)))));
    return m;
}

Algorithm algorithm_from(const std::string& name) {
    auto a = parse_algorithm(name);
    if (!a)
        throw ConfigError("unknown algorithm: '" + name + "'");
    return *a;
}

MetamodelCandidate candidate_from_json(const json& j) {
    MetamodelCandidate c;
    c.candidate_id = j.at("candidate_id").get<std::string>();
    c.algorithm = algorithm_from(j.at("algorithm").get<std::string>());
    c.hyperparameters = hyperparameters_from_json(j.at("hyperparameters"));
    c.seed = j.at("seed").get<std::int64_t>();
    return c;
}

MetamodelResult result_from_json(const json& j) {
    MetamodelResult r;
    r.candidate = candidate_from_json(j.at("candidate"));
    r.oof_probabilities = matrix_from_json(j.at("oof_probabilities"));
    r.predicted_labels = j.at("predicted_labels").get<std::vector<int>>();
    for (const auto& b : j.at("correct"))
        r.correct.push_back(b.get<bool>());
    r.metrics = metrics_from_json(j.at("metrics"));
    r.fit_seconds = j.at("fit_seconds").get<double>();
    const std::size_t n = r.predicted_labels.size();
    if (r.correct.size() != n || r.oof_probabilities.rows() != n)
        throw SchemaValidationError("result '" + r.candidate.candidate_id + "' has inconsistent lengths");
    return r;
}

} // namespace

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object())
        throw ConfigError("experiment config must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!config_keys().contains(key))
            throw ConfigError("unknown config key: '" + key + "'");
    if (!j.contains("target_column") || !j["target_column"].is_string() ||
        j["target_column"].get<std::string>().empty())
        throw ConfigError("missing_target", "config must name a target_column");

    ExperimentConfig c;
    c.target_column = j["target_column"].get<std::string>();
    if (j.contains("name"))
        c.name = field<std::string>(j, "name", "a string");
    if (j.contains("dataset"))
        c.dataset = field<std::string>(j, "dataset", "a string");
    if (j.contains("dataset_csv"))
        c.dataset_csv = field<std::string>(j, "dataset_csv", "a string");
    if (j.contains("id_column"))
        c.id_column = field<std::string>(j, "id_column", "a string");
    if (j.contains("delimiter")) {
        const auto d = field<std::string>(j, "delimiter", "a one-character string");
        if (d.size() != 1)
            throw ConfigError("'delimiter' must be a one-character string");
        c.delimiter = d[0];
    }
    if (j.contains("k"))
        c.k = field<int>(j, "k", "an integer");
    if (j.contains("seed"))
        c.seed = field<std::int64_t>(j, "seed", "an integer");
    if (j.contains("include_raw_features"))
        c.include_raw_features = field<bool>(j, "include_raw_features", "a boolean");

    if (j.contains("base_specs")) {
        const auto& specs = j["base_specs"];
        if (!specs.is_array())
            throw ConfigError("'base_specs' must be an array");
        for (const auto& s : specs) {
            if (!s.is_object())
                throw ConfigError("each base spec must be an object");
            BaseModelSpec spec;
            spec.model_id = field<std::string>(s, "model_id", "a string");
            spec.algorithm = algorithm_from(field<std::string>(s, "algorithm", "a string"));
            if (s.contains("hyperparameters"))
                spec.hyperparameters = hyperparameters_from_json(s["hyperparameters"]);
            spec.seed = s.contains("seed")
                            ? field<std::int64_t>(s, "seed", "an integer")
                            : static_cast<std::int64_t>(derive_seed(spec.model_id, static_cast<std::uint64_t>(c.seed)));
            c.base_specs.push_back(std::move(spec));
        }
    }

    if (j.contains("metamodel_grid")) {
        const auto& grid = j["metamodel_grid"];
        if (!grid.is_object())
            throw ConfigError("'metamodel_grid' must be an object of algorithm -> list");
        for (const auto& [name, list] : grid.items()) {
            if (!list.is_array())
                throw ConfigError("grid entry '" + name + "' must be a list of hyperparameter maps");
            auto& entries = c.metamodel_grid[algorithm_from(name)];
            for (const auto& params : list)
                entries.push_back(hyperparameters_from_json(params));
        }
        std::size_t total = 0;
        for (const auto& [a, list] : c.metamodel_grid)
            total += list.size();
        if (total == 0)
            throw EmptyGrid();
    }

    if (j.contains("metric_weights")) {
        const auto& w = j["metric_weights"];
        if (!w.is_object())
            throw ConfigError("'metric_weights' must be an object of metric -> weight");
        MetricWeights weights;
        for (const auto& [name, value] : w.items()) {
            const auto metric = parse_metric(name);
            if (!metric)
                throw UnknownMetric(name);
            if (!value.is_number())
                throw ConfigError("weight for '" + name + "' must be a number");
            weights[*metric] = value.get<double>();
        }
        c.metric_weights = weights;
    }

    if (j.contains("problematic")) {
        const auto& p = j["problematic"];
        if (!p.is_object())
            throw ConfigError("'problematic' must be an object");
        if (p.contains("min_fraction_wrong"))
            c.problematic.min_fraction_wrong = field<double>(p, "min_fraction_wrong", "a number");
        if (p.contains("confidence_ceiling"))
            c.problematic.confidence_ceiling = field<double>(p, "confidence_ceiling", "a number");
    }
    return c;
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["name"] = c.name;
    j["dataset"] = c.dataset;
    j["dataset_csv"] = c.dataset_csv;
    j["target_column"] = c.target_column;
    j["id_column"] = c.id_column;
    j["delimiter"] = std::string(1, c.delimiter);
    j["k"] = c.k;
    j["seed"] = c.seed;
    j["include_raw_features"] = c.include_raw_features;
    j["base_specs"] = json::array();
    for (const auto& s : c.base_specs)
        j["base_specs"].push_back({{"model_id", s.model_id},
                                   {"algorithm", std::string(to_string(s.algorithm))},
                                   {"hyperparameters", to_json(s.hyperparameters)},
                                   {"seed", s.seed}});
    j["metamodel_grid"] = json::object();
    for (const auto& [a, list] : c.metamodel_grid) {
        json entries = json::array();
        for (const auto& p : list)
            entries.push_back(to_json(p));
        j["metamodel_grid"][std::string(to_string(a))] = std::move(entries);
    }
    j["metric_weights"] = to_json(c.metric_weights);
    j["problematic"] = {{"min_fraction_wrong", c.problematic.min_fraction_wrong},
                        {"confidence_ceiling", c.problematic.confidence_ceiling}};
    return j;
}

json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        rows.push_back(json(std::vector<double>(r.begin(), r.end())));
    }
    return rows;
}

json to_json(const MetricVector& m) {
    json j = json::object();
    for (Metric metric : all_metrics) {
        const auto v = m.get(metric);
        j[std::string(to_string(metric))] = v ? json(*v) : json(nullptr);
    }
    return j;
}

json to_json(const MetricWeights& w) {
    json j = json::object();
    for (Metric metric : all_metrics)
        j[std::string(to_string(metric))] = w[metric];
    return j;
}

json to_json(const MetamodelCandidate& c) {
    return {{"candidate_id", c.candidate_id},
            {"algorithm", std::string(to_string(c.algorithm))},
            {"hyperparameters", to_json(c.hyperparameters)},
            {"seed", c.seed}};
}

json to_json(const MetamodelResult& r) {
    json correct = json::array();
    for (bool b : r.correct)
        correct.push_back(b);
    return {{"candidate", to_json(r.candidate)},
            {"oof_probabilities", to_json(r.oof_probabilities)},
            {"predicted_labels", r.predicted_labels},
            {"correct", std::move(correct)},
            {"metrics", to_json(r.metrics)},
            {"fit_seconds", r.fit_seconds}};
}

json to_json(const DatasetSummary& s) {
    return {{"name", s.name},
            {"n_instances", s.n_instances},
            {"n_features", s.n_features},
            {"class_names", s.class_names}};
}

json to_json(const ExperimentRecord& r) {
    json results = json::array();
    for (const auto& res : r.results)
        results.push_back(to_json(res));
    json failures = json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"candidate_id", f.candidate_id}, {"message", f.message}});
    return {{"experiment_id", r.experiment_id},
            {"schema_version", r.schema_version},
            {"created_at", r.created_at},
            {"config", to_json(r.config)},
            {"dataset_summary", to_json(r.dataset_summary)},
            {"instances", {{"ids", r.instance_ids}, {"labels", r.labels}}},
            {"results", std::move(results)},
            {"failures", std::move(failures)}};
}

ExperimentRecord record_from_json(const json& j) {
    try {
        if (!j.is_object())
            throw SchemaValidationError("record must be a JSON object");
        ExperimentRecord r;
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != schema_version)
            throw SchemaValidationError("unsupported schema_version " + std::to_string(r.schema_version));
        r.experiment_id = j.at("experiment_id").get<std::string>();
        r.created_at = j.at("created_at").get<std::string>();
        r.config = config_from_json(j.at("config"));
        const auto& s = j.at("dataset_summary");
        r.dataset_summary.name = s.at("name").get<std::string>();
        r.dataset_summary.n_instances = s.at("n_instances").get<std::size_t>();
        r.dataset_summary.n_features = s.at("n_features").get<std::size_t>();
        r.dataset_summary.class_names = s.at("class_names").get<std::vector<std::string>>();
        r.instance_ids = j.at("instances").at("ids").get<std::vector<std::string>>();
        r.labels = j.at("instances").at("labels").get<std::vector<int>>();
        if (r.instance_ids.size() != r.labels.size())
            throw SchemaValidationError("instance ids and labels differ in length");
        for (const auto& res : j.at("results")) {
            r.results.push_back(result_from_json(res));
            if (r.results.back().predicted_labels.size() != r.labels.size())
                throw SchemaValidationError("result length does not match the instance list");
        }
        for (const auto& f : j.at("failures"))
            r.failures.push_back({f.at("candidate_id").get<std::string>(), f.at("message").get<std::string>()});
        return r;
    } catch (const SchemaValidationError&) {
        throw;
    } catch (const json::exception& e) {
        throw SchemaValidationError(std::string("malformed experiment record: ") + e.what());
    } catch (const Error& e) {
        throw SchemaValidationError(std::string("invalid experiment record: ") + e.what());
    } catch (const std::exception& e) {
        throw SchemaValidationError(std::string("invalid experiment record: ") + e.what());
    }
}

json stable_json(const ExperimentRecord& record) {
    json j = to_json(record);
    j.erase("created_at");
    for (auto& res : j["results"])
        res.erase("fit_seconds");
    return j;
}

} // namespace metastack
