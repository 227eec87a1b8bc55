#include "metastack/hyperparameters.hpp"

#include "metastack/errors.hpp"

#include <cmath>
#include <limits>

namespace metastack {

namespace {

enum class Kind { integer, real, choice, real_or_choice };

struct ParamSpec {
    std::string name;
    Kind kind;
    double min = -std::numeric_limits<double>::infinity();
    bool min_inclusive = true;
    double max = std::numeric_limits<double>::infinity();
    std::vector<std::string> choices;
    HyperValue fallback;
};

constexpr double inf = std::numeric_limits<double>::infinity();

const std::vector<ParamSpec>& param_table(Algorithm algorithm) {
    static const std::vector<ParamSpec> logistic{
        {"C", Kind::real, 0.0, false, inf, {}, 1.0},
        {"max_iter", Kind::integer, 1, true, 100000, {}, std::int64_t{300}},
        {"learning_rate", Kind::real, 0.0, false, inf, {}, 0.5},
    };
    static const std::vector<ParamSpec> knn{
        {"k", Kind::integer, 1, true, 100000, {}, std::int64_t{5}},
        {"weights", Kind::choice, -inf, true, inf, {"uniform", "distance"}, std::string("uniform")},
    };
    static const std::vector<ParamSpec> tree{
        {"max_depth", Kind::integer, 0, true, 64, {}, std::int64_t{32}},
        {"min_samples_leaf", Kind::integer, 1, true, 100000, {}, std::int64_t{1}},
        {"criterion", Kind::choice, -inf, true, inf, {"gini", "entropy"}, std::string("gini")},
    };
    static const std::vector<ParamSpec> forest{
        {"n_estimators", Kind::integer, 1, true, 5000, {}, std::int64_t{100}},
        {"max_depth", Kind::integer, 0, true, 64, {}, std::int64_t{32}},
        {"min_samples_leaf", Kind::integer, 1, true, 100000, {}, std::int64_t{1}},
        {"max_features", Kind::choice, -inf, true, inf, {"sqrt", "log2", "all"}, std::string("sqrt")},
    };
    static const std::vector<ParamSpec> boosting{
        {"n_estimators", Kind::integer, 1, true, 5000, {}, std::int64_t{50}},
        {"learning_rate", Kind::real, 0.0, false, inf, {}, 0.1},
        {"max_depth", Kind::integer, 1, true, 32, {}, std::int64_t{3}},
        {"subsample", Kind::real, 0.0, false, 1.0, {}, 1.0},
    };
    static const std::vector<ParamSpec> bayes{
        {"var_smoothing", Kind::real, 0.0, true, inf, {}, 1e-9},
    };
    static const std::vector<ParamSpec> mlp{
        {"hidden_units", Kind::integer, 1, true, 4096, {}, std::int64_t{16}},
        {"activation", Kind::choice, -inf, true, inf, {"relu", "tanh"}, std::string("relu")},
        {"alpha", Kind::real, 0.0, true, inf, {}, 1e-4},
        {"learning_rate", Kind::real, 0.0, false, inf, {}, 0.01},
        {"max_iter", Kind::integer, 1, true, 100000, {}, std::int64_t{300}},
    };
    static const std::vector<ParamSpec> svm{
        {"C", Kind::real, 0.0, false, inf, {}, 1.0},
        {"kernel", Kind::choice, -inf, true, inf, {"linear", "rbf"}, std::string("rbf")},
        {"gamma", Kind::real_or_choice, 0.0, false, inf, {"scale"}, std::string("scale")},
        {"max_iter", Kind::integer, 1, true, 100000, {}, std::int64_t{200}},
    };
    switch (algorithm) {
    case Algorithm::logistic_regression: return logistic;
    case Algorithm::k_nearest_neighbors: return knn;
    case Algorithm::decision_tree: return tree;
    case Algorithm::random_forest: return forest;
    case Algorithm::gradient_boosting: return boosting;
    case Algorithm::naive_bayes: return bayes;
    case Algorithm::multilayer_perceptron: return mlp;
    case Algorithm::support_vector_machine: return svm;
    }
    return logistic;
}

std::optional<double> as_number(const HyperValue& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v))
        return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&v))
        return *d;
    return std::nullopt;
}

HyperValue normalize_value(Algorithm algorithm, const ParamSpec& spec, const HyperValue& value) {
    const std::string algo(to_string(algorithm));
    auto fail = [&](const std::string& detail) -> HyperValue {
        throw InvalidHyperparameter(algo, spec.name, detail);
    };
    auto check_range = [&](double x) {
        if (!std::isfinite(x))
            fail("must be finite");
        const bool low_ok = spec.min_inclusive ? x >= spec.min : x > spec.min;
        if (!low_ok || x > spec.max)
            fail("value " + canonical_string({{spec.name, value}}) + " out of range");
    };

    if (spec.kind == Kind::choice || spec.kind == Kind::real_or_choice) {
        if (const auto* s = std::get_if<std::string>(&value)) {
            for (const auto& c : spec.choices)
                if (c == *s)
                    return *s;
            return fail("unknown option '" + *s + "'");
        }
        if (spec.kind == Kind::choice)
            return fail("expected one of the named options");
    }

    const auto number = as_number(value);
    if (!number)
        return fail("expected a number");
    check_range(*number);
    if (spec.kind == Kind::integer) {
        if (std::floor(*number) != *number)
            return fail("expected an integer");
        return static_cast<std::int64_t>(*number);
    }
    return *number;
}

} // namespace

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::logistic_regression: return "logistic_regression";
    case Algorithm::k_nearest_neighbors: return "k_nearest_neighbors";
    case Algorithm::decision_tree: return "decision_tree";
    case Algorithm::random_forest: return "random_forest";
    case Algorithm::gradient_boosting: return "gradient_boosting";
    case Algorithm::naive_bayes: return "naive_bayes";
    case Algorithm::multilayer_perceptron: return "multilayer_perceptron";
    case Algorithm::support_vector_machine: return "support_vector_machine";
    }
    return "unknown";
}

std::string_view algorithm_tag(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::logistic_regression: return "lr";
    case Algorithm::k_nearest_neighbors: return "knn";
    case Algorithm::decision_tree: return "dt";
    case Algorithm::random_forest: return "rf";
    case Algorithm::gradient_boosting: return "gb";
    case Algorithm::naive_bayes: return "nb";
    case Algorithm::multilayer_perceptron: return "mlp";
    case Algorithm::support_vector_machine: return "svm";
    }
    return "model";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (Algorithm a : all_algorithms)
        if (to_string(a) == name || algorithm_tag(a) == name)
            return a;
    return std::nullopt;
}

Hyperparameters normalize_hyperparameters(Algorithm algorithm, const Hyperparameters& params) {
    const auto& table = param_table(algorithm);
    for (const auto& [name, value] : params) {
        bool known = false;
        for (const auto& spec : table)
            known = known || spec.name == name;
        if (!known)
            throw InvalidHyperparameter(std::string(to_string(algorithm)), name, "unknown parameter");
    }
    Hyperparameters out;
    for (const auto& spec : table) {
        const auto it = params.find(spec.name);
        out[spec.name] = it == params.end() ? spec.fallback : normalize_value(algorithm, spec, it->second);
    }
    return out;
}

std::vector<Hyperparameters> default_presets(Algorithm algorithm) {
    std::vector<Hyperparameters> raw;
    switch (algorithm) {
    case Algorithm::logistic_regression:
        raw = {{{"C", 1.0}}, {{"C", 0.1}}};
        break;
    case Algorithm::k_nearest_neighbors:
        raw = {{{"k", std::int64_t{5}}, {"weights", std::string("uniform")}},
               {{"k", std::int64_t{15}}, {"weights", std::string("distance")}}};
        break;
    case Algorithm::decision_tree:
        raw = {{{"max_depth", std::int64_t{3}}, {"criterion", std::string("gini")}},
               {{"max_depth", std::int64_t{10}}, {"criterion", std::string("entropy")},
                {"min_samples_leaf", std::int64_t{2}}}};
        break;
    case Algorithm::random_forest:
        raw = {{{"n_estimators", std::int64_t{50}}, {"max_depth", std::int64_t{8}}},
               {{"n_estimators", std::int64_t{100}}, {"max_features", std::string("all")},
                {"min_samples_leaf", std::int64_t{2}}}};
        break;
    case Algorithm::gradient_boosting:
        raw = {{{"n_estimators", std::int64_t{50}}, {"learning_rate", 0.1}, {"max_depth", std::int64_t{3}}},
               {{"n_estimators", std::int64_t{100}}, {"learning_rate", 0.05}, {"max_depth", std::int64_t{2}},
                {"subsample", 0.8}}};
        break;
    case Algorithm::naive_bayes:
        raw = {{{"var_smoothing", 1e-9}}, {{"var_smoothing", 1e-3}}};
        break;
    case Algorithm::multilayer_perceptron:
        raw = {{{"hidden_units", std::int64_t{16}}, {"activation", std::string("relu")}},
               {{"hidden_units", std::int64_t{32}}, {"activation", std::string("tanh")}, {"alpha", 1e-3}}};
        break;
    case Algorithm::support_vector_machine:
        raw = {{{"C", 1.0}, {"kernel", std::string("rbf")}},
               {{"C", 10.0}, {"kernel", std::string("linear")}}};
        break;
    }
    for (auto& p : raw)
        p = normalize_hyperparameters(algorithm, p);
    return raw;
}

nlohmann::json to_json(const HyperValue& value) {
    return std::visit([](const auto& v) { return nlohmann::json(v); }, value);
}

nlohmann::json to_json(const Hyperparameters& params) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, value] : params)
        j[name] = to_json(value);
    return j;
}

HyperValue hyper_value_from_json(const nlohmann::json& j) {
    if (j.is_boolean())
        return j.get<bool>();
    if (j.is_number_integer())
        return j.get<std::int64_t>();
    if (j.is_number_float())
        return j.get<double>();
    if (j.is_string())
        return j.get<std::string>();
    throw ConfigError("hyperparameter values must be numbers, strings or booleans");
}

Hyperparameters hyperparameters_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw ConfigError("hyperparameters must be a JSON object");
    Hyperparameters out;
    for (const auto& [name, value] : j.items())
        out[name] = hyper_value_from_json(value);
    return out;
}

std::string canonical_string(const Hyperparameters& params) {
    return to_json(params).dump();
}

std::int64_t get_int(const Hyperparameters& params, const std::string& name) {
    return std::get<std::int64_t>(params.at(name));
}

double get_real(const Hyperparameters& params, const std::string& name) {
    const auto& v = params.at(name);
    if (const auto* i = std::get_if<std::int64_t>(&v))
        return static_cast<double>(*i);
    return std::get<double>(v);
}

std::string get_string(const Hyperparameters& params, const std::string& name) {
    return std::get<std::string>(params.at(name));
}

bool holds_string(const Hyperparameters& params, const std::string& name) {
    return std::holds_alternative<std::string>(params.at(name));
}

} // namespace metastack
