#pragma once

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace metastack {

/// Learning algorithms available to both the base layer and the metamodel
/// grid. The enumerator order is the canonical candidate order.
enum class Algorithm {
    logistic_regression,
    k_nearest_neighbors,
    decision_tree,
    random_forest,
    gradient_boosting,
    naive_bayes,
    multilayer_perceptron,
    support_vector_machine,
};

inline constexpr std::array<Algorithm, 8> all_algorithms{
    Algorithm::logistic_regression, Algorithm::k_nearest_neighbors,
    Algorithm::decision_tree,       Algorithm::random_forest,
    Algorithm::gradient_boosting,   Algorithm::naive_bayes,
    Algorithm::multilayer_perceptron, Algorithm::support_vector_machine,
};

std::string_view to_string(Algorithm algorithm);

/// Short, stable prefix used in candidate ids ("knn", "rf", ...).
std::string_view algorithm_tag(Algorithm algorithm);

std::optional<Algorithm> parse_algorithm(std::string_view name);

using HyperValue = std::variant<bool, std::int64_t, double, std::string>;
using Hyperparameters = std::map<std::string, HyperValue>;

/// Checks names and values against the algorithm's parameter table, coerces
/// integral reals and integer-valued doubles to the declared kind, and fills
/// every omitted parameter with its default. Two maps that configure the same
/// model normalize to the same value.
/// Throws InvalidHyperparameter on unknown names or out-of-range values.
Hyperparameters normalize_hyperparameters(Algorithm algorithm, const Hyperparameters& params);

/// The two built-in presets per algorithm, already normalized.
std::vector<Hyperparameters> default_presets(Algorithm algorithm);

/// Deterministic text form: sorted keys, shortest round-trip numbers.
std::string canonical_string(const Hyperparameters& params);

nlohmann::json to_json(const HyperValue& value);
nlohmann::json to_json(const Hyperparameters& params);
HyperValue hyper_value_from_json(const nlohmann::json& j);
Hyperparameters hyperparameters_from_json(const nlohmann::json& j);

// Typed accessors for normalized maps.
std::int64_t get_int(const Hyperparameters& params, const std::string& name);
double get_real(const Hyperparameters& params, const std::string& name);
std::string get_string(const Hyperparameters& params, const std::string& name);
bool holds_string(const Hyperparameters& params, const std::string& name);

} // namespace metastack
