#pragma once

#include "metastack/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace metastack {

struct Dataset {
    std::string name;
    Matrix features; ///< n_instances x n_features
    std::vector<int> labels;
    std::vector<std::string> class_names;
    std::vector<std::string> feature_names;
    std::vector<std::string> instance_ids;

    std::size_t n_instances() const noexcept { return labels.size(); }
    std::size_t n_features() const noexcept { return features.cols(); }
    int n_classes() const noexcept { return static_cast<int>(class_names.size()); }

    /// Per-class instance counts, indexed by class id.
    std::vector<std::size_t> class_counts() const;

    /// Throws MalformedInput (or the matching dataset error) if any structural
    /// invariant is broken.
    void validate() const;
};

enum class Imputation { mean, median, zero };

struct IngestionOptions {
    char delimiter = ',';
    Imputation imputation = Imputation::mean;
    /// Cells equal to one of these (after trimming) are treated as missing.
    std::vector<std::string> missing_tokens{"", "NA", "N/A", "NaN", "nan", "?"};
    /// Optional column providing stable instance ids; row numbers otherwise.
    std::string id_column;
    /// Dataset name; defaults to the file stem.
    std::string name;
};

/// Loads delimited text with a header row. The target column becomes the
/// label vector (dense ids in order of first appearance); rows with a
/// missing target are dropped; numeric gaps are imputed; non-numeric columns
/// are one-hot encoded with categories in lexicographic order.
Dataset load_dataset(const std::filesystem::path& path, const std::string& target_column,
                     const IngestionOptions& options = {});

/// Same as load_dataset, reading the delimited text from memory.
Dataset parse_dataset(std::string_view text, const std::string& target_column,
                      const IngestionOptions& options = {});

/// RFC-4180 record splitting. Exposed for testing.
std::vector<std::vector<std::string>> parse_delimited(std::string_view text, char delimiter);

struct FoldAssignment {
    int k = 0;
    std::vector<int> fold_of;
    std::int64_t seed = 0;

    std::vector<std::size_t> train_indices(int fold) const;
    std::vector<std::size_t> test_indices(int fold) const;

    friend bool operator==(const FoldAssignment&, const FoldAssignment&) = default;
};

inline constexpr int default_fold_count = 5;
inline constexpr std::int64_t default_seed = 42;

/// Deterministic stratified k-fold split. Each fold receives either
/// floor(n_c / k) or ceil(n_c / k) instances of every class c.
FoldAssignment stratified_kfold(const Dataset& ds, int k, std::int64_t seed);

/// Label-only overload, used when only the label vector is at hand.
FoldAssignment stratified_kfold(const std::vector<int>& labels, int n_classes, int k,
                                std::int64_t seed);

} // namespace metastack
