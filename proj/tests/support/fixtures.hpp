#pragma once

#include "metastack/dataset.hpp"
#include "metastack/experiment.hpp"
#include "metastack/random.hpp"
#include "metastack/results.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace fixtures {

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Two Gaussian-ish blobs split by the line x0 + x1 = 0 with a margin.
metastack::Dataset separable_dataset(std::size_t n, std::uint64_t seed);

/// 20 instances, 2 noisy features, 2 overlapping classes (10 each).
metastack::Dataset toy_dataset_20();

/// 1-D feature, class 1 iff x > 0.
metastack::Dataset one_d_dataset(std::size_t n_per_class);

/// Renders a dataset as CSV with an "id" column and a "label" target.
std::string to_csv(const metastack::Dataset& ds);

/// A valid result with random probabilities over `labels`.
metastack::MetamodelResult random_result(metastack::Rng& rng, const std::vector<int>& labels, int n_classes,
                                         const std::string& candidate_id);

/// Random record with 1-4 results, exercising every serialized field.
metastack::ExperimentRecord random_record(metastack::Rng& rng);

/// Small config over the 20-instance toy set, 2 base models, 4 candidates.
nlohmann::json toy_config_json();

/// A hand-built record with fixed numbers; no training involved.
metastack::ExperimentRecord handmade_record();

} // namespace fixtures
