#pragma once

#include "metastack/dataset.hpp"
#include "metastack/ensemble.hpp"
#include "metastack/hyperparameters.hpp"
#include "metastack/results.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace metastack {

using MetamodelGrid = std::map<Algorithm, std::vector<Hyperparameters>>;

/// Every algorithm with its two presets (16 candidates).
MetamodelGrid default_metamodel_grid();


/// "<tag>-<8 hex digits>" where the digits hash the algorithm and the
/// normalized hyperparameters.
std::string candidate_id(Algorithm algorithm, const Hyperparameters& params);

/// Expands the grid into candidates ordered by algorithm, then by the
/// canonical text of the normalized hyperparameters. Maps that normalize
/// to the same configuration collapse into one candidate. Candidate seeds
/// derive from (candidate_id, seed).
/// Throws EmptyGrid or InvalidHyperparameter.
std::vector<MetamodelCandidate> enumerate_candidates(const MetamodelGrid& grid, std::int64_t seed);

/// Scores one candidate with the same out-of-fold protocol as the base
/// layer. Training failures do not throw: the result carries `failure`.
/// Throws ShapeMismatch if inputs, labels and folds disagree.
MetamodelResult evaluate_candidate(const MetamodelCandidate& candidate, const Matrix& inputs,
                                   std::span<const int> labels, int n_classes,
                                   const FoldAssignment& folds, int threads = 1);

MetamodelResult evaluate_candidate(const MetamodelCandidate& candidate,
                                   const MetaFeatureMatrix& meta, std::span<const int> labels,
                                   const FoldAssignment& folds);

} // namespace metastack
