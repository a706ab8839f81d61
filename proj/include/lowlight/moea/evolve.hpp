#pragma once

#include "lowlight/features.hpp"
#include "lowlight/fitness.hpp"
#include "lowlight/moea/individual.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace lowlight::moea {

struct GenerationStats {
    std::size_t generation = 0;
    double best_entropy = 0.0;
    double best_f2 = 0.0;
    double mean_f2 = 0.0;
    double mutation_rate = 0.0;
    std::size_t front_size = 0;
};

struct EvolutionResult {
    Individual best;
    std::vector<Individual> front;
    std::vector<GenerationStats> history;
};

/// Called with the ranked population after initialization (generation 0)
/// and after every generation.
using GenerationObserver = std::function<void(const Population&)>;

/// NSGA-II with adaptive mutation and memetic refinement over an arbitrary
/// evaluator.
EvolutionResult evolve(const EvaluateFn& eval, const ParamBounds& bounds, const EvolutionConfig& cfg,
                       const GenerationObserver& observer = {});

EvolutionResult evolve(const ImageBuffer& original, std::shared_ptr<const FeatureExtractor> extractor,
                       const ParamBounds& bounds, const PenaltyConfig& penalty,
                       const EvolutionConfig& cfg, const GenerationObserver& observer = {});

}  // namespace lowlight::moea
