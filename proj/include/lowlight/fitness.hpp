#pragma once

#include "lowlight/enhance.hpp"
#include "lowlight/features.hpp"
#include "lowlight/image.hpp"

#include <memory>

namespace lowlight {

/// Bi-objective value, both minimized: f1 is negated entropy, f2 is the
/// feature distance plus the weighted brightness penalty.
struct FitnessPair {
    double f1 = 0.0;
    double f2 = 0.0;

    friend bool operator==(const FitnessPair&, const FitnessPair&) = default;
};

/// Brightness band [lo, hi] and penalty weight.
struct PenaltyConfig {
    double lo = 0.35;
    double hi = 0.7;
    double lambda = 30.0;

    void validate() const;
};

/// Statistics of the enhanced image kept next to the fitness.
struct ImageStats {
    double entropy = 0.0;
    double mean_brightness = 0.0;
    double feature_distance = 0.0;
    double penalty = 0.0;
};

struct Evaluation {
    FitnessPair fitness;
    ImageStats stats;
};

/// max(0, lo - m) + max(0, m - hi).
double brightness_penalty(double mean, const PenaltyConfig& cfg);

/// Pareto dominance under minimization.
bool dominates(const FitnessPair& a, const FitnessPair& b) noexcept;

/// f1 lower, or f1 equal and f2 lower.
bool lexicographically_better(const FitnessPair& a, const FitnessPair& b) noexcept;

/// Scores enhancement parameters against one original image. Holds the
/// original's features so they are extracted once. evaluate() is const and
/// safe to call concurrently.
class FitnessEvaluator {
public:
    FitnessEvaluator(ImageBuffer original, std::shared_ptr<const FeatureExtractor> extractor,
                     PenaltyConfig penalty);

    Evaluation evaluate(const EnhanceParams& e) const;

    const ImageBuffer& original() const noexcept { return original_; }
    const FeatureVector& original_features() const noexcept { return original_features_; }
    const PenaltyConfig& penalty() const noexcept { return penalty_; }

private:
    ImageBuffer original_;
    std::shared_ptr<const FeatureExtractor> extractor_;
    PenaltyConfig penalty_;
    FeatureVector original_features_;
};

/// Free-function form: f0 must come from `extractor` applied to `original`.
Evaluation evaluate(const EnhanceParams& e, const ImageBuffer& original, const FeatureVector& f0,
                    const FeatureExtractor& extractor, const PenaltyConfig& cfg);

}  // namespace lowlight
