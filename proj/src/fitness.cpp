#include "lowlight/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lowlight {

void PenaltyConfig::validate() const {
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw std::invalid_argument("brightness band needs 0 <= lo < hi <= 1");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("penalty weight must be finite and non-negative");
    }
}

double brightness_penalty(double mean, const PenaltyConfig& cfg) {
    return std::max(0.0, cfg.lo - mean) + std::max(0.0, mean - cfg.hi);
}

bool dominates(const FitnessPair& a, const FitnessPair& b) noexcept {
    return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

bool lexicographically_better(const FitnessPair& a, const FitnessPair& b) noexcept {
    return a.f1 < b.f1 || (a.f1 == b.f1 && a.f2 < b.f2);
}

Evaluation evaluate(const EnhanceParams& e, const ImageBuffer& original, const FeatureVector& f0,
                    const FeatureExtractor& extractor, const PenaltyConfig& cfg) {
    const ImageBuffer enhanced = enhance(original, e);
    Evaluation out;
    out.stats.entropy = image_entropy(enhanced);
    out.stats.mean_brightness = mean_brightness(enhanced);
    out.stats.feature_distance = feature_distance(f0, extractor.extract(enhanced));
    out.stats.penalty = brightness_penalty(out.stats.mean_brightness, cfg);
    out.fitness.f1 = 0.0 - out.stats.entropy;
    out.fitness.f2 = out.stats.feature_distance + cfg.lambda * out.stats.penalty;
    return out;
}

FitnessEvaluator::FitnessEvaluator(ImageBuffer original,
                                   std::shared_ptr<const FeatureExtractor> extractor,
                                   PenaltyConfig penalty)
    : original_(std::move(original)), extractor_(std::move(extractor)), penalty_(penalty) {
    if (!extractor_) {
        throw std::invalid_argument("FitnessEvaluator needs an extractor");
    }
    penalty_.validate();
    original_features_ = extractor_->extract(original_);
}

Evaluation FitnessEvaluator::evaluate(const EnhanceParams& e) const {
    return lowlight::evaluate(e, original_, original_features_, *extractor_, penalty_);
}

}  // namespace lowlight
