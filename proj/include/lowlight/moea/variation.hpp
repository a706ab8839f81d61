#pragma once

#include "lowlight/moea/individual.hpp"

#include <utility>

namespace lowlight::moea {

/// N members: slot 0 is the identity [0, 1, 1] clipped into bounds, the
/// rest are uniform within bounds.
Population init_population(const ParamBounds& bounds, const EvolutionConfig& cfg, Rng& rng);

/// BLX-alpha: each child gene is uniform on [min - alpha*d, max + alpha*d]
/// with d = |p1 - p2|, then clipped.
std::pair<EnhanceParams, EnhanceParams> blend_crossover(const EnhanceParams& p1,
                                                        const EnhanceParams& p2, double alpha,
                                                        const ParamBounds& bounds, Rng& rng);

/// Each gene, with probability `rate`, gets Normal(0, (sigma_fraction *
/// range)^2) noise; the result is clipped.
EnhanceParams gaussian_mutate(const EnhanceParams& e, double sigma_fraction,
                              const ParamBounds& bounds, double rate, Rng& rng);

}  // namespace lowlight::moea
