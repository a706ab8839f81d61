#pragma once

#include "lowlight/moea/individual.hpp"

#include <cstddef>

namespace lowlight::moea {

/// Hill climbing: `steps` Gaussian neighbours (sigma = sigma_fraction *
/// gene range, clipped), each accepted only if lexicographically better.
/// `ind` must carry a fitness.
Individual local_search(const Individual& ind, std::size_t steps, const EvaluateFn& eval,
                        const ParamBounds& bounds, double sigma_fraction, Rng& rng);

}  // namespace lowlight::moea
