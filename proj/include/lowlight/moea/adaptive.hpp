#pragma once

#include "lowlight/moea/individual.hpp"

#include <cstddef>

namespace lowlight::moea {

inline constexpr double kMaxMutationRate = 0.5;

/// Population standard deviation (divide by n) of the brightness gene.
double brightness_spread(const Population& pop);

/// min(0.5, 2*base) when the brightness spread is below `threshold`,
/// otherwise base.
double adaptive_mutation_rate(const Population& pop, double base_rate, double threshold);

/// Linear schedule from start (generation 1) to end (generation `total`).
double scheduled_base_rate(std::size_t generation, std::size_t total, double start, double end);

}  // namespace lowlight::moea
