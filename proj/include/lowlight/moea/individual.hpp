#pragma once

#include "lowlight/enhance.hpp"
#include "lowlight/fitness.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace lowlight::moea {

/// Every stochastic draw of a run comes from one of these, in a fixed order.
using Rng = std::mt19937_64;

/// Scores one parameter set. Must be pure; evolve() may call it from
/// several threads at once.
using EvaluateFn = std::function<Evaluation(const EnhanceParams&)>;

struct EvolutionConfig {
    std::size_t pop_size = 50;
    std::size_t generations = 5;
    double crossover_prob = 0.85;
    // Base mutation probability, interpolated linearly from the first to
    // the last generation.
    double mutation_prob_start = 0.3;
    double mutation_prob_end = 0.2;
    std::size_t local_search_steps = 8;
    double local_search_fraction = 0.10;
    double local_search_sigma_fraction = 0.02;
    double blend_alpha = 0.5;
    double mutation_sigma_fraction = 0.1;
    // Standard deviation of b (8-bit units) below which mutation doubles.
    double diversity_threshold = 5.0;
    std::uint64_t rng_seed = 0;
    std::size_t eval_threads = 1;

    void validate() const;
};

struct Individual {
    EnhanceParams params{};
    std::optional<FitnessPair> fitness{};
    ImageStats stats{};
    std::optional<std::size_t> rank{};
    std::optional<double> crowding{};
};

struct Population {
    std::vector<Individual> members;
    std::size_t generation = 0;
};

}  // namespace lowlight::moea
