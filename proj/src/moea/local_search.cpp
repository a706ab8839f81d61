#include "lowlight/moea/local_search.hpp"

#include <stdexcept>

namespace lowlight::moea {

Individual local_search(const Individual& ind, std::size_t steps, const EvaluateFn& eval,
                        const ParamBounds& bounds, double sigma_fraction, Rng& rng) {
    if (!ind.fitness) {
        throw std::logic_error("local search needs an evaluated individual");
    }
    Individual best = ind;
    std::normal_distribution<double> noise_b(0.0, sigma_fraction * bounds.b.width());
    std::normal_distribution<double> noise_c(0.0, sigma_fraction * bounds.c.width());
    std::normal_distribution<double> noise_g(0.0, sigma_fraction * bounds.gamma.width());
    for (std::size_t step = 0; step < steps; ++step) {
        EnhanceParams neighbour = best.params;
        neighbour.b += noise_b(rng);
        neighbour.c += noise_c(rng);
        neighbour.gamma += noise_g(rng);
        neighbour = clip_params(neighbour, bounds);

        const Evaluation result = eval(neighbour);
        if (lexicographically_better(result.fitness, *best.fitness)) {
            best.params = neighbour;
            best.fitness = result.fitness;
            best.stats = result.stats;
        }
    }
    return best;
}

}  // namespace lowlight::moea
