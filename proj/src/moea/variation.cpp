#include "lowlight/moea/variation.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace lowlight::moea {

namespace {

std::array<double*, 3> genes(EnhanceParams& e) { return {&e.b, &e.c, &e.gamma}; }

std::array<const GeneRange*, 3> ranges(const ParamBounds& bounds) {
    return {&bounds.b, &bounds.c, &bounds.gamma};
}

}  // namespace

Population init_population(const ParamBounds& bounds, const EvolutionConfig& cfg, Rng& rng) {
    Population pop;
    pop.members.reserve(cfg.pop_size);
    pop.members.push_back(Individual{clip_params(EnhanceParams{0.0, 1.0, 1.0}, bounds)});
    while (pop.members.size() < cfg.pop_size) {
        EnhanceParams e;
        auto g = genes(e);
        auto r = ranges(bounds);
        for (std::size_t k = 0; k < 3; ++k) {
            std::uniform_real_distribution<double> draw(r[k]->lo, r[k]->hi);
            *g[k] = draw(rng);
        }
        pop.members.push_back(Individual{e});
    }
    return pop;
}

std::pair<EnhanceParams, EnhanceParams> blend_crossover(const EnhanceParams& p1,
                                                        const EnhanceParams& p2, double alpha,
                                                        const ParamBounds& bounds, Rng& rng) {
    EnhanceParams c1 = p1;
    EnhanceParams c2 = p2;
    EnhanceParams a = p1;
    EnhanceParams b = p2;
    auto ga = genes(a);
    auto gb = genes(b);
    auto g1 = genes(c1);
    auto g2 = genes(c2);
    for (std::size_t k = 0; k < 3; ++k) {
        const double lo_parent = std::min(*ga[k], *gb[k]);
        const double hi_parent = std::max(*ga[k], *gb[k]);
        const double d = hi_parent - lo_parent;
        const double lo = lo_parent - alpha * d;
        const double hi = hi_parent + alpha * d;
        if (!(hi > lo)) {
            *g1[k] = lo;
            *g2[k] = lo;
            continue;
        }
        std::uniform_real_distribution<double> draw(lo, hi);
        *g1[k] = draw(rng);
        *g2[k] = draw(rng);
    }
    return {clip_params(c1, bounds), clip_params(c2, bounds)};
}

EnhanceParams gaussian_mutate(const EnhanceParams& e, double sigma_fraction,
                              const ParamBounds& bounds, double rate, Rng& rng) {
    EnhanceParams out = e;
    auto g = genes(out);
    auto r = ranges(bounds);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t k = 0; k < 3; ++k) {
        if (unit(rng) < rate) {
            std::normal_distribution<double> noise(0.0, sigma_fraction * r[k]->width());
            *g[k] += noise(rng);
        }
    }
    return clip_params(out, bounds);
}

}  // namespace lowlight::moea
