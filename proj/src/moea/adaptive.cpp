#include "lowlight/moea/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lowlight::moea {

double brightness_spread(const Population& pop) {
    if (pop.members.empty()) {
        throw std::invalid_argument("brightness spread of an empty population");
    }
    const double n = static_cast<double>(pop.members.size());
    double mean = 0.0;
    for (const auto& m : pop.members) {
        mean += m.params.b;
    }
    mean /= n;
    double var = 0.0;
    for (const auto& m : pop.members) {
        const double d = m.params.b - mean;
        var += d * d;
    }
    return std::sqrt(var / n);
}

double adaptive_mutation_rate(const Population& pop, double base_rate, double threshold) {
    if (brightness_spread(pop) < threshold) {
        return std::min(kMaxMutationRate, 2.0 * base_rate);
    }
    return base_rate;
}

double scheduled_base_rate(std::size_t generation, std::size_t total, double start, double end) {
    if (total <= 1) {
        return start;
    }
    const double t = static_cast<double>(generation - 1) / static_cast<double>(total - 1);
    return start + (end - start) * t;
}

}  // namespace lowlight::moea
