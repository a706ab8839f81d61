#include "lowlight/moea/sorting.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace lowlight::moea {

namespace {

const FitnessPair& fitness_of(const Individual& ind) {
    if (!ind.fitness) {
        throw std::logic_error("individual has no fitness");
    }
    return *ind.fitness;
}

}  // namespace

std::vector<Front> nondominated_sort(Population& pop) {
    const std::size_t n = pop.members.size();
    for (const auto& m : pop.members) {
        fitness_of(m);
    }

    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& fi = *pop.members[i].fitness;
            const auto& fj = *pop.members[j].fitness;
            if (dominates(fi, fj)) {
                dominated_by_me[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(fj, fi)) {
                dominated_by_me[j].push_back(i);
                ++domination_count[i];
            }
        }
    }

    std::vector<Front> fronts;
    Front current;
    for (std::size_t i = 0; i < n; ++i) {
        if (domination_count[i] == 0) {
            current.push_back(i);
        }
    }
    while (!current.empty()) {
        const std::size_t rank = fronts.size();
        Front next;
        for (std::size_t i : current) {
            pop.members[i].rank = rank;
            for (std::size_t j : dominated_by_me[i]) {
                if (--domination_count[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const std::size_t> front, const Population& pop) {
    const std::size_t m = front.size();
    std::vector<double> distance(m, 0.0);
    if (m <= 2) {
        std::fill(distance.begin(), distance.end(), std::numeric_limits<double>::infinity());
        return distance;
    }

    std::vector<std::size_t> order(m);
    for (int objective = 0; objective < 2; ++objective) {
        auto key = [&](std::size_t slot) {
            const FitnessPair& f = fitness_of(pop.members[front[slot]]);
            return objective == 0 ? std::make_tuple(f.f1, f.f2, front[slot])
                                  : std::make_tuple(f.f2, f.f1, front[slot]);
        };
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

        const double lo = std::get<0>(key(order.front()));
        const double hi = std::get<0>(key(order.back()));
        distance[order.front()] = std::numeric_limits<double>::infinity();
        distance[order.back()] = std::numeric_limits<double>::infinity();
        const double range = hi - lo;
        if (range <= 0.0) {
            continue;
        }
        for (std::size_t k = 1; k + 1 < m; ++k) {
            const double gap = std::get<0>(key(order[k + 1])) - std::get<0>(key(order[k - 1]));
            distance[order[k]] += gap / (2.0 * range);
        }
    }
    return distance;
}

std::vector<Front> rank_population(Population& pop) {
    auto fronts = nondominated_sort(pop);
    for (const Front& front : fronts) {
        const auto distance = crowding_distance(front, pop);
        for (std::size_t k = 0; k < front.size(); ++k) {
            pop.members[front[k]].crowding = distance[k];
        }
    }
    return fronts;
}

Population environmental_select(Population combined, std::size_t n) {
    const auto fronts = rank_population(combined);
    Population next;
    next.generation = combined.generation;
    next.members.reserve(n);
    for (const Front& front : fronts) {
        if (next.members.size() + front.size() <= n) {
            for (std::size_t i : front) {
                next.members.push_back(combined.members[i]);
            }
            continue;
        }
        Front last = front;
        std::stable_sort(last.begin(), last.end(), [&](std::size_t a, std::size_t b) {
            return *combined.members[a].crowding > *combined.members[b].crowding;
        });
        for (std::size_t k = 0; next.members.size() < n; ++k) {
            next.members.push_back(combined.members[last[k]]);
        }
        break;
    }
    rank_population(next);
    return next;
}

std::vector<std::size_t> order_by_rank_and_crowding(const Population& pop) {
    std::vector<std::size_t> order(pop.members.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Individual& x = pop.members[a];
        const Individual& y = pop.members[b];
        if (*x.rank != *y.rank) {
            return *x.rank < *y.rank;
        }
        return *x.crowding > *y.crowding;
    });
    return order;
}

std::size_t tournament_select(const Population& pop, Rng& rng) {
    if (pop.members.empty()) {
        throw std::logic_error("tournament on an empty population");
    }
    for (const auto& m : pop.members) {
        if (!m.rank || !m.crowding) {
            throw std::logic_error("tournament on an unranked population");
        }
    }
    std::uniform_int_distribution<std::size_t> pick(0, pop.members.size() - 1);
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    const Individual& x = pop.members[a];
    const Individual& y = pop.members[b];
    if (*x.rank != *y.rank) {
        return *x.rank < *y.rank ? a : b;
    }
    if (*x.crowding != *y.crowding) {
        return *x.crowding > *y.crowding ? a : b;
    }
    std::bernoulli_distribution coin(0.5);
    return coin(rng) ? a : b;
}

std::size_t select_representative_index(std::span<const Individual> front) {
    if (front.empty()) {
        throw std::invalid_argument("representative of an empty front");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < front.size(); ++i) {
        const FitnessPair& cand = fitness_of(front[i]);
        const FitnessPair& cur = fitness_of(front[best]);
        if (lexicographically_better(cand, cur)) {
            best = i;
        }
    }
    return best;
}

Individual select_representative(std::span<const Individual> front) {
    return front[select_representative_index(front)];
}

}  // namespace lowlight::moea
