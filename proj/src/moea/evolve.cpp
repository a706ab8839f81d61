#include "lowlight/moea/evolve.hpp"

#include "lowlight/moea/adaptive.hpp"
#include "lowlight/moea/local_search.hpp"
#include "lowlight/moea/sorting.hpp"
#include "lowlight/moea/variation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace lowlight::moea {

void EvolutionConfig::validate() const {
    auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    auto fraction = [](double f) { return f > 0.0 && f <= 1.0; };
    if (pop_size < 2 || pop_size % 2 != 0) {
        throw std::invalid_argument("population size must be even and at least 2");
    }
    if (generations < 1) {
        throw std::invalid_argument("at least one generation is required");
    }
    if (!probability(crossover_prob) || !probability(mutation_prob_start) ||
        !probability(mutation_prob_end)) {
        throw std::invalid_argument("probabilities must lie in [0,1]");
    }
    if (!fraction(local_search_fraction) || !fraction(mutation_sigma_fraction) ||
        !fraction(local_search_sigma_fraction)) {
        throw std::invalid_argument("fractions must lie in (0,1]");
    }
    if (!(blend_alpha >= 0.0) || !std::isfinite(blend_alpha)) {
        throw std::invalid_argument("blend alpha must be finite and non-negative");
    }
    if (!(diversity_threshold >= 0.0)) {
        throw std::invalid_argument("diversity threshold must be non-negative");
    }
    if (eval_threads < 1) {
        throw std::invalid_argument("eval_threads must be at least 1");
    }
}

namespace {

void assign(Individual& ind, const Evaluation& result) {
    ind.fitness = result.fitness;
    ind.stats = result.stats;
}

// Results land by index, so the outcome never depends on thread timing.
void evaluate_all(std::vector<Individual>& members, const EvaluateFn& eval, std::size_t threads) {
    if (threads <= 1 || members.size() <= 1) {
        for (auto& m : members) {
            assign(m, eval(m.params));
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(members.size());
    auto work = [&] {
        for (std::size_t i = next++; i < members.size(); i = next++) {
            try {
                assign(members[i], eval(members[i].params));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < std::min(threads, members.size()); ++t) {
            pool.emplace_back(work);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

GenerationStats summarize(const Population& pop, std::size_t generation, double rate) {
    GenerationStats s;
    s.generation = generation;
    s.mutation_rate = rate;
    s.best_entropy = -std::numeric_limits<double>::infinity();
    s.best_f2 = std::numeric_limits<double>::infinity();
    double sum_f2 = 0.0;
    for (const auto& m : pop.members) {
        s.best_entropy = std::max(s.best_entropy, -m.fitness->f1);
        s.best_f2 = std::min(s.best_f2, m.fitness->f2);
        sum_f2 += m.fitness->f2;
        if (*m.rank == 0) {
            ++s.front_size;
        }
    }
    s.mean_f2 = sum_f2 / static_cast<double>(pop.members.size());
    return s;
}

}  // namespace

EvolutionResult evolve(const EvaluateFn& eval, const ParamBounds& bounds, const EvolutionConfig& cfg,
                       const GenerationObserver& observer) {
    bounds.validate();
    cfg.validate();
    Rng rng(cfg.rng_seed);

    Population pop = init_population(bounds, cfg, rng);
    evaluate_all(pop.members, eval, cfg.eval_threads);
    rank_population(pop);
    if (observer) {
        observer(pop);
    }

    const std::size_t n = cfg.pop_size;
    const auto refined = static_cast<std::size_t>(
        std::max(1.0, std::ceil(cfg.local_search_fraction * static_cast<double>(n) - 1e-9)));

    EvolutionResult result;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t g = 1; g <= cfg.generations; ++g) {
        const double base = scheduled_base_rate(g, cfg.generations, cfg.mutation_prob_start,
                                                cfg.mutation_prob_end);
        const double rate = adaptive_mutation_rate(pop, base, cfg.diversity_threshold);

        std::vector<Individual> offspring;
        offspring.reserve(n);
        while (offspring.size() < n) {
            const std::size_t i = tournament_select(pop, rng);
            const std::size_t j = tournament_select(pop, rng);
            EnhanceParams c1 = pop.members[i].params;
            EnhanceParams c2 = pop.members[j].params;
            if (unit(rng) < cfg.crossover_prob) {
                std::tie(c1, c2) = blend_crossover(c1, c2, cfg.blend_alpha, bounds, rng);
            }
            c1 = gaussian_mutate(c1, cfg.mutation_sigma_fraction, bounds, rate, rng);
            c2 = gaussian_mutate(c2, cfg.mutation_sigma_fraction, bounds, rate, rng);
            offspring.push_back(Individual{c1});
            if (offspring.size() < n) {
                offspring.push_back(Individual{c2});
            }
        }
        evaluate_all(offspring, eval, cfg.eval_threads);

        Population combined = std::move(pop);
        combined.generation = g;
        combined.members.insert(combined.members.end(), std::make_move_iterator(offspring.begin()),
                                std::make_move_iterator(offspring.end()));
        pop = environmental_select(std::move(combined), n);

        const auto order = order_by_rank_and_crowding(pop);
        for (std::size_t k = 0; k < refined && k < order.size(); ++k) {
            Individual& target = pop.members[order[k]];
            target = local_search(target, cfg.local_search_steps, eval, bounds,
                                  cfg.local_search_sigma_fraction, rng);
        }
        rank_population(pop);

        result.history.push_back(summarize(pop, g, rate));
        if (observer) {
            observer(pop);
        }
    }

    for (const auto& m : pop.members) {
        if (*m.rank == 0) {
            result.front.push_back(m);
        }
    }
    result.best = select_representative(result.front);
    return result;
}

EvolutionResult evolve(const ImageBuffer& original, std::shared_ptr<const FeatureExtractor> extractor,
                       const ParamBounds& bounds, const PenaltyConfig& penalty,
                       const EvolutionConfig& cfg, const GenerationObserver& observer) {
    const FitnessEvaluator evaluator(original, std::move(extractor), penalty);
    return evolve([&evaluator](const EnhanceParams& e) { return evaluator.evaluate(e); }, bounds, cfg,
                  observer);
}

}  // namespace lowlight::moea
