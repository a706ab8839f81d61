#pragma once

#include "lowlight/moea/individual.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace lowlight::moea {

using Front = std::vector<std::size_t>;

/// Fast non-dominated sort. Returns fronts of member indices (ascending
/// within a front) and sets each member's rank. Throws std::logic_error if
/// a member has no fitness.
std::vector<Front> nondominated_sort(Population& pop);

/// Crowding distance of each member of `front`, aligned with it: the mean
/// side of the normalized cuboid around an interior member, summed over
/// objectives, i.e. (next - prev) / (2 * range) per objective. Boundary
/// members per objective get +infinity; an objective with zero range adds
/// nothing.
std::vector<double> crowding_distance(std::span<const std::size_t> front, const Population& pop);

/// Sorts and writes rank and crowding into every member.
std::vector<Front> rank_population(Population& pop);

/// Keeps `n` members: whole fronts first, then the last partial front by
/// descending crowding (ties by index). Result is ranked afresh.
Population environmental_select(Population combined, std::size_t n);

/// Member indices ordered best first by (rank, -crowding, index).
std::vector<std::size_t> order_by_rank_and_crowding(const Population& pop);

/// Binary tournament: lower rank wins, then higher crowding, then a fair
/// coin. Throws std::logic_error on an unranked population.
std::size_t tournament_select(const Population& pop, Rng& rng);

/// Index into `front` of the highest-entropy member (lowest f1), ties by
/// lowest f2, then lowest index. Throws std::invalid_argument when empty.
std::size_t select_representative_index(std::span<const Individual> front);

Individual select_representative(std::span<const Individual> front);

}  // namespace lowlight::moea
