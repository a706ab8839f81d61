#include "lowlight/moea/sorting.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

using namespace lowlight;
using namespace lowlight::moea;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Population from_fitness(const std::vector<FitnessPair>& pts) {
    Population pop;
    for (const auto& f : pts) {
        Individual ind;
        ind.fitness = f;
        pop.members.push_back(ind);
    }
    return pop;
}

std::vector<FitnessPair> random_points(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<FitnessPair> pts(n);
    for (auto& p : pts) {
        p = {u(rng), u(rng)};
    }
    return pts;
}

}  // namespace

TEST(NondominatedSort, Examples) {
    auto staircase = from_fitness({{-5, 3}, {-4, 2}, {-3, 1}});
    EXPECT_EQ(nondominated_sort(staircase), (std::vector<Front>{{0, 1, 2}}));

    auto two = from_fitness({{-5, 3}, {-4, 2}, {-4, 3}});
    EXPECT_EQ(nondominated_sort(two), (std::vector<Front>{{0, 1}, {2}}));
    EXPECT_EQ(*two.members[2].rank, 1u);

    auto single = from_fitness({{0.3, 0.2}});
    EXPECT_EQ(nondominated_sort(single), (std::vector<Front>{{0}}));
}

TEST(NondominatedSort, RequiresFitness) {
    Population pop;
    pop.members.resize(2);
    EXPECT_THROW(nondominated_sort(pop), std::logic_error);
}

TEST(NondominatedSort, AgreesWithPeelingOracle) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = random_points(200, rng);
        auto pop = from_fitness(pts);
        const auto fronts = nondominated_sort(pop);
        const auto expected = oracle::peel_ranks(pts);

        std::set<std::size_t> seen;
        for (std::size_t k = 0; k < fronts.size(); ++k) {
            for (std::size_t i : fronts[k]) {
                EXPECT_TRUE(seen.insert(i).second) << "member listed twice";
                EXPECT_EQ(k, expected[i]);
                EXPECT_EQ(*pop.members[i].rank, k);
            }
        }
        EXPECT_EQ(seen.size(), pts.size());
    }
}

TEST(NondominatedSort, RanksAreConsistentWithDominance) {
    std::mt19937_64 rng(7);
    // Integer grid so duplicates and ties occur.
    std::uniform_int_distribution<int> v(0, 6);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<FitnessPair> pts(60);
        for (auto& p : pts) {
            p = {double(v(rng)), double(v(rng))};
        }
        auto pop = from_fitness(pts);
        nondominated_sort(pop);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (*pop.members[i].rank < *pop.members[j].rank) {
                    EXPECT_FALSE(dominates(pts[j], pts[i]));
                }
                if (*pop.members[i].rank == *pop.members[j].rank) {
                    EXPECT_FALSE(dominates(pts[j], pts[i]));
                }
            }
        }
    }
}

TEST(CrowdingDistance, SmallFrontsAreAllBoundary) {
    auto pop = from_fitness({{0, 1}, {1, 0}});
    EXPECT_EQ(crowding_distance(Front{0, 1}, pop), (std::vector<double>{kInf, kInf}));
    EXPECT_EQ(crowding_distance(Front{0}, pop), (std::vector<double>{kInf}));
}

TEST(CrowdingDistance, HandComputedThreePoints) {
    auto pop = from_fitness({{0, 1}, {0.5, 0.5}, {1, 0}});
    const auto d = crowding_distance(Front{0, 1, 2}, pop);
    EXPECT_EQ(d[0], kInf);
    EXPECT_EQ(d[2], kInf);
    EXPECT_DOUBLE_EQ(d[1], 1.0);
}

TEST(CrowdingDistance, DegenerateRange) {
    auto pop = from_fitness({{1, 1}, {1, 1}, {1, 1}, {1, 1}});
    const auto d = crowding_distance(Front{0, 1, 2, 3}, pop);
    EXPECT_EQ(std::count(d.begin(), d.end(), kInf), 2);
    EXPECT_EQ(std::count(d.begin(), d.end(), 0.0), 2);
}

TEST(CrowdingDistance, ExtremesAreInfinite) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        auto pop = from_fitness(random_points(40, rng));
        for (const auto& front : rank_population(pop)) {
            double min1 = kInf, max1 = -kInf, min2 = kInf, max2 = -kInf;
            for (std::size_t i : front) {
                min1 = std::min(min1, pop.members[i].fitness->f1);
                max1 = std::max(max1, pop.members[i].fitness->f1);
                min2 = std::min(min2, pop.members[i].fitness->f2);
                max2 = std::max(max2, pop.members[i].fitness->f2);
            }
            for (std::size_t i : front) {
                const auto& f = *pop.members[i].fitness;
                if (f.f1 == min1 || f.f1 == max1 || f.f2 == min2 || f.f2 == max2) {
                    EXPECT_EQ(*pop.members[i].crowding, kInf);
                } else {
                    EXPECT_GE(*pop.members[i].crowding, 0.0);
                    EXPECT_LT(*pop.members[i].crowding, kInf);
                }
            }
        }
    }
}

TEST(EnvironmentalSelect, KeepsBestFrontsAndSize) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const auto pts = random_points(100, rng);
        auto combined = from_fitness(pts);
        const auto ranks = oracle::peel_ranks(pts);
        const auto next = environmental_select(combined, 50);
        ASSERT_EQ(next.members.size(), 50u);
        std::size_t worst_kept = 0;
        std::multiset<std::pair<double, double>> kept;
        for (const auto& m : next.members) {
            kept.insert({m.fitness->f1, m.fitness->f2});
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (kept.count({pts[i].f1, pts[i].f2})) {
                worst_kept = std::max(worst_kept, ranks[i]);
            }
        }
        // Every member of a better front than the worst kept one survives.
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (ranks[i] < worst_kept) {
                EXPECT_TRUE(kept.count({pts[i].f1, pts[i].f2}));
            }
        }
    }
}

TEST(Tournament, HigherCrowdingWinsWithinRank) {
    Rng rng(3);
    Population crowd = from_fitness({{0, 1}, {1, 0}});
    crowd.members[0].rank = 0;
    crowd.members[0].crowding = kInf;
    crowd.members[1].rank = 0;
    crowd.members[1].crowding = 0.3;
    std::map<std::size_t, int> wins;
    for (int i = 0; i < 4000; ++i) {
        ++wins[tournament_select(crowd, rng)];
    }
    // P(member 1 wins) = P(both draws are member 1) = 1/4.
    EXPECT_NEAR(wins[1] / 4000.0, 0.25, 0.03);
}

TEST(Tournament, RankZeroAlwaysBeatsRankOne) {
    Population pop = from_fitness({{0, 0}, {1, 1}});
    pop.members[0].rank = 0;
    pop.members[0].crowding = 0.0;
    pop.members[1].rank = 1;
    pop.members[1].crowding = kInf;
    Rng rng(5);
    std::map<std::size_t, int> wins;
    for (int i = 0; i < 4000; ++i) {
        ++wins[tournament_select(pop, rng)];
    }
    EXPECT_NEAR(wins[1] / 4000.0, 0.25, 0.03);
}

TEST(Tournament, FairCoinOnFullTie) {
    Population pop = from_fitness({{0, 1}, {1, 0}});
    for (auto& m : pop.members) {
        m.rank = 0;
        m.crowding = 0.5;
    }
    Rng rng(9);
    std::map<std::size_t, int> wins;
    for (int i = 0; i < 10000; ++i) {
        ++wins[tournament_select(pop, rng)];
    }
    EXPECT_NEAR(wins[0] / 10000.0, 0.5, 0.02);

    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(tournament_select(pop, a), tournament_select(pop, b));
    }
}

TEST(Tournament, RejectsUnrankedPopulation) {
    Population pop = from_fitness({{0, 1}, {1, 0}});
    Rng rng(1);
    EXPECT_THROW(tournament_select(pop, rng), std::logic_error);
}

TEST(Representative, Selection) {
    auto front = from_fitness({{-5, 2}, {-4, 1}}).members;
    EXPECT_EQ(select_representative(front).fitness->f1, -5);

    auto tie = from_fitness({{-5, 2}, {-5, 1}}).members;
    EXPECT_EQ(select_representative(tie).fitness->f2, 1);

    auto dup = from_fitness({{-5, 1}, {-5, 1}}).members;
    EXPECT_EQ(select_representative_index(dup), 0u);

    auto single = from_fitness({{-3, 3}}).members;
    EXPECT_EQ(select_representative(single).fitness->f1, -3);

    EXPECT_THROW(select_representative_index(std::vector<Individual>{}), std::invalid_argument);
}
