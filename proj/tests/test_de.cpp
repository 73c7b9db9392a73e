#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <gaode/adaptation.hpp>
#include <gaode/engine.hpp>

using namespace gaode;

namespace {

Population make_pop(std::vector<std::vector<double>> xs)
{
    Population p;
    for (auto& x : xs)
        p.members.push_back({std::move(x), 0.0, true});
    return p;
}

TrialRandomness fixed_tr(std::size_t r1, std::size_t r2, std::size_t r3, std::size_t jr, std::vector<double> mask)
{
    return {r1, r2, r3, jr, std::move(mask)};
}

} // namespace

TEST(ControlParams, RejectsOutOfRange)
{
    EXPECT_NO_THROW(ControlParams::make(1.0, 0.0));
    EXPECT_THROW(ControlParams::make(0.0, 0.5), std::invalid_argument);
    EXPECT_THROW(ControlParams::make(1.01, 0.5), std::invalid_argument);
    EXPECT_THROW(ControlParams::make(0.5, -0.1), std::invalid_argument);
    EXPECT_THROW(ControlParams::make(0.5, 1.1), std::invalid_argument);
}

TEST(TrialRandomness, FourMembersUsesTheOtherThree)
{
    Generator g(7);
    for (int rep = 0; rep < 100; ++rep) {
        auto tr = draw_trial_randomness(0, 4, 3, g);
        std::set<std::size_t> s{tr.r1, tr.r2, tr.r3};
        EXPECT_EQ(s, (std::set<std::size_t>{1, 2, 3}));
    }
}

TEST(TrialRandomness, RejectsTooSmallPopulation)
{
    Generator g(1);
    EXPECT_THROW(draw_trial_randomness(0, 3, 2, g), std::invalid_argument);
}

TEST(TrialRandomness, FixedMaskConsumption)
{
    Generator g(3);
    for (std::size_t d : {1u, 3u, 17u}) {
        auto tr = draw_trial_randomness(2, 10, d, g);
        EXPECT_EQ(tr.mask_uniforms.size(), d);
        EXPECT_LT(tr.forced_index, d);
        for (double u : tr.mask_uniforms) {
            EXPECT_GE(u, 0.0);
            EXPECT_LT(u, 1.0);
        }
    }
}

TEST(TrialRandomness, ReplayWithSameSeed)
{
    Generator a(99), b(99);
    for (std::size_t i = 0; i < 20; ++i)
        EXPECT_EQ(draw_trial_randomness(i % 8, 8, 5, a), draw_trial_randomness(i % 8, 8, 5, b));
}

TEST(TrialRandomness, PropertyDistinctParents)
{
    Generator g(11);
    for (int rep = 0; rep < 2000; ++rep) {
        const std::size_t n = 4 + uniform_index(g, 30);
        const std::size_t i = uniform_index(g, n);
        auto tr = draw_trial_randomness(i, n, 1 + uniform_index(g, 10), g);
        EXPECT_NE(tr.r1, i);
        EXPECT_NE(tr.r2, i);
        EXPECT_NE(tr.r3, i);
        EXPECT_NE(tr.r1, tr.r2);
        EXPECT_NE(tr.r1, tr.r3);
        EXPECT_NE(tr.r2, tr.r3);
        EXPECT_LT(std::max({tr.r1, tr.r2, tr.r3}), n);
    }
}

TEST(RngStreams, StreamsAreIsolated)
{
    RngStreams a(5), b(5);
    for (int k = 0; k < 1000; ++k)
        a.param();
    EXPECT_EQ(a.shared(), b.shared());
    EXPECT_EQ(a.init(), b.init());
}

TEST(Mutation, ZeroDifferenceGivesBaseVector)
{
    auto pop = make_pop({{9, 9}, {1, 2}, {3, 4}, {3, 4}});
    auto v = rand1_mutation(pop, fixed_tr(1, 2, 3, 0, {0, 0}), 0.77);
    EXPECT_EQ(v, (std::vector<double>{1, 2}));
}

TEST(Mutation, WorkedExample)
{
    auto pop = make_pop({{9, 9}, {0, 0}, {1, 0}, {0, 1}});
    auto v = rand1_mutation(pop, fixed_tr(1, 2, 3, 0, {0, 0}), 0.5);
    EXPECT_DOUBLE_EQ(v[0], 0.5);
    EXPECT_DOUBLE_EQ(v[1], -0.5);
}

TEST(Mutation, UnitScaleWithZeroBaseReturnsSecondParent)
{
    auto pop = make_pop({{9, 9, 9}, {0, 0, 0}, {1.5, -2, 3}, {0, 0, 0}});
    EXPECT_EQ(rand1_mutation(pop, fixed_tr(1, 2, 3, 0, {0, 0, 0}), 1.0), (std::vector<double>{1.5, -2, 3}));
}

TEST(Crossover, FullRateTakesMutant)
{
    std::vector<double> parent{1, 2, 3}, mutant{4, 5, 6};
    auto u = binomial_crossover(parent, mutant, 1.0, fixed_tr(0, 0, 0, 1, {0.99, 0.5, 0.999}));
    EXPECT_EQ(u, mutant);
}

TEST(Crossover, ZeroRateOnlyForcedIndex)
{
    std::vector<double> parent{1, 2, 3}, mutant{4, 5, 6};
    auto u = binomial_crossover(parent, mutant, 0.0, fixed_tr(0, 0, 0, 2, {0.1, 0.5, 0.9}));
    EXPECT_EQ(u, (std::vector<double>{1, 2, 6}));
}

TEST(Crossover, WorkedExample)
{
    // 1-based j_r = 2 -> index 1
    std::vector<double> parent{1, 2, 3}, mutant{4, 5, 6};
    auto u = binomial_crossover(parent, mutant, 0.5, fixed_tr(0, 0, 0, 1, {0.7, 0.9, 0.1}));
    EXPECT_EQ(u, (std::vector<double>{1, 5, 6}));
}

TEST(Crossover, PropertyAtLeastOneMutantCoordinate)
{
    Generator g(21);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t d = 1 + uniform_index(g, 12);
        std::vector<double> parent(d, 0.0), mutant(d, 1.0);
        auto tr = draw_trial_randomness(0, 5, d, g);
        auto u = binomial_crossover(parent, mutant, uniform01(g) * 0.3, tr);
        EXPECT_GE(std::count(u.begin(), u.end(), 1.0), 1);
    }
}

TEST(Repair, InsideIsUnchanged)
{
    Bounds b{{-5, -5}, {5, 5}};
    EXPECT_EQ(repair_bounds({1, -2}, std::vector<double>{0, 0}, b), (std::vector<double>{1, -2}));
}

TEST(Repair, MidpointTowardParent)
{
    Bounds b{{-5, -5}, {5, 5}};
    auto r = repair_bounds({7, -9}, std::vector<double>{4, -4}, b);
    EXPECT_DOUBLE_EQ(r[0], 4.5);
    EXPECT_DOUBLE_EQ(r[1], -4.5);
}

TEST(Repair, PropertyResultInsideBox)
{
    Generator g(8);
    Bounds b{{-1, -2, -3}, {1, 2, 3}};
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> parent(3), trial(3);
        for (std::size_t j = 0; j < 3; ++j) {
            parent[j] = b.lower[j] + uniform01(g) * (b.upper[j] - b.lower[j]);
            trial[j] = 20 * (uniform01(g) - 0.5);
        }
        EXPECT_TRUE(b.contains(repair_bounds(trial, parent, b)));
    }
}

TEST(Selection, BetterTrialWins)
{
    Individual parent{{0}, 5, true};
    auto out = selection_step(parent, {{1}, 3, true});
    EXPECT_TRUE(out.success);
    EXPECT_DOUBLE_EQ(out.improvement, 2.0);
    EXPECT_EQ(parent.fx, 3);
}

TEST(Selection, TieFavoursTrial)
{
    Individual parent{{0}, 5, true};
    auto out = selection_step(parent, {{1}, 5, true});
    EXPECT_TRUE(out.success);
    EXPECT_EQ(parent.x, std::vector<double>{1});
}

TEST(Selection, WorseTrialLoses)
{
    Individual parent{{0}, 5, true};
    auto out = selection_step(parent, {{1}, 7, true});
    EXPECT_FALSE(out.success);
    EXPECT_EQ(parent.x, std::vector<double>{0});
}

TEST(Selection, UnevaluatedIsContractViolation)
{
    Individual parent{{0}, 5, true};
    EXPECT_THROW(selection_step(parent, {{1}, 0, false}), std::logic_error);
}

TEST(Engine, DeterministicAndElitist)
{
    const Problem problem(Function::rastrigin, 4);
    RunConfig cfg{20, 4000, 1e-8, 17};
    Jde m1(20), m2(20);
    auto a = run_adaptive(problem, cfg, m1);
    auto b = run_adaptive(problem, cfg, m2);
    ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
    for (std::size_t k = 0; k < a.trajectory.size(); ++k) {
        EXPECT_EQ(a.trajectory[k].fevals, b.trajectory[k].fevals);
        EXPECT_EQ(a.trajectory[k].error, b.trajectory[k].error);
    }
    for (std::size_t k = 1; k < a.trajectory.size(); ++k) {
        EXPECT_LT(a.trajectory[k].error, a.trajectory[k - 1].error);
        EXPECT_GT(a.trajectory[k].fevals, a.trajectory[k - 1].fevals);
    }
    EXPECT_LE(a.fevals, cfg.budget);
}

TEST(Engine, BudgetSmallerThanPopulationStopsDuringInit)
{
    const Problem problem(Function::sphere, 2);
    Jde m(20);
    auto r = run_adaptive(problem, {20, 7, 1e-8, 1}, m);
    EXPECT_EQ(r.fevals, 7u);
    EXPECT_TRUE(r.theta.empty());
}

TEST(Engine, ThetaTraceCoversCountedTrialEvents)
{
    const Problem problem(Function::ackley, 3);
    Shade m;
    auto r = run_adaptive(problem, {20, 3000, 1e-8, 4}, m);
    EXPECT_EQ(r.theta.size(), r.fevals - 20);
    for (std::size_t k = 0; k < r.theta.size(); ++k)
        EXPECT_EQ(r.theta[k].fevals, 21 + k);
}

TEST(Engine, SuccessStopsImmediately)
{
    const Problem problem(Function::sphere, 2);
    Jde m(20);
    auto r = run_adaptive(problem, {20, 200000, 1e-8, 2}, m);
    ASSERT_TRUE(r.success);
    EXPECT_EQ(r.fevals, r.fevals_to_success);
    EXPECT_LE(r.final_error(), 1e-8);
    EXPECT_GT(r.trajectory[r.trajectory.size() - 2].error, 1e-8);
}
