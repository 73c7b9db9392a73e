#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include <gaode/adaptation.hpp>
#include <gaode/engine.hpp>

#include "oracles.hpp"

using namespace gaode;

TEST(Means, LehmerWorkedValues)
{
    EXPECT_DOUBLE_EQ(lehmer_mean(std::vector<double>{0.5, 0.5}), 0.5);
    // (0.04 + 0.64) / (0.2 + 0.8), frozen from an independent script
    EXPECT_TRUE(oracle::close_rel(lehmer_mean(std::vector<double>{0.2, 0.8}), 0.68));
    EXPECT_TRUE(oracle::close_rel(oracle::lehmer({0.2, 0.8}), 0.68));
}

TEST(Means, PowerMeanWorkedValues)
{
    EXPECT_TRUE(oracle::close_rel(power_mean(std::vector<double>{0.4, 0.4}, 1.5), 0.4));
    // ((0.2^1.5 + 0.8^1.5) / 2)^(2/3), 40-digit script value
    EXPECT_TRUE(oracle::close_rel(power_mean(std::vector<double>{0.2, 0.8}, 1.5), 0.5451361778496418977));
}

TEST(Means, PropertyWithinRangeAndMatchesReference)
{
    Generator g(5);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<double> s(1 + uniform_index(g, 20));
        std::vector<double> w(s.size());
        for (auto& v : s)
            v = 1.0 - uniform01(g); // (0, 1]
        for (auto& v : w)
            v = 1.0 - uniform01(g);
        const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
        for (double m : {lehmer_mean(s), power_mean(s, 1.5), weighted_lehmer_mean(s, w), arithmetic_mean(s)}) {
            EXPECT_GE(m, *lo * (1 - 1e-12));
            EXPECT_LE(m, *hi * (1 + 1e-12));
        }
        EXPECT_TRUE(oracle::close_rel(lehmer_mean(s), oracle::lehmer(s)));
        EXPECT_TRUE(oracle::close_rel(power_mean(s, 1.5), oracle::power_mean(s, 1.5)));
        EXPECT_TRUE(oracle::close_rel(weighted_lehmer_mean(s, w), oracle::weighted_lehmer(s, w)));
    }
}

TEST(Sampling, ScaleFactorTruncationAndRejection)
{
    EXPECT_EQ(accept_scale_factor(1.7), 1.0);
    EXPECT_EQ(accept_scale_factor(2.3), 1.0);
    EXPECT_FALSE(accept_scale_factor(-0.2));
    EXPECT_FALSE(accept_scale_factor(0.0));
    EXPECT_EQ(accept_scale_factor(0.3), 0.3);
}

TEST(Sampling, CrossoverRateClamp)
{
    EXPECT_EQ(clamp_crossover_rate(1.3), 1.0);
    EXPECT_EQ(clamp_crossover_rate(-0.1), 0.0);
    EXPECT_EQ(clamp_crossover_rate(0.42), 0.42);
}

TEST(Jde, RegenerationBounds)
{
    EXPECT_DOUBLE_EQ(Jde::regenerate_f(0.0), 0.1);
    EXPECT_DOUBLE_EQ(Jde::regenerate_f(1.0), 1.0);
}

TEST(Jde, InheritsWithoutRegeneration)
{
    // Find a seed whose first and third draws both exceed tau, so nothing is regenerated.
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Generator probe(seed);
        const double u1 = uniform01(probe);
        const double u2 = uniform01(probe);
        if (u1 < Jde::tau_f || u2 < Jde::tau_cr)
            continue;
        Jde m(3);
        Generator g(seed);
        EXPECT_EQ(m.assign(1, g), (ControlParams{0.5, 0.9}));
        return;
    }
    FAIL() << "no suitable seed";
}

TEST(Jde, NewValuesKeptOnlyOnSuccess)
{
    Jde m(1);
    Generator g(3);
    for (int t = 0; t < 200; ++t) {
        const ControlParams before = m.state()[0];
        const ControlParams p = m.assign(0, g);
        const bool success = (t % 2) == 0;
        m.observe(0, p, success, 0.0);
        EXPECT_EQ(m.state()[0], success ? p : before);
        EXPECT_GE(m.state()[0].f, 0.1);
        EXPECT_LE(m.state()[0].f, 1.0);
    }
}

TEST(Epsde, SuccessfulPairRetained)
{
    Epsde m(4);
    Generator g(1);
    const ControlParams p = m.assign(2, g);
    m.observe(2, p, true, 1.0);
    EXPECT_EQ(m.assign(2, g), p);
    EXPECT_EQ(m.memory().size(), 1u);
}

TEST(Epsde, PairsDrawnFromPools)
{
    Epsde m(10);
    Generator g(2);
    for (int t = 0; t < 300; ++t) {
        for (std::size_t i = 0; i < 10; ++i) {
            const ControlParams p = m.assign(i, g);
            EXPECT_NE(std::find(Epsde::f_pool.begin(), Epsde::f_pool.end(), p.f), Epsde::f_pool.end());
            EXPECT_NE(std::find(Epsde::cr_pool.begin(), Epsde::cr_pool.end(), p.cr), Epsde::cr_pool.end());
            m.observe(i, p, uniform01(g) < 0.3, 0.0);
        }
        m.end_generation(g);
        EXPECT_LE(m.memory().size(), 10u);
    }
}

TEST(Jade, UpdateRule)
{
    Jade m;
    m.update(std::vector<double>{0.2, 0.8}, std::vector<double>{0.2, 0.8});
    EXPECT_TRUE(oracle::close_rel(m.mu_f(), 0.9 * 0.5 + 0.1 * 0.68));
    EXPECT_TRUE(oracle::close_rel(m.mu_cr(), 0.5));
}

TEST(Jade, EmptySuccessIsNoOp)
{
    Jade m;
    Generator g(1);
    for (std::size_t i = 0; i < 5; ++i)
        m.observe(i, m.assign(i, g), false, 0.0);
    m.end_generation(g);
    EXPECT_EQ(m.mu_f(), 0.5);
    EXPECT_EQ(m.mu_cr(), 0.5);
}

TEST(Mde, UpdateWithBoundaryWeight)
{
    Mde m;
    m.update(std::vector<double>{0.2, 0.8}, std::vector<double>{0.4, 0.4}, 0.8, 0.9);
    // 0.8 * 0.5 + 0.2 * power_mean({0.2, 0.8}, 1.5), script value
    EXPECT_TRUE(oracle::close_rel(m.f_mean(), 0.50902723556992840779));
    EXPECT_TRUE(oracle::close_rel(m.cr_mean(), 0.9 * 0.6 + 0.1 * 0.4));
}

TEST(Mde, EmptySuccessIsNoOpAndDrawsNothing)
{
    Mde m;
    Generator g(1), ref(1);
    m.end_generation(g);
    EXPECT_EQ(m.f_mean(), 0.5);
    EXPECT_EQ(m.cr_mean(), 0.6);
    EXPECT_EQ(g(), ref());
}

TEST(Shade, FreshSamplingCentresAtHalf)
{
    Shade m;
    for (double v : m.memory_f())
        EXPECT_EQ(v, 0.5);
    for (double v : m.memory_cr())
        EXPECT_EQ(v, 0.5);
}

TEST(Shade, SingletonUpdate)
{
    Shade m;
    std::vector<Shade::Success> s{{0.7, 0.3, 2.0}};
    m.update(s);
    EXPECT_TRUE(oracle::close_rel(m.memory_f()[0], 0.7));
    EXPECT_TRUE(oracle::close_rel(m.memory_cr()[0], 0.3));
    EXPECT_EQ(m.cursor(), 1u);
}

TEST(Shade, EqualWeightsGiveLehmer)
{
    Shade m;
    std::vector<Shade::Success> s{{0.2, 0.5, 1.0}, {0.8, 0.5, 1.0}};
    m.update(s);
    EXPECT_TRUE(oracle::close_rel(m.memory_f()[0], 0.68));
}

TEST(Shade, ImprovementWeights)
{
    Shade m;
    std::vector<Shade::Success> s{{0.2, 0.5, 1.0}, {0.8, 0.5, 3.0}};
    m.update(s);
    EXPECT_TRUE(oracle::close_rel(m.memory_f()[0], oracle::weighted_lehmer({0.2, 0.8}, {0.25, 0.75})));
    EXPECT_TRUE(oracle::close_rel(m.memory_f()[0], 0.75384615384615384615));
}

TEST(Shade, ZeroImprovementFallsBackToUniformWeights)
{
    Shade m;
    std::vector<Shade::Success> s{{0.2, 0.5, 0.0}, {0.8, 0.5, 0.0}};
    m.update(s);
    EXPECT_TRUE(oracle::close_rel(m.memory_f()[0], 0.68));
}

TEST(Shade, CursorWrapsAndFreezesOnEmpty)
{
    Shade m(10);
    std::vector<Shade::Success> s{{0.5, 0.5, 1.0}};
    for (int k = 0; k < 9; ++k)
        m.update(s);
    EXPECT_EQ(m.cursor(), 9u); // 1-based slot 10
    m.update(s);
    EXPECT_EQ(m.cursor(), 0u); // wraps to slot 1
    m.update(std::vector<Shade::Success>{});
    EXPECT_EQ(m.cursor(), 0u);
}

namespace {

/// Checks the assign/observe/end_generation call discipline.
class Discipline final : public AdaptationMethod {
public:
    explicit Discipline(std::unique_ptr<AdaptationMethod> inner, std::size_t n)
        : inner_(std::move(inner))
        , assigned_(n, 0)
        , observed_(n, 0)
    {
    }

    std::string_view name() const override { return inner_->name(); }

    ControlParams assign(std::size_t i, Generator& g) override
    {
        EXPECT_EQ(assigned_[i], observed_[i]) << "assign twice before observe";
        ++assigned_[i];
        ControlParams p = inner_->assign(i, g);
        EXPECT_TRUE(p.valid()) << inner_->name() << " F=" << p.f << " CR=" << p.cr;
        return p;
    }

    void observe(std::size_t i, const ControlParams& p, bool s, double imp) override
    {
        ++observed_[i];
        EXPECT_EQ(assigned_[i], observed_[i]);
        EXPECT_GE(imp, 0.0);
        inner_->observe(i, p, s, imp);
    }

    void end_generation(Generator& g) override
    {
        for (std::size_t i = 0; i < assigned_.size(); ++i)
            EXPECT_EQ(observed_[i], generations_ + 1);
        ++generations_;
        inner_->end_generation(g);
    }

    std::size_t generations_ = 0;

private:
    std::unique_ptr<AdaptationMethod> inner_;
    std::vector<std::size_t> assigned_;
    std::vector<std::size_t> observed_;
};

} // namespace

TEST(AdaptationMethods, CallDisciplineAndValidParams)
{
    const Problem problem(Function::rastrigin, 5);
    for (auto token : adaptive_method_tokens) {
        Discipline m(make_method(token, 25), 25);
        auto r = run_adaptive(problem, {25, 5000, 1e-8, 3}, m);
        EXPECT_GT(m.generations_, 10u) << token;
        for (const auto& e : r.theta)
            EXPECT_TRUE((ControlParams{e.f, e.cr}.valid()));
    }
}

TEST(AdaptationMethods, FactoryTokens)
{
    for (auto token : adaptive_method_tokens) {
        auto m = make_method(token, 10);
        ASSERT_TRUE(m);
        EXPECT_EQ(m->name(), token);
    }
    EXPECT_FALSE(make_method("lshade", 10));
}

TEST(AdaptationMethods, NeverTouchSharedStream)
{
    // Two runs that differ only in method must see the same TrialRandomness
    // stream: the first generation's parent choices are identical.
    const Problem problem(Function::sphere, 3);
    std::vector<TrialRandomness> seen[2];
    struct Recorder {
        AdaptiveController inner;
        std::vector<TrialRandomness>& out;
        void begin_generation(std::size_t n, Generator& g) { inner.begin_generation(n, g); }
        Proposal propose(std::size_t i, const Population& p, const TrialRandomness& tr, const Problem& pr, Generator& g)
        {
            out.push_back(tr);
            return inner.propose(i, p, tr, pr, g);
        }
        void observe(std::size_t i, const ControlParams& c, bool s, double d) { inner.observe(i, c, s, d); }
        void end_generation(Generator& g) { inner.end_generation(g); }
    };
    Jade jade;
    Shade shade;
    Recorder a{AdaptiveController(jade), seen[0]};
    Recorder b{AdaptiveController(shade), seen[1]};
    run_de(problem, {20, 500, 0.0, 9}, a);
    run_de(problem, {20, 500, 0.0, 9}, b);
    EXPECT_EQ(seen[0], seen[1]);
}
