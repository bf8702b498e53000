#include <pgm/core.hpp>

#include "support/random.hpp"

#include <gtest/gtest.h>

using namespace pgm;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double e : v)
        out[i++] = e;
    return out;
}

} // namespace

TEST(Core, DotExamples) {
    EXPECT_EQ(dot(vec({1, 2}), vec({3, 4})), 11.0);
    EXPECT_EQ(dot(vec({0, 0}), vec({5, -7})), 0.0);
    EXPECT_EQ(dot(vec({1, 0}), vec({0, 1})), 0.0);
}

TEST(Core, DotRejectsMismatchedDimensions) {
    EXPECT_THROW(dot(vec({1, 2}), vec({1, 2, 3})), DimensionMismatch);
}

TEST(Core, NormExamples) {
    EXPECT_EQ(norm(vec({3, 4})), 5.0);
    EXPECT_EQ(norm(vec({0, 0, 0})), 0.0);
    EXPECT_EQ(norm(vec({-2})), 2.0);
}

TEST(Core, AxpbyExamples) {
    EXPECT_EQ(axpby(1, vec({1, 1}), 0, vec({9, 9})), vec({1, 1}));
    EXPECT_EQ(axpby(0.5, vec({2, 0}), 0.5, vec({0, 2})), vec({1, 1}));
    EXPECT_EQ(axpby(1, vec({1, 2}), -1, vec({1, 2})), vec({0, 0}));
    EXPECT_THROW(axpby(1, vec({1}), 1, vec({1, 2})), DimensionMismatch);
}

TEST(Core, RequireValidRejectsNonFiniteAndEmpty) {
    EXPECT_THROW(require_valid(Vector()), std::invalid_argument);
    EXPECT_THROW(require_valid(vec({1, kNaN})), std::invalid_argument);
    EXPECT_THROW(require_valid(vec({kInf})), std::invalid_argument);
    EXPECT_NO_THROW(require_valid(vec({0.0})));
}

TEST(Core, CauchySchwarzAndParallelogram) {
    test_support::Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const Eigen::Index n = rng.integer(1, 10);
        const Vector a = rng.uniform_vector(n, -10, 10);
        const Vector b = rng.uniform_vector(n, -10, 10);
        EXPECT_LE(std::abs(dot(a, b)), norm(a) * norm(b) * (1 + 1e-14));
        const double lhs = std::pow(norm(axpby(1, a, 1, b)), 2) + std::pow(norm(axpby(1, a, -1, b)), 2);
        const double rhs = 2 * std::pow(norm(a), 2) + 2 * std::pow(norm(b), 2);
        EXPECT_NEAR(lhs, rhs, 1e-10 * rhs);
    }
}

TEST(Core, DefaultConfigIsValid) {
    SolverConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(cfg.theta, 0.5);
    EXPECT_EQ(cfg.delta, 1e-4);
    EXPECT_EQ(cfg.beta_schedule.at(0), 1.0);
    EXPECT_EQ(cfg.beta_min, 1e-4);
    EXPECT_EQ(cfg.beta_max, 10.0);
}

TEST(Core, ConfigRejectsOutOfRangeParameters) {
    auto expect_bad = [](auto mutate) {
        SolverConfig cfg;
        mutate(cfg);
        EXPECT_THROW(cfg.validate(), InvalidConfig);
    };
    expect_bad([](SolverConfig &c) { c.theta = 1.0; });
    expect_bad([](SolverConfig &c) { c.theta = 0.0; });
    expect_bad([](SolverConfig &c) { c.delta = 1.0; });
    expect_bad([](SolverConfig &c) { c.beta_min = 0.0; });
    expect_bad([](SolverConfig &c) { c.beta_min = 5; c.beta_max = 1; });
    expect_bad([](SolverConfig &c) { c.beta_schedule = BetaSchedule::constant(20.0); });
    expect_bad([](SolverConfig &c) { c.beta_schedule = BetaSchedule::cyclic({0.5, 11.0}); });
    expect_bad([](SolverConfig &c) { c.max_outer_iters = 0; });
    expect_bad([](SolverConfig &c) { c.exo_constant = 0; });
}

TEST(Core, CyclicScheduleStaysInRange) {
    SolverConfig cfg;
    cfg.beta_schedule = BetaSchedule::cyclic({0.5, 1.0, 2.0});
    ASSERT_NO_THROW(cfg.validate());
    for (std::size_t k = 0; k < 30; ++k) {
        const double b = cfg.beta_schedule.at(k);
        EXPECT_GE(b, cfg.beta_min);
        EXPECT_LE(b, cfg.beta_max);
    }
    EXPECT_EQ(cfg.beta_schedule.at(4), 1.0);
}
