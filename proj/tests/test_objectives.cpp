#include <pgm/objectives.hpp>

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

Quadratic identity_quadratic(Eigen::Index n) { return {Matrix::Identity(n, n), Vector::Zero(n), 0.0}; }

std::vector<Objective> catalog(test_support::Rng &rng, Eigen::Index n) {
    Matrix M(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            M(i, j) = rng.uniform(-1, 1);
    Matrix A(3, n);
    for (Eigen::Index i = 0; i < 3; ++i)
        A.row(i) = rng.uniform_vector(n, -2, 2).transpose();
    return {
        PNorm{2.0, rng.uniform_vector(n, -1, 1)},
        PNorm{4.0, rng.uniform_vector(n, -1, 1)},
        PNorm{1.5, rng.uniform_vector(n, -1, 1)},
        Quadratic{M.transpose() * M, rng.uniform_vector(n, -1, 1), rng.uniform(-1, 1)},
        LogSumExp{A, rng.uniform_vector(3, -1, 1)},
    };
}

} // namespace

TEST(Eval, Examples) {
    EXPECT_EQ(eval(PNorm{2.0, vec({0, 0})}, vec({3, 4})), 12.5);
    EXPECT_EQ(eval(PNorm{4.0, vec({0, 0})}, vec({0, 0})), 0.0);
    EXPECT_EQ(eval(identity_quadratic(2), vec({1, 1})), 1.0);
    EXPECT_THROW(eval(identity_quadratic(2), vec({1, 1, 1})), DimensionMismatch);
}

TEST(Eval, LogSumExpIsStableForLargeArguments) {
    const LogSumExp lse{Matrix::Identity(2, 2), vec({0, 0})};
    EXPECT_NEAR(eval(lse, vec({1000, 1000})), 1000 + std::log(2.0), 1e-12);
    EXPECT_TRUE(grad(lse, vec({1000, -1000})).allFinite());
}

TEST(Grad, Examples) {
    EXPECT_EQ(grad(PNorm{2.0, vec({0, 0})}, vec({3, 4})), vec({3, 4}));
    EXPECT_EQ(grad(PNorm{4.0, vec({0, 0})}, vec({1, 0})), vec({1, 0}));
    Matrix Q = 2 * Matrix::Identity(2, 2);
    EXPECT_EQ(grad(Quadratic{Q, vec({-2, 0}), 0}, vec({1, 0})), vec({0, 0}));
}

TEST(Grad, PNormAtShiftIsZeroEvenBelowTwo) {
    for (double p : {1.1, 1.5, 2.0, 3.0}) {
        const Vector g = grad(PNorm{p, vec({1, -2})}, vec({1, -2}));
        EXPECT_EQ(g, vec({0, 0})) << "p=" << p;
    }
}

TEST(CheckGradient, Examples) {
    EXPECT_LE(check_gradient(identity_quadratic(2), vec({1, 2}), 1e-5), 1e-9);
    EXPECT_LE(check_gradient(PNorm{4.0, vec({0, 0})}, vec({1, 1}), 1e-5), 1e-7);
    test_support::Rng rng(2);
    for (int i = 0; i < 20; ++i)
        EXPECT_LE(check_gradient(PNorm{2.0, vec({0, 0, 0})}, rng.uniform_vector(3, -5, 5), 1e-5), 1e-9);
    EXPECT_THROW(check_gradient(identity_quadratic(1), vec({0}), 0.0), std::invalid_argument);
}

TEST(CheckGradient, FlagsAWrongGradient) {
    // A quadratic whose Q is not symmetric has gradient (Q+Q^T)/2 x + b, not Qx + b.
    Matrix Q(2, 2);
    Q << 1, 2, 0, 1;
    EXPECT_GT(check_gradient(Quadratic{Q, vec({0, 0}), 0}, vec({1, 1}), 1e-5), 0.5);
}

TEST(Validate, RejectsNonConvexOrMalformedObjectives) {
    EXPECT_THROW(validate(PNorm{1.0, vec({0})}), std::invalid_argument);
    Matrix Q(2, 2);
    Q << 1, 0, 0, -1;
    EXPECT_THROW(validate(Quadratic{Q, vec({0, 0}), 0}), std::invalid_argument);
    Q << 1, 2, 0, 1;
    EXPECT_THROW(validate(Quadratic{Q, vec({0, 0}), 0}), std::invalid_argument);
    EXPECT_THROW(validate(LogSumExp{Matrix::Identity(2, 2), vec({0})}), std::invalid_argument);
    EXPECT_NO_THROW(validate(Quadratic{Matrix::Zero(2, 2), vec({1, 0}), 0}));
}

TEST(ObjectiveProperties, MonotoneGradientAndGradientInequality) {
    test_support::Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = rng.integer(1, 5);
        for (const auto &obj : catalog(rng, n)) {
            const Vector x = rng.uniform_vector(n, -3, 3);
            const Vector y = rng.uniform_vector(n, -3, 3);
            const double scale = 1.0 + std::abs(eval(obj, x)) + std::abs(eval(obj, y));
            EXPECT_GE((grad(obj, x) - grad(obj, y)).dot(x - y), -1e-10 * scale) << kind_name(obj);
            EXPECT_GE(eval(obj, y) - eval(obj, x) - grad(obj, x).dot(y - x), -1e-10 * scale)
                << kind_name(obj);
        }
    }
}

TEST(ObjectiveProperties, QuarticGradientIsNotGloballyLipschitz) {
    const PNorm quartic{4.0, vec({0, 0})};
    auto ratio = [&](double radius) {
        const Vector x = vec({radius, 0});
        const Vector y = vec({radius * (1 + 1e-3), 0});
        return (grad(quartic, x) - grad(quartic, y)).norm() / (x - y).norm();
    };
    EXPECT_GE(ratio(1e3), 1e4 * ratio(1.0));
}
