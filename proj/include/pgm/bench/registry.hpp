#pragma once

#include "../solver.hpp"

#include <random>
#include <string>
#include <vector>

namespace pgm::bench {

namespace detail {

inline Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double e : v)
        out[i++] = e;
    return out;
}

inline double pnorm_value(double p, const Vector &d) { return std::pow(d.norm(), p) / p; }

} // namespace detail

inline const std::vector<std::string> &registry_ids() {
    static const std::vector<std::string> ids{
        "line-1d",     "quad-box",      "quad-interior",  "pnorm4-ball", "pnorm4-ball-a2",
        "pnorm15-box", "flat-box",      "lse-simplex",    "random-quad-box"};
    return ids;
}

class UnknownInstance : public std::invalid_argument {
public:
    explicit UnknownInstance(const std::string &id)
        : std::invalid_argument("unknown registry instance '" + id + "'") {}
};

/// Built-in instances. `seed` only matters for "random-quad-box".
inline ProblemInstance registry_instance(const std::string &id, std::uint64_t seed = 0) {
    using detail::vec;
    if (id == "line-1d") // x^2/2 on [1, inf)
        return {id, PNorm{2.0, vec({0})}, Box{vec({1}), vec({kInf})}, vec({2}), vec({1}), 0.5};
    if (id == "quad-box") // 1/2 ||x - (2,2)||^2 on [0,1]^2
        return {id, Quadratic{Matrix::Identity(2, 2), vec({-2, -2}), 4.0},
                Box{vec({0, 0}), vec({1, 1})}, vec({0, 0}), vec({1, 1}), 1.0};
    if (id == "quad-interior") // minimizer inside the box; L = 1
        return {id, Quadratic{Matrix::Identity(2, 2), vec({-0.5, -0.5}), 0.25},
                Box{vec({0, 0}), vec({1, 1})}, vec({0, 0}), vec({0.5, 0.5}), 0.0};
    if (id == "pnorm4-ball") {
        const Vector shift = vec({2, 0});
        return {id, PNorm{4.0, shift}, Ball{vec({0, 0}), 1.0}, vec({-0.6, 0.8}), vec({1, 0}),
                detail::pnorm_value(4.0, vec({1, 0}) - shift)};
    }
    if (id == "pnorm4-ball-a2") {
        const Vector shift = vec({3, 0});
        return {id, PNorm{4.0, shift}, Ball{vec({0, 0}), 1.0}, vec({0, 1}), vec({1, 0}),
                detail::pnorm_value(4.0, vec({1, 0}) - shift)};
    }
    if (id == "pnorm15-box") {
        const Vector shift = vec({1.5, -0.5, 0.3});
        const Vector sol = vec({1, 0, 0.3});
        return {id, PNorm{1.5, shift}, Box{vec({0, 0, 0}), vec({1, 1, 1})}, vec({0, 1, 1}), sol,
                detail::pnorm_value(1.5, sol - shift)};
    }
    if (id == "flat-box") { // 1/2 (x1 - 1)^2; solutions {1} x [0,2]
        Matrix Q = Matrix::Zero(2, 2);
        Q(0, 0) = 1.0;
        return {id, Quadratic{Q, vec({-1, 0}), 0.5}, Box{vec({0, 0}), vec({2, 2})}, vec({0, 1.7}),
                vec({1, 1.7}), 0.0};
    }
    if (id == "lse-simplex") {
        Matrix A(3, 3);
        A << 2, -1, 0, 0, 1, -1, -1, 0, 1;
        return {id, LogSumExp{A, vec({0, 0.5, -0.5})}, Simplex{3, 1.0}, vec({1, 0, 0}), {}, {}};
    }
    if (id == "random-quad-box") {
        std::mt19937_64 rng(seed);
        std::normal_distribution<> normal;
        const Eigen::Index n = 4;
        Matrix M(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                M(i, j) = normal(rng);
        Vector b(n);
        for (auto &e : b)
            e = 2.0 * normal(rng);
        Matrix Q = M.transpose() * M / 4.0 + 0.5 * Matrix::Identity(n, n);
        Q = 0.5 * (Q + Q.transpose());
        return {id, Quadratic{Q, b, 0.0}, Box{Vector::Constant(n, -1), Vector::Constant(n, 1)},
                Vector::Zero(n), {}, {}};
    }
    throw UnknownInstance(id);
}

} // namespace pgm::bench
