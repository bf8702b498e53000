#pragma once

#include "feasible_sets.hpp"
#include "objectives.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pgm {

/// Backtracking exhausted its budget. With a convex, differentiable objective
/// and a correct gradient this cannot happen, so it points at a broken oracle.
class LineSearchFailure : public std::runtime_error {
public:
    LineSearchFailure(const std::string &which, int budget)
        : std::runtime_error(which + ": no sufficient decrease within " + std::to_string(budget) +
                             " trials"),
          trials(budget) {}

    int trials;
};

struct LineSearchResult {
    double alpha = 1.0;  // theta^j for the feasible-direction search, 1 otherwise
    double beta = kNaN;  // beta_bar * theta^l for the boundary search
    int trials = 0;      // accepted exponent j or l
    Vector trial_point;  // accepted x^{k,j} or P_C(x^{k,l})
    double f_trial = kNaN;
    int projections = 0; // projections onto C performed by the search itself
};

/// Armijo search along the segment from `xk` to `wk` = P_C(z^k).
///
/// Returns the smallest j with
///   f(theta^j wk + (1 - theta^j) xk) <= f(xk) - delta theta^j <grad f(xk), xk - wk>,
/// compared exactly, without slack. Requires <grad f(xk), xk - wk> > 0.
inline LineSearchResult armijo_feasible_direction(const Objective &obj, const Vector &xk,
                                                  const Vector &wk, double f_xk,
                                                  const Vector &g_xk, double theta, double delta,
                                                  int max_inner) {
    require_same_dim("armijo_feasible_direction", xk, wk);
    const Vector direction = xk - wk;
    const double slope = g_xk.dot(direction);
    if (!(slope > 0.0))
        throw std::invalid_argument(
            "armijo_feasible_direction: <grad f(x), x - P_C(z)> must be positive (got " +
            std::to_string(slope) + ")");
    for (int j = 0; j <= max_inner; ++j) {
        const double t = std::pow(theta, j);
        Vector trial = t * wk + (1.0 - t) * xk;
        const double f_trial = eval(obj, trial);
        if (f_trial <= f_xk - delta * t * slope)
            return {t, kNaN, j, std::move(trial), f_trial, 0};
    }
    throw LineSearchFailure("armijo_feasible_direction", max_inner);
}

inline LineSearchResult armijo_feasible_direction(const Objective &obj, const Vector &xk,
                                                  const Vector &wk, double theta, double delta,
                                                  int max_inner) {
    return armijo_feasible_direction(obj, xk, wk, eval(obj, xk), grad(obj, xk), theta, delta,
                                     max_inner);
}

/// Armijo search on the pre-projection stepsize: the smallest l with
///   f(P_C(xk - beta_bar theta^l g)) <= f(xk) - delta <g, xk - P_C(xk - beta_bar theta^l g)>.
/// Every trial costs one projection, so `projections` = l + 1.
inline LineSearchResult armijo_boundary(const Objective &obj, const FeasibleSet &set,
                                        const Vector &xk, double f_xk, const Vector &g_xk,
                                        double beta_bar, double theta, double delta,
                                        int max_inner) {
    for (int l = 0; l <= max_inner; ++l) {
        const double beta = beta_bar * std::pow(theta, l);
        Vector trial = project(set, xk - beta * g_xk);
        const double f_trial = eval(obj, trial);
        if (f_trial <= f_xk - delta * g_xk.dot(xk - trial))
            return {1.0, beta, l, std::move(trial), f_trial, l + 1};
    }
    throw LineSearchFailure("armijo_boundary", max_inner);
}

inline LineSearchResult armijo_boundary(const Objective &obj, const FeasibleSet &set,
                                        const Vector &xk, double beta_bar, double theta,
                                        double delta, int max_inner) {
    return armijo_boundary(obj, set, xk, eval(obj, xk), grad(obj, xk), beta_bar, theta, delta,
                           max_inner);
}

/// beta_k = beta and alpha_k = 1 for every k.
///
/// Convergence needs beta in (0, 2/L) with L the Lipschitz constant of the
/// gradient; nothing here checks that, and for non-Lipschitz gradients no such
/// beta exists.
class ConstantStep {
public:
    explicit ConstantStep(double beta) : beta_(beta) {
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw std::invalid_argument("constant step: beta must be positive and finite");
    }

    double beta(int /*k*/) const { return beta_; }
    double alpha(int /*k*/) const { return 1.0; }

private:
    double beta_;
};

/// delta_k = c / (k + 1): divergent sum, summable squares.
inline double exogenous_delta(int k, double c) { return c / static_cast<double>(k + 1); }

/// beta_k = delta_k / ||grad f(x^k)||. A zero gradient means x^k is stationary;
/// the caller must stop instead of calling this.
inline double exogenous_step(double grad_norm, int k, double c) {
    if (!(grad_norm > 0.0))
        throw std::domain_error("exogenous_step: gradient norm must be positive");
    if (k < 0 || !(c > 0.0))
        throw std::invalid_argument("exogenous_step: needs k >= 0 and c > 0");
    return exogenous_delta(k, c) / grad_norm;
}

} // namespace pgm
