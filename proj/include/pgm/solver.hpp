#pragma once

#include "core.hpp"
#include "feasible_sets.hpp"
#include "objectives.hpp"
#include "stepsize.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pgm {

struct ProblemInstance {
    std::string id;
    Objective objective;
    FeasibleSet set;
    Vector x0;
    std::optional<Vector> known_solution; // for the strongly convergent method: P_{S*}(x0)
    std::optional<double> known_fstar;
};

class InfeasibleStart : public std::invalid_argument {
public:
    InfeasibleStart(double magnitude)
        : std::invalid_argument("x0 is not in the feasible set (violation " +
                                format_sci(magnitude) + ")"),
          violation(magnitude) {}

    double violation;
};

inline void validate(const ProblemInstance &inst) {
    validate(inst.objective);
    validate(inst.set);
    require_valid(inst.x0, "x0");
    if (dim(inst.objective) != dim(inst.set))
        throw DimensionMismatch("objective vs set", dim(inst.objective), dim(inst.set));
    if (inst.x0.size() != dim(inst.set))
        throw DimensionMismatch("x0 vs set", dim(inst.set), inst.x0.size());
    if (inst.known_solution) {
        require_valid(*inst.known_solution, "known_solution");
        require_same_dim("known_solution", inst.x0, *inst.known_solution);
    }
    if (!contains(inst.set, inst.x0, 1e-9))
        throw InfeasibleStart(violation(inst.set, inst.x0));
}

/// Optimal value, from known_fstar or else f(known_solution).
inline std::optional<double> optimal_value(const ProblemInstance &inst) {
    if (inst.known_fstar)
        return inst.known_fstar;
    if (inst.known_solution)
        return eval(inst.objective, *inst.known_solution);
    return std::nullopt;
}

/// Natural residual ||x - P_C(x - grad f(x))||; zero exactly at solutions.
inline double residual(const ProblemInstance &inst, const Vector &x, const Vector &g) {
    return (x - project(inst.set, x - g)).norm();
}

inline double residual(const ProblemInstance &inst, const Vector &x) {
    return residual(inst, x, grad(inst.objective, x));
}

// ---------------------------------------------------------------------------
// Monitors

/// Running check of one invariant. Each observation contributes a margin;
/// the check passes while every margin is >= -tolerance.
struct Monitor {
    std::string name;
    double tolerance = 0.0;
    double worst_margin = kInf;
    long checks = 0;

    bool passed() const { return checks == 0 || worst_margin >= -tolerance; }
};

class MonitorSuite {
public:
    void observe(const std::string &name, double margin, double tolerance) {
        Monitor &m = slot(name, tolerance);
        ++m.checks;
        if (std::isnan(margin))
            margin = -kInf;
        m.worst_margin = std::min(m.worst_margin, margin);
    }

    /// Registers a check without observing it (so it shows up as skipped).
    void declare(const std::string &name, double tolerance) { slot(name, tolerance); }

    bool all_passed() const {
        return std::all_of(monitors_.begin(), monitors_.end(),
                           [](const Monitor &m) { return m.passed(); });
    }

    const Monitor *find(const std::string &name) const {
        for (const auto &m : monitors_)
            if (m.name == name)
                return &m;
        return nullptr;
    }

    const std::vector<Monitor> &all() const { return monitors_; }

private:
    Monitor &slot(const std::string &name, double tolerance) {
        for (auto &m : monitors_)
            if (m.name == name)
                return m;
        monitors_.push_back({name, tolerance, kInf, 0});
        return monitors_.back();
    }

    std::vector<Monitor> monitors_;
};

namespace monitor {
inline constexpr double kDescentTol = 1e-12;
inline constexpr double kInnerGradTol = 1e-10;
inline constexpr double kFejerTol = 1e-8;
inline constexpr double kEpsilonSumTol = 1e-6;
inline constexpr double kVanishingProduct = 1e-8;
inline constexpr double kAnchorDistTol = 1e-10;
inline constexpr double kBallTol = 1e-7;
inline constexpr double kLevelTol = 1e-9;
inline constexpr double kDes2Tol = 1e-8;
inline constexpr double kCutMembershipTol = 1e-8;
inline constexpr double kStepBoundTol = 1e-12;
inline constexpr int kTrialLimit = 80;
} // namespace monitor

// ---------------------------------------------------------------------------
// Run reports

enum class Status { OptimalResidual, FixedPointStop, IterationCap, LineSearchFailure, IntersectionFailure };

inline const char *to_string(Status s) {
    switch (s) {
    case Status::OptimalResidual: return "OptimalResidual";
    case Status::FixedPointStop: return "FixedPointStop";
    case Status::IterationCap: return "IterationCap";
    case Status::LineSearchFailure: return "LineSearchFailure";
    case Status::IntersectionFailure: return "IntersectionFailure";
    }
    return "?";
}

struct RunReport {
    Status status = Status::IterationCap;
    int iterations = 0;
    std::vector<IterateRecord> trace;
    Vector final_x;
    double final_f = kNaN;
    double final_residual = kNaN;
    MonitorSuite monitors;
    std::string message;

    long total_inner_trials = 0;
    long total_projections = 0;   // projections onto C made by the step rule
    long intersection_cycles = 0; // Dykstra cycles (strongly convergent method only)
    int max_trials = 0;
    /// First iteration whose residual fell to `threshold` or below, if any.
    std::optional<int> first_below(double threshold) const {
        for (const auto &r : trace)
            if (r.residual <= threshold)
                return r.k;
        return std::nullopt;
    }

    bool converged() const {
        return status == Status::OptimalResidual || status == Status::FixedPointStop;
    }
};

namespace detail {

struct Tracker {
    const ProblemInstance &inst;
    const SolverConfig &cfg;
    RunReport report;

    IterateRecord record_for(int k, const Vector &x, double f, double res) const {
        IterateRecord r;
        r.k = k;
        r.x = x;
        r.f_val = f;
        r.residual = res;
        r.dist_anchor = (x - inst.x0).norm();
        if (inst.known_solution)
            r.dist_known_solution = (x - *inst.known_solution).norm();
        return r;
    }

    void push(IterateRecord r, bool terminal) {
        report.total_projections += r.projections;
        report.total_inner_trials += r.inner_trials;
        report.max_trials = std::max(report.max_trials, r.inner_trials);
        if (terminal || r.k % cfg.trace_stride == 0)
            report.trace.push_back(std::move(r));
    }

    RunReport finish(Status status, int iterations, const Vector &x, double f, double res,
                     std::string message = {}) {
        report.status = status;
        report.iterations = iterations;
        report.final_x = x;
        report.final_f = f;
        report.final_residual = res;
        report.message = std::move(message);
        return std::move(report);
    }
};

// Re-tests index j-1 of the feasible-direction search: it has to fail.
inline double armijo_minimality_margin(const Objective &obj, const Vector &x, const Vector &w,
                                       double f, double slope, int j, double theta,
                                       double delta) {
    const double t = std::pow(theta, j - 1);
    const Vector trial = t * w + (1.0 - t) * x;
    return eval(obj, trial) - (f - delta * t * slope);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Weakly convergent method: Armijo search along the feasible direction

struct A1Step {
    bool stop = false; // x^k = P_C(z^k) within fixed_point_tol
    Vector x_next;
    double f_next = kNaN;
    Vector w;          // P_C(z^k)
    Vector g;          // grad f(x^k)
    IterateRecord record;
};

/// One outer iteration: z = x - beta_k g, w = P_C(z), then the convex
/// combination alpha_k w + (1 - alpha_k) x with alpha_k from the Armijo rule.
/// The record's epsilon_qf is filled in by the caller (see a1_epsilon).
inline A1Step a1_step(const ProblemInstance &inst, const Vector &xk, const SolverConfig &cfg,
                      int k) {
    A1Step out;
    const double f = eval(inst.objective, xk);
    out.g = grad(inst.objective, xk);
    const double beta = cfg.beta_schedule.at(static_cast<std::size_t>(k));
    out.w = project(inst.set, xk - beta * out.g);
    const double gap = (xk - out.w).norm();
    const double res = beta == 1.0 ? gap : residual(inst, xk, out.g);

    out.record.k = k;
    out.record.x = xk;
    out.record.f_val = f;
    out.record.beta = beta;
    out.record.residual = res;
    out.record.projections = 1;
    out.record.dist_anchor = (xk - inst.x0).norm();
    if (inst.known_solution)
        out.record.dist_known_solution = (xk - *inst.known_solution).norm();

    if (gap <= cfg.fixed_point_tol || out.g.dot(xk - out.w) <= 0.0) {
        out.stop = true;
        return out;
    }
    if (res <= cfg.residual_tol)
        return out; // caller stops on the residual; no search needed
    auto ls = armijo_feasible_direction(inst.objective, xk, out.w, f, out.g, cfg.theta, cfg.delta,
                                        cfg.max_inner_iters);
    out.record.alpha = ls.alpha;
    out.record.inner_trials = ls.trials;
    out.x_next = std::move(ls.trial_point);
    out.f_next = ls.f_trial;
    return out;
}

/// eps_k = -alpha_k ||x^k - w^k||^2 + 2 (beta_max / delta) (f(x^k) - f(x^{k+1})).
inline double a1_epsilon(const Vector &xk, const Vector &wk, double alpha, double f_k,
                         double f_next, const SolverConfig &cfg) {
    return -alpha * (xk - wk).squaredNorm() + 2.0 * (cfg.beta_max / cfg.delta) * (f_k - f_next);
}

inline RunReport a1_solve(const ProblemInstance &inst, const SolverConfig &cfg) {
    cfg.validate();
    validate(inst);
    using namespace monitor;
    detail::Tracker t{inst, cfg, {}};
    auto &mon = t.report.monitors;
    mon.declare("descent", kDescentTol);
    mon.declare("inner_gradient", kInnerGradTol);
    mon.declare("quasi_fejer", kFejerTol);
    mon.declare("epsilon_sum", kEpsilonSumTol);
    mon.declare("armijo_minimality", 0.0);
    mon.declare("finite_termination", 0.0);

    const auto fstar = optimal_value(inst);
    const double f0 = eval(inst.objective, inst.x0);
    double eps_sum = 0.0;
    double vanishing = kInf;

    Vector x = inst.x0;
    for (int k = 0;; ++k) {
        if (k >= cfg.max_outer_iters) {
            const double f = eval(inst.objective, x);
            const double res = residual(inst, x);
            t.push(t.record_for(k, x, f, res), true);
            return t.finish(Status::IterationCap, k, x, f, res);
        }
        A1Step step;
        try {
            step = a1_step(inst, x, cfg, k);
        } catch (const LineSearchFailure &e) {
            const double f = eval(inst.objective, x);
            const double res = residual(inst, x);
            t.push(t.record_for(k, x, f, res), true);
            return t.finish(Status::LineSearchFailure, k, x, f, res, e.what());
        }
        IterateRecord &rec = step.record;
        const double gap2 = (x - step.w).squaredNorm();
        if (step.stop || rec.residual <= cfg.residual_tol) {
            vanishing = std::min(vanishing, gap2);
            if (std::isfinite(vanishing) && rec.residual <= cfg.residual_tol)
                mon.observe("vanishing_product", kVanishingProduct - vanishing, 0.0);
            const double f = rec.f_val, res = rec.residual;
            rec.alpha = kNaN;
            rec.inner_trials = 0;
            t.push(std::move(rec), true);
            return t.finish(step.stop ? Status::FixedPointStop : Status::OptimalResidual, k, x, f,
                            res);
        }

        const double f = rec.f_val;
        const double slope = step.g.dot(x - step.w);
        rec.epsilon_qf = a1_epsilon(x, step.w, rec.alpha, f, step.f_next, cfg);
        eps_sum += rec.epsilon_qf;
        vanishing = std::min(vanishing, rec.alpha * gap2);

        mon.observe("descent", f - step.f_next, kDescentTol);
        mon.observe("inner_gradient", slope - gap2 / rec.beta, kInnerGradTol);
        if (inst.known_solution) {
            const Vector &xs = *inst.known_solution;
            mon.observe("quasi_fejer",
                        (x - xs).squaredNorm() + rec.epsilon_qf - (step.x_next - xs).squaredNorm(),
                        kFejerTol);
        }
        if (fstar)
            mon.observe("epsilon_sum", 2.0 * (cfg.beta_max / cfg.delta) * (f0 - *fstar) - eps_sum,
                        kEpsilonSumTol);
        if (rec.inner_trials > 0)
            mon.observe("armijo_minimality",
                        detail::armijo_minimality_margin(inst.objective, x, step.w, f, slope,
                                                         rec.inner_trials, cfg.theta, cfg.delta),
                        0.0);
        mon.observe("finite_termination", kTrialLimit - 1 - rec.inner_trials, 0.0);

        t.push(std::move(rec), false);
        x = std::move(step.x_next);
    }
}

// ---------------------------------------------------------------------------
// Strongly convergent method: project x0 onto C ∩ W_k ∩ H_k

struct A2State {
    Vector x;
    double f_lev = kInf;
    Vector anchor;
    int k = 0;
};

class IntersectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct A2Step {
    bool stop_fixed_point = false; // x^k = P_C(z^k)
    bool stop_no_move = false;     // x^{k+1} = x^k
    bool stop_residual = false;
    A2State next;
    IterateRecord record;
    Halfcut level_cut;  // H_k
    Halfcut anchor_cut; // W_k
    Vector w;
    Vector g;
    double f_trial = kNaN; // f(x^{k,j(k)})
    int cycles = 0;
};

inline A2Step a2_step(const ProblemInstance &inst, const A2State &state, const SolverConfig &cfg) {
    A2Step out;
    const Vector &x = state.x;
    const int k = state.k;
    const double f = eval(inst.objective, x);
    out.g = grad(inst.objective, x);
    const double beta = cfg.beta_schedule.at(static_cast<std::size_t>(k));
    out.w = project(inst.set, x - beta * out.g);
    const double gap = (x - out.w).norm();

    IterateRecord &rec = out.record;
    rec.k = k;
    rec.x = x;
    rec.f_val = f;
    rec.beta = beta;
    rec.residual = beta == 1.0 ? gap : residual(inst, x, out.g);
    rec.projections = 1;
    rec.f_lev = state.f_lev;
    rec.dist_anchor = (x - state.anchor).norm();
    if (inst.known_solution)
        rec.dist_known_solution = (x - *inst.known_solution).norm();

    // A zero gradient at a feasible point is optimal; also covers x^k landing a
    // hair outside C after the inexact intersection projection.
    if (gap <= cfg.fixed_point_tol || out.g.norm() == 0.0 || out.g.dot(x - out.w) <= 0.0) {
        out.stop_fixed_point = true;
        out.next = state;
        return out;
    }
    if (rec.residual <= cfg.residual_tol) {
        out.stop_residual = true;
        out.next = state;
        return out;
    }

    auto ls = armijo_feasible_direction(inst.objective, x, out.w, f, out.g, cfg.theta, cfg.delta,
                                        cfg.max_inner_iters);
    rec.alpha = ls.alpha;
    rec.inner_trials = ls.trials;
    out.f_trial = ls.f_trial;
    const double f_lev = std::min(state.f_lev, ls.f_trial);
    rec.f_lev = f_lev;

    // H_k = {y : <g, y - x> + f(x) - f_lev <= 0}, W_k = {y : <y - x, x0 - x> <= 0}
    out.level_cut = Halfcut::make(out.g, out.g.dot(x) - f + f_lev);
    const Vector to_anchor = state.anchor - x;
    out.anchor_cut = Halfcut::make(to_anchor, to_anchor.dot(x));

    const std::array<Halfcut, 2> cuts{out.level_cut, out.anchor_cut};
    IntersectionStats stats;
    Vector x_next;
    try {
        x_next = project_intersection(inst.set, cuts, state.anchor, cfg.projection_tol,
                                      cfg.projection_max_cycles, &stats, cfg.projection_method);
    } catch (const InfeasibleCut &e) {
        throw IntersectionError(std::string("empty cut at k=") + std::to_string(k) +
                                " (level value below the optimum?): " + e.what());
    } catch (const IntersectionNonconvergence &e) {
        throw IntersectionError(std::string("k=") + std::to_string(k) + ": " + e.what());
    }
    out.cycles = stats.cycles;
    out.stop_no_move = (x_next - x).norm() <= cfg.fixed_point_tol;
    out.next = {std::move(x_next), f_lev, state.anchor, k + 1};
    return out;
}

inline RunReport a2_solve(const ProblemInstance &inst, const SolverConfig &cfg) {
    cfg.validate();
    validate(inst);
    using namespace monitor;
    detail::Tracker t{inst, cfg, {}};
    auto &mon = t.report.monitors;
    mon.declare("anchor_distance_nondecreasing", kAnchorDistTol);
    mon.declare("ball_containment", kBallTol);
    mon.declare("level_below_f", kLevelTol);
    mon.declare("level_above_fstar", kLevelTol);
    mon.declare("step_vs_level_gap", kDes2Tol);
    mon.declare("solution_in_level_cut", kCutMembershipTol);
    mon.declare("solution_in_anchor_cut", kCutMembershipTol);
    mon.declare("level_nonincreasing", 0.0);
    mon.declare("armijo_minimality", 0.0);
    mon.declare("finite_termination", 0.0);

    const auto fstar = optimal_value(inst);
    std::optional<Vector> ball_center;
    double ball_radius = 0.0;
    if (inst.known_solution) {
        ball_center = 0.5 * (inst.x0 + *inst.known_solution);
        ball_radius = 0.5 * (*inst.known_solution - inst.x0).norm();
    }
    auto check_ball = [&](const Vector &x) {
        if (ball_center)
            mon.observe("ball_containment", ball_radius - (x - *ball_center).norm(), kBallTol);
    };

    A2State state{inst.x0, kInf, inst.x0, 0};
    check_ball(state.x);
    for (;;) {
        const int k = state.k;
        const Vector x = state.x;
        auto terminal = [&](Status s, std::string msg = {}) {
            const double f = eval(inst.objective, x);
            const double res = residual(inst, x);
            auto rec = t.record_for(k, x, f, res);
            rec.f_lev = state.f_lev;
            t.push(std::move(rec), true);
            return t.finish(s, k, x, f, res, std::move(msg));
        };
        if (k >= cfg.max_outer_iters)
            return terminal(Status::IterationCap);

        A2Step step;
        try {
            step = a2_step(inst, state, cfg);
        } catch (const LineSearchFailure &e) {
            return terminal(Status::LineSearchFailure, e.what());
        } catch (const IntersectionError &e) {
            return terminal(Status::IntersectionFailure, e.what());
        }
        IterateRecord &rec = step.record;
        if (step.stop_fixed_point || step.stop_residual) {
            const double f = rec.f_val, res = rec.residual;
            rec.alpha = kNaN;
            rec.inner_trials = 0;
            t.push(std::move(rec), true);
            return t.finish(step.stop_fixed_point ? Status::FixedPointStop : Status::OptimalResidual,
                            k, x, f, res);
        }
        t.report.intersection_cycles += step.cycles;

        const Vector &xn = step.next.x;
        const double f = rec.f_val;
        const double gnorm = step.g.norm();
        const double slope = step.g.dot(x - step.w);
        mon.observe("anchor_distance_nondecreasing",
                    (xn - inst.x0).norm() - (x - inst.x0).norm(), kAnchorDistTol);
        check_ball(xn);
        mon.observe("level_below_f", f - step.next.f_lev, kLevelTol);
        if (fstar)
            mon.observe("level_above_fstar", step.next.f_lev - *fstar, kLevelTol);
        mon.observe("level_nonincreasing", state.f_lev - step.next.f_lev, 0.0);
        mon.observe("step_vs_level_gap", (x - xn).norm() - (f - step.next.f_lev) / gnorm,
                    kDes2Tol);
        if (inst.known_solution) {
            mon.observe("solution_in_level_cut", -step.level_cut.excess(*inst.known_solution),
                        kCutMembershipTol);
            mon.observe("solution_in_anchor_cut",
                        step.anchor_cut.degenerate ? 0.0
                                                   : -step.anchor_cut.excess(*inst.known_solution),
                        kCutMembershipTol);
        }
        if (rec.inner_trials > 0)
            mon.observe("armijo_minimality",
                        detail::armijo_minimality_margin(inst.objective, x, step.w, f, slope,
                                                         rec.inner_trials, cfg.theta, cfg.delta),
                        0.0);
        mon.observe("finite_termination", kTrialLimit - 1 - rec.inner_trials, 0.0);

        const bool no_move = step.stop_no_move;
        t.push(std::move(rec), false);
        state = std::move(step.next);
        if (no_move) {
            // Reported separately: a stalled anchor projection is not proven optimal.
            const double fn = eval(inst.objective, state.x);
            const double res = residual(inst, state.x);
            auto last = t.record_for(state.k, state.x, fn, res);
            last.f_lev = state.f_lev;
            t.push(std::move(last), true);
            return t.finish(Status::FixedPointStop, state.k, state.x, fn, res,
                            "iterate stopped moving");
        }
    }
}

// ---------------------------------------------------------------------------
// Classical strategies with alpha_k = 1

enum class ClassicStrategy { Constant, ArmijoBoundary, Exogenous };

/// Pure projection steps x^{k+1} = P_C(x^k - beta_k grad f(x^k)) with beta_k
/// constant (a), from the boundary Armijo search (b), or exogenous (d).
/// Strategy (d) is not a descent method; instead every step is checked
/// against ||x^{k+1} - x^k|| <= delta_k.
inline RunReport classic_solve(const ProblemInstance &inst, const SolverConfig &cfg,
                               ClassicStrategy strategy) {
    cfg.validate();
    validate(inst);
    using namespace monitor;
    detail::Tracker t{inst, cfg, {}};
    auto &mon = t.report.monitors;
    if (strategy == ClassicStrategy::ArmijoBoundary)
        mon.declare("descent", kDescentTol);
    if (strategy == ClassicStrategy::Exogenous)
        mon.declare("step_bound", kStepBoundTol);
    const ConstantStep constant(strategy == ClassicStrategy::Constant ? cfg.constant_beta : 1.0);

    Vector x = inst.x0;
    for (int k = 0;; ++k) {
        const double f = eval(inst.objective, x);
        const Vector g = grad(inst.objective, x);
        const double res = residual(inst, x, g);
        IterateRecord rec = t.record_for(k, x, f, res);
        auto stop = [&](Status s, std::string msg = {}) {
            rec.alpha = kNaN;
            rec.inner_trials = 0;
            t.push(std::move(rec), true);
            return t.finish(s, k, x, f, res, std::move(msg));
        };
        if (k >= cfg.max_outer_iters) {
            rec.projections = 0;
            return stop(Status::IterationCap);
        }

        Vector x_next;
        double f_next = kNaN;
        switch (strategy) {
        case ClassicStrategy::Constant:
            rec.beta = constant.beta(k);
            x_next = project(inst.set, x - rec.beta * g);
            rec.projections = 1;
            break;
        case ClassicStrategy::ArmijoBoundary: {
            if (g.norm() == 0.0)
                return stop(Status::FixedPointStop);
            LineSearchResult ls;
            try {
                ls = armijo_boundary(inst.objective, inst.set, x, f, g, cfg.beta_bar, cfg.theta,
                                     cfg.delta, cfg.max_inner_iters);
            } catch (const LineSearchFailure &e) {
                return stop(Status::LineSearchFailure, e.what());
            }
            rec.beta = ls.beta;
            rec.inner_trials = ls.trials;
            rec.projections = ls.projections;
            x_next = std::move(ls.trial_point);
            f_next = ls.f_trial;
            break;
        }
        case ClassicStrategy::Exogenous:
            if (g.norm() == 0.0)
                return stop(Status::FixedPointStop);
            rec.beta = exogenous_step(g.norm(), k, cfg.exo_constant);
            x_next = project(inst.set, x - rec.beta * g);
            rec.projections = 1;
            break;
        }
        rec.alpha = 1.0;

        // The step rule already ran at a terminal iterate, so its search
        // trials and projections stay on the record.
        if ((x_next - x).norm() <= cfg.fixed_point_tol || res <= cfg.residual_tol) {
            const Status s = res <= cfg.residual_tol && (x_next - x).norm() > cfg.fixed_point_tol
                                 ? Status::OptimalResidual
                                 : Status::FixedPointStop;
            rec.alpha = kNaN;
            t.push(std::move(rec), true);
            return t.finish(s, k, x, f, res);
        }

        if (strategy == ClassicStrategy::ArmijoBoundary)
            mon.observe("descent", f - f_next, kDescentTol);
        if (strategy == ClassicStrategy::Exogenous)
            mon.observe("step_bound", exogenous_delta(k, cfg.exo_constant) - (x_next - x).norm(),
                        kStepBoundTol);
        t.push(std::move(rec), false);
        x = std::move(x_next);
    }
}

} // namespace pgm
