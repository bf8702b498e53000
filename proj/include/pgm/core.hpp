#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgm {

/// Dense real vector. All library routines assume finite entries and dim >= 1;
/// inputs arriving from outside are checked with require_valid().
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class DimensionMismatch : public std::invalid_argument {
public:
    DimensionMismatch(const std::string &what, Eigen::Index lhs, Eigen::Index rhs)
        : std::invalid_argument(what + ": dimension mismatch (" + std::to_string(lhs) + " vs " +
                                std::to_string(rhs) + ")") {}
};

class InvalidConfig : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require_same_dim(const char *what, const Vector &a, const Vector &b) {
    if (a.size() != b.size())
        throw DimensionMismatch(what, a.size(), b.size());
}

inline bool is_finite(const Vector &a) { return a.size() == 0 || a.allFinite(); }

/// Throws unless `a` is nonempty with finite entries.
inline void require_valid(const Vector &a, const std::string &what = "vector") {
    if (a.size() < 1)
        throw std::invalid_argument(what + ": dimension must be at least 1");
    if (!a.allFinite())
        throw std::invalid_argument(what + ": entries must be finite");
}

inline double dot(const Vector &a, const Vector &b) {
    require_same_dim("dot", a, b);
    return a.dot(b);
}

inline double norm(const Vector &a) { return a.norm(); }

/// s*a + t*b
inline Vector axpby(double s, const Vector &a, double t, const Vector &b) {
    require_same_dim("axpby", a, b);
    return s * a + t * b;
}

inline double distance(const Vector &a, const Vector &b) {
    require_same_dim("distance", a, b);
    return (a - b).norm();
}

inline std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

/// Rule producing beta_k. Constant by default; Cyclic repeats `values`.
struct BetaSchedule {
    enum class Kind { Constant, Cyclic };

    Kind kind = Kind::Constant;
    double value = 1.0;
    std::vector<double> values;

    static BetaSchedule constant(double beta) { return {Kind::Constant, beta, {}}; }
    static BetaSchedule cyclic(std::vector<double> betas) {
        return {Kind::Cyclic, 0.0, std::move(betas)};
    }

    double at(std::size_t k) const {
        if (kind == Kind::Constant || values.empty())
            return value;
        return values[k % values.size()];
    }

    double lowest() const {
        if (kind == Kind::Constant || values.empty())
            return value;
        double m = values.front();
        for (double v : values)
            m = std::min(m, v);
        return m;
    }

    double highest() const {
        if (kind == Kind::Constant || values.empty())
            return value;
        double m = values.front();
        for (double v : values)
            m = std::max(m, v);
        return m;
    }
};

enum class IntersectionMethod {
    Dykstra, // alternating projections only
    Dual,    // nested dual bisection only; at most two cuts
    Auto,    // dual for at most two cuts, Dykstra otherwise or if the dual fails
};

inline const char *to_string(IntersectionMethod m) {
    switch (m) {
    case IntersectionMethod::Dykstra: return "dykstra";
    case IntersectionMethod::Dual: return "dual";
    case IntersectionMethod::Auto: return "auto";
    }
    return "?";
}

struct SolverConfig {
    double beta_min = 1e-4;
    double beta_max = 10.0;
    double theta = 0.5;
    double delta = 1e-4;
    BetaSchedule beta_schedule = BetaSchedule::constant(1.0);

    double residual_tol = 1e-8;
    double fixed_point_tol = 1e-12;
    int max_outer_iters = 10000;
    int max_inner_iters = 100;

    // Classical strategies.
    double constant_beta = 1.0; // (a)
    double beta_bar = 1.0;      // (b)
    double exo_constant = 1.0;  // (d): delta_k = exo_constant / (k + 1)

    // Intersection projection used by the strongly convergent variant.
    double projection_tol = 1e-10;
    int projection_max_cycles = 10000;
    IntersectionMethod projection_method = IntersectionMethod::Auto;

    // Record every `trace_stride`-th iterate (the terminal one is always kept).
    int trace_stride = 1;

    /// Throws InvalidConfig describing the first violated constraint.
    void validate() const {
        auto fail = [](const std::string &m) { throw InvalidConfig(m); };
        if (!(beta_min > 0.0) || !(beta_min <= beta_max) || !std::isfinite(beta_max))
            fail("beta range must satisfy 0 < beta_min <= beta_max < inf");
        if (!(theta > 0.0 && theta < 1.0))
            fail("theta must lie in the open interval (0,1)");
        if (!(delta > 0.0 && delta < 1.0))
            fail("delta must lie in the open interval (0,1)");
        if (beta_schedule.kind == BetaSchedule::Kind::Cyclic && beta_schedule.values.empty())
            fail("cyclic beta schedule needs at least one value");
        if (beta_schedule.lowest() < beta_min || beta_schedule.highest() > beta_max)
            fail("beta schedule leaves [beta_min, beta_max]");
        if (!(residual_tol > 0.0))
            fail("residual_tol must be positive");
        if (!(fixed_point_tol >= 0.0))
            fail("fixed_point_tol must be nonnegative");
        if (max_outer_iters < 1 || max_inner_iters < 1)
            fail("iteration caps must be positive");
        if (!(constant_beta > 0.0))
            fail("constant_beta must be positive");
        if (!(beta_bar > 0.0))
            fail("beta_bar must be positive");
        if (!(exo_constant > 0.0))
            fail("exo_constant must be positive");
        if (!(projection_tol > 0.0) || projection_max_cycles < 1)
            fail("projection tolerance and cycle budget must be positive");
        if (trace_stride < 1)
            fail("trace_stride must be positive");
    }
};

/// One row of a solver trace. Fields that do not apply to a method are NaN;
/// `alpha` is NaN on the terminal record, where no step is taken.
struct IterateRecord {
    int k = 0;
    Vector x;
    double f_val = kNaN;
    double alpha = kNaN;
    double beta = kNaN;
    int inner_trials = 0;
    double residual = kNaN;
    double f_lev = kNaN;
    double epsilon_qf = kNaN;
    double dist_anchor = kNaN;
    double dist_known_solution = kNaN;
    int projections = 0;
};

} // namespace pgm
