#pragma once

#include "core.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace pgm {

/// Componentwise bounds; entries of `lower` may be -inf and of `upper` +inf.
struct Box {
    Vector lower;
    Vector upper;
};

struct Ball {
    Vector center;
    double radius = 1.0;
};

/// {x : <normal, x> <= offset}
struct Halfspace {
    Vector normal;
    double offset = 0.0;
};

/// {x : <normal, x> = offset}
struct Hyperplane {
    Vector normal;
    double offset = 0.0;
};

/// {x >= 0 : sum(x) = scale}
struct Simplex {
    Eigen::Index dim = 1;
    double scale = 1.0;
};

struct WholeSpace {
    Eigen::Index dim = 1;
};

using FeasibleSet = std::variant<Box, Ball, Halfspace, Hyperplane, Simplex, WholeSpace>;

inline Eigen::Index dim(const FeasibleSet &set) {
    struct {
        Eigen::Index operator()(const Box &s) const { return s.lower.size(); }
        Eigen::Index operator()(const Ball &s) const { return s.center.size(); }
        Eigen::Index operator()(const Halfspace &s) const { return s.normal.size(); }
        Eigen::Index operator()(const Hyperplane &s) const { return s.normal.size(); }
        Eigen::Index operator()(const Simplex &s) const { return s.dim; }
        Eigen::Index operator()(const WholeSpace &s) const { return s.dim; }
    } visitor;
    return std::visit(visitor, set);
}

inline std::string kind_name(const FeasibleSet &set) {
    static const char *names[] = {"box", "ball", "halfspace", "hyperplane", "simplex", "whole"};
    return names[set.index()];
}

/// Throws std::invalid_argument if `set` is malformed (empty, unbounded radius, zero normal...).
inline void validate(const FeasibleSet &set) {
    auto fail = [&](const std::string &m) { throw std::invalid_argument(kind_name(set) + ": " + m); };
    if (dim(set) < 1)
        fail("dimension must be at least 1");
    if (const auto *b = std::get_if<Box>(&set)) {
        if (b->lower.size() != b->upper.size())
            fail("lower/upper dimension mismatch");
        for (Eigen::Index i = 0; i < b->lower.size(); ++i) {
            if (std::isnan(b->lower[i]) || std::isnan(b->upper[i]))
                fail("bounds must not be NaN");
            if (b->lower[i] > b->upper[i] || b->lower[i] == kInf || b->upper[i] == -kInf)
                fail("requires lower_i <= upper_i with a finite feasible interval");
        }
    } else if (const auto *b = std::get_if<Ball>(&set)) {
        require_valid(b->center, "ball center");
        if (!(b->radius > 0.0) || !std::isfinite(b->radius))
            fail("radius must be positive and finite");
    } else if (const auto *h = std::get_if<Halfspace>(&set)) {
        require_valid(h->normal, "halfspace normal");
        if (!(h->normal.norm() > 0.0) || !std::isfinite(h->offset))
            fail("normal must be nonzero and offset finite");
    } else if (const auto *h = std::get_if<Hyperplane>(&set)) {
        require_valid(h->normal, "hyperplane normal");
        if (!(h->normal.norm() > 0.0) || !std::isfinite(h->offset))
            fail("normal must be nonzero and offset finite");
    } else if (const auto *s = std::get_if<Simplex>(&set)) {
        if (!(s->scale > 0.0) || !std::isfinite(s->scale))
            fail("scale must be positive and finite");
    }
}

namespace detail {

// Sort-and-threshold projection onto {x >= 0, sum x = scale}.
inline Vector project_simplex(const Vector &x, double scale) {
    if ((x.array() >= 0.0).all() && x.sum() == scale)
        return x;
    std::vector<double> u(x.data(), x.data() + x.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        const double candidate = (cumulative - scale) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0)
            tau = candidate;
    }
    return (x.array() - tau).cwiseMax(0.0).matrix();
}

} // namespace detail

/// Nearest point of `set` to `x`. Points already in the set come back unchanged.
inline Vector project(const FeasibleSet &set, const Vector &x) {
    if (x.size() != dim(set))
        throw DimensionMismatch("project(" + kind_name(set) + ")", dim(set), x.size());
    struct {
        const Vector &x;
        Vector operator()(const Box &s) const { return x.cwiseMax(s.lower).cwiseMin(s.upper); }
        Vector operator()(const Ball &s) const {
            const Vector d = x - s.center;
            const double r = d.norm();
            if (r <= s.radius)
                return x;
            return s.center + (s.radius / r) * d;
        }
        Vector operator()(const Halfspace &s) const {
            const double excess = s.normal.dot(x) - s.offset;
            if (excess <= 0.0)
                return x;
            return x - (excess / s.normal.squaredNorm()) * s.normal;
        }
        Vector operator()(const Hyperplane &s) const {
            const double excess = s.normal.dot(x) - s.offset;
            if (excess == 0.0)
                return x;
            return x - (excess / s.normal.squaredNorm()) * s.normal;
        }
        Vector operator()(const Simplex &s) const { return detail::project_simplex(x, s.scale); }
        Vector operator()(const WholeSpace &) const { return x; }
    } visitor{x};
    return std::visit(visitor, set);
}

/// True iff `x` violates every defining constraint by at most `tol`.
/// Halfspace and hyperplane violations are measured as Euclidean distances.
inline bool contains(const FeasibleSet &set, const Vector &x, double tol) {
    if (x.size() != dim(set))
        return false;
    struct {
        const Vector &x;
        double tol;
        bool operator()(const Box &s) const {
            return ((x - s.lower).array() >= -tol).all() && ((s.upper - x).array() >= -tol).all();
        }
        bool operator()(const Ball &s) const { return (x - s.center).norm() <= s.radius + tol; }
        bool operator()(const Halfspace &s) const {
            return (s.normal.dot(x) - s.offset) / s.normal.norm() <= tol;
        }
        bool operator()(const Hyperplane &s) const {
            return std::abs(s.normal.dot(x) - s.offset) / s.normal.norm() <= tol;
        }
        bool operator()(const Simplex &s) const {
            return (x.array() >= -tol).all() && std::abs(x.sum() - s.scale) <= tol;
        }
        bool operator()(const WholeSpace &) const { return true; }
    } visitor{x, tol};
    return std::visit(visitor, set);
}

/// Largest constraint violation of `x` (0 when feasible). Same units as contains().
inline double violation(const FeasibleSet &set, const Vector &x) {
    struct {
        const Vector &x;
        double operator()(const Box &s) const {
            return std::max({0.0, (s.lower - x).maxCoeff(), (x - s.upper).maxCoeff()});
        }
        double operator()(const Ball &s) const {
            return std::max(0.0, (x - s.center).norm() - s.radius);
        }
        double operator()(const Halfspace &s) const {
            return std::max(0.0, (s.normal.dot(x) - s.offset) / s.normal.norm());
        }
        double operator()(const Hyperplane &s) const {
            return std::abs(s.normal.dot(x) - s.offset) / s.normal.norm();
        }
        double operator()(const Simplex &s) const {
            return std::max({0.0, -x.minCoeff(), std::abs(x.sum() - s.scale)});
        }
        double operator()(const WholeSpace &) const { return 0.0; }
    } visitor{x};
    return std::visit(visitor, set);
}

// ---------------------------------------------------------------------------
// Halfspace cuts and projection onto C intersected with cuts

class InfeasibleCut : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dykstra ran out of cycles. `best` is the last iterate.
class IntersectionNonconvergence : public std::runtime_error {
public:
    IntersectionNonconvergence(Vector best_iterate, int cycles_run, double last_change)
        : std::runtime_error("intersection projection did not converge after " +
                             std::to_string(cycles_run) + " cycles (last change " +
                             format_sci(last_change) + ")"),
          best(std::move(best_iterate)), cycles(cycles_run), change(last_change) {}

    Vector best;
    int cycles;
    double change;
};

/// {x : <normal, x> <= offset}; a zero normal makes the cut either everything
/// (offset >= 0) or nothing (offset < 0).
struct Halfcut {
    Vector normal;
    double offset = 0.0;
    bool degenerate = false;

    static Halfcut make(Vector normal, double offset) {
        const bool zero = normal.norm() == 0.0;
        return {std::move(normal), offset, zero};
    }

    bool is_whole_space() const { return degenerate && offset >= 0.0; }
    bool is_empty() const { return degenerate && offset < 0.0; }

    /// Euclidean distance from x to the cut (0 inside).
    double violation(const Vector &x) const {
        if (degenerate)
            return offset >= 0.0 ? 0.0 : kInf;
        return std::max(0.0, (normal.dot(x) - offset) / normal.norm());
    }

    /// Signed raw slack <normal, x> - offset.
    double excess(const Vector &x) const { return normal.dot(x) - offset; }
};

inline Vector project_halfcut(const Halfcut &cut, const Vector &x) {
    if (cut.is_empty())
        throw InfeasibleCut("degenerate cut 0 <= " + std::to_string(cut.offset) + " is empty");
    if (cut.degenerate)
        return x;
    require_same_dim("project_halfcut", cut.normal, x);
    const double excess = cut.excess(x);
    if (excess <= 0.0)
        return x;
    return x - (excess / cut.normal.squaredNorm()) * cut.normal;
}

struct IntersectionStats {
    int cycles = 0;
    double last_change = 0.0;
    bool dual = false; // certified by the dual solve rather than Dykstra
};

namespace detail {

// Exact projection onto base ∩ {<n_i, y> <= b_i} through the dual: y(lambda) =
// P_base(a - sum lambda_i n_i), and the dual is concave with partial
// derivatives <n_i, y(lambda)> - b_i. Maximized over lambda >= 0 one
// coordinate at a time by nested bisection, so the cost is exponential in the
// number of cuts; only used for one or two.
struct DualBisection {
    const FeasibleSet &base;
    const Vector &anchor;
    std::vector<Vector> normals; // unit length
    std::vector<double> offsets;
    std::vector<double> lambda;

    Vector solve(std::size_t i) {
        if (i == normals.size()) {
            Vector z = anchor;
            for (std::size_t j = 0; j < normals.size(); ++j)
                z -= lambda[j] * normals[j];
            return project(base, z);
        }
        auto slope_at = [&](double v, Vector &y) {
            lambda[i] = v;
            y = solve(i + 1);
            return normals[i].dot(y) - offsets[i];
        };
        Vector y_hi;
        if (slope_at(0.0, y_hi) <= 0.0)
            return y_hi;
        double lo = 0.0, hi = 1.0;
        while (slope_at(hi, y_hi) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e150)
                return y_hi; // no finite multiplier; caller sees the violation
        }
        Vector y_mid;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            if (slope_at(mid, y_mid) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
                y_hi = y_mid;
            }
        }
        lambda[i] = hi;
        return y_hi;
    }
};

} // namespace detail

namespace detail {

inline bool within_all(const FeasibleSet &base, const std::vector<const Halfcut *> &cuts,
                       const Vector &y, double tol) {
    return contains(base, y, tol) &&
           std::all_of(cuts.begin(), cuts.end(),
                       [&](const Halfcut *c) { return c->violation(y) <= tol; });
}

// Converged when one full cycle moves both the iterate and every correction
// vector by at most `tol` and all memberships hold within `tol`.
inline std::optional<Vector> dykstra(const FeasibleSet &base,
                                     const std::vector<const Halfcut *> &cuts, const Vector &anchor,
                                     double tol, int max_cycles, IntersectionStats &stats,
                                     Vector &last) {
    const std::size_t m = cuts.size() + 1;
    std::vector<Vector> correction(m, Vector::Zero(anchor.size()));
    Vector x = anchor;
    for (int cycle = 1; cycle <= max_cycles; ++cycle) {
        const Vector start = x;
        double change = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const Vector y = x + correction[i];
            x = i == 0 ? project(base, y) : project_halfcut(*cuts[i - 1], y);
            Vector next_correction = y - x;
            change = std::max(change, (next_correction - correction[i]).norm());
            correction[i] = std::move(next_correction);
        }
        change = std::max(change, (x - start).norm());
        stats.cycles = cycle;
        stats.last_change = change;
        if (change <= tol && within_all(base, cuts, x, tol))
            return x;
    }
    last = x;
    return std::nullopt;
}

inline std::optional<Vector> dual_projection(const FeasibleSet &base,
                                             const std::vector<const Halfcut *> &cuts,
                                             const Vector &anchor, double tol) {
    if (cuts.size() > 2)
        return std::nullopt;
    DualBisection dual{base, anchor, {}, {}, std::vector<double>(cuts.size(), 0.0)};
    for (const Halfcut *c : cuts) {
        const double scale = c->normal.norm();
        dual.normals.push_back(c->normal / scale);
        dual.offsets.push_back(c->offset / scale);
    }
    Vector y = dual.solve(0);
    if (!within_all(base, cuts, y, tol))
        return std::nullopt;
    return y;
}

} // namespace detail

/// Projection of `anchor` onto base ∩ cuts.
///
/// Whole-space cuts are dropped first; with no cuts left this is exactly
/// project(base, anchor), and whole space with one cut is the closed form.
/// Throws InfeasibleCut for an empty degenerate cut and
/// IntersectionNonconvergence when no method certifies a point.
inline Vector project_intersection(const FeasibleSet &base, std::span<const Halfcut> cuts,
                                   const Vector &anchor, double tol = 1e-10,
                                   int max_cycles = 10000, IntersectionStats *stats = nullptr,
                                   IntersectionMethod method = IntersectionMethod::Auto) {
    if (anchor.size() != dim(base))
        throw DimensionMismatch("project_intersection", dim(base), anchor.size());
    std::vector<const Halfcut *> active;
    for (const auto &cut : cuts) {
        if (cut.is_empty())
            throw InfeasibleCut("degenerate cut 0 <= " + std::to_string(cut.offset) + " is empty");
        if (cut.degenerate)
            continue;
        require_same_dim("project_intersection cut", cut.normal, anchor);
        active.push_back(&cut);
    }
    IntersectionStats local;
    IntersectionStats &st = stats ? *stats : local;
    st = {};
    if (active.empty())
        return project(base, anchor);
    if (std::holds_alternative<WholeSpace>(base) && active.size() == 1)
        return project_halfcut(*active.front(), anchor);

    if (method != IntersectionMethod::Dykstra) {
        if (auto y = detail::dual_projection(base, active, anchor, tol)) {
            st.dual = true;
            return *y;
        }
        if (method == IntersectionMethod::Dual)
            throw IntersectionNonconvergence(anchor, 0, kInf);
    }
    Vector last;
    if (auto y = detail::dykstra(base, active, anchor, tol, max_cycles, st, last))
        return *y;
    throw IntersectionNonconvergence(last, max_cycles, st.last_change);
}

inline Vector project_intersection(const FeasibleSet &base, std::initializer_list<Halfcut> cuts,
                                   const Vector &anchor, double tol = 1e-10,
                                   int max_cycles = 10000,
                                   IntersectionMethod method = IntersectionMethod::Auto) {
    return project_intersection(base, std::span<const Halfcut>(cuts.begin(), cuts.size()), anchor,
                                tol, max_cycles, nullptr, method);
}

} // namespace pgm
