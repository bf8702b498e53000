#pragma once

#include "../solver.hpp"

#include <string>
#include <vector>

namespace pgm::bench {

/// Linear description of a polyhedral set: E x = e, G x <= h.
struct Polyhedron {
    Matrix E;
    Vector e;
    Matrix G;
    Vector h;
};

inline std::optional<Polyhedron> polyhedron_of(const FeasibleSet &set) {
    const Eigen::Index n = dim(set);
    std::vector<std::pair<Vector, double>> eq, ineq;
    auto unit = [n](Eigen::Index i, double s) {
        Vector v = Vector::Zero(n);
        v[i] = s;
        return v;
    };
    if (const auto *b = std::get_if<Box>(&set)) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::isfinite(b->upper[i]))
                ineq.emplace_back(unit(i, 1.0), b->upper[i]);
            if (std::isfinite(b->lower[i]))
                ineq.emplace_back(unit(i, -1.0), -b->lower[i]);
        }
    } else if (const auto *s = std::get_if<Halfspace>(&set)) {
        ineq.emplace_back(s->normal, s->offset);
    } else if (const auto *p = std::get_if<Hyperplane>(&set)) {
        eq.emplace_back(p->normal, p->offset);
    } else if (const auto *s = std::get_if<Simplex>(&set)) {
        for (Eigen::Index i = 0; i < n; ++i)
            ineq.emplace_back(unit(i, -1.0), 0.0);
        eq.emplace_back(Vector::Ones(n), s->scale);
    } else if (!std::holds_alternative<WholeSpace>(set)) {
        return std::nullopt;
    }
    Polyhedron P{Matrix(eq.size(), n), Vector(eq.size()), Matrix(ineq.size(), n),
                 Vector(ineq.size())};
    for (std::size_t i = 0; i < eq.size(); ++i) {
        P.E.row(i) = eq[i].first.transpose();
        P.e[i] = eq[i].second;
    }
    for (std::size_t i = 0; i < ineq.size(); ++i) {
        P.G.row(i) = ineq[i].first.transpose();
        P.h[i] = ineq[i].second;
    }
    return P;
}

/// min 1/2 x'Qx + b'x over a polyhedron, Q positive semidefinite, by trying
/// every active set of at most n inequalities and keeping KKT points. Returns
/// the best KKT point found, or nothing.
inline std::optional<Vector> active_set_qp(const Matrix &Q, const Vector &b, const Polyhedron &P,
                                           double tol = 1e-9) {
    const Eigen::Index n = Q.rows();
    const Eigen::Index me = P.E.rows(), mi = P.G.rows();
    if (mi > 20)
        throw std::invalid_argument("active_set_qp: too many inequalities to enumerate");
    const double scale = 1.0 + Q.norm() + b.norm() + P.h.cwiseAbs().sum() + P.e.cwiseAbs().sum();
    std::optional<Vector> best;
    double best_f = kInf;
    for (unsigned mask = 0; mask < (1u << mi); ++mask) {
        std::vector<Eigen::Index> act;
        for (Eigen::Index i = 0; i < mi; ++i)
            if (mask & (1u << i))
                act.push_back(i);
        if (static_cast<Eigen::Index>(act.size()) > n)
            continue;
        const Eigen::Index m = me + static_cast<Eigen::Index>(act.size());
        Matrix A(m, n);
        Vector c(m);
        A.topRows(me) = P.E;
        c.head(me) = P.e;
        for (std::size_t r = 0; r < act.size(); ++r) {
            A.row(me + static_cast<Eigen::Index>(r)) = P.G.row(act[r]);
            c[me + static_cast<Eigen::Index>(r)] = P.h[act[r]];
        }
        Matrix K = Matrix::Zero(n + m, n + m);
        K.topLeftCorner(n, n) = Q;
        K.topRightCorner(n, m) = A.transpose();
        K.bottomLeftCorner(m, n) = A;
        Vector rhs(n + m);
        rhs << -b, c;
        const Vector sol = K.completeOrthogonalDecomposition().solve(rhs);
        if ((K * sol - rhs).norm() > tol * scale)
            continue; // inconsistent active set
        const Vector x = sol.head(n);
        const Vector mu = sol.tail(m);
        if (mi > 0 && (P.G * x - P.h).maxCoeff() > tol * scale)
            continue;
        if (static_cast<Eigen::Index>(act.size()) > 0 &&
            mu.tail(static_cast<Eigen::Index>(act.size())).minCoeff() < -tol * scale)
            continue;
        const double f = 0.5 * x.dot(Q * x) + b.dot(x);
        if (f < best_f - tol * scale || (!best && std::isfinite(f))) {
            best_f = f;
            best = x;
        }
    }
    return best;
}

struct Reference {
    std::string method; // "active-set-qp" or "grid-refine"
    bool flagged = false;
    std::string note;
    Vector x;
    double f = kNaN;
    double residual = kNaN;
    // Quadratic over a polyhedron: S* = C ∩ {y : Q y = Q x, <b, y> = <b, x>}.
    std::optional<Polyhedron> solution_set;
    std::optional<Vector> projection_of_x0; // P_{S*}(x0)
    int free_directions = -1;               // n - rank [Q; b'; E]
    std::string description;
};

namespace detail {

inline Polyhedron solution_polyhedron(const Quadratic &q, const Polyhedron &C, const Vector &x) {
    const Eigen::Index n = q.Q.rows();
    Polyhedron S = C;
    const Eigen::Index me = C.E.rows();
    S.E.resize(me + n + 1, n);
    S.e.resize(me + n + 1);
    S.E.topRows(me) = C.E;
    S.e.head(me) = C.e;
    S.E.middleRows(me, n) = q.Q;
    S.e.segment(me, n) = q.Q * x;
    S.E.row(me + n) = q.b.transpose();
    S.e[me + n] = q.b.dot(x);
    return S;
}

inline std::optional<Vector> project_polyhedron(const Polyhedron &P, const Vector &y) {
    const Eigen::Index n = y.size();
    return active_set_qp(Matrix::Identity(n, n), -y, P);
}

inline std::string describe_vector(const Vector &v) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + format_sci(v[i]);
    return s + ")";
}

// Box around the set (or around x0 when the set is unbounded) for the grid.
inline std::pair<Vector, Vector> grid_bounds(const FeasibleSet &set, const Vector &x0) {
    const Eigen::Index n = x0.size();
    const double r = 2.0 + 2.0 * x0.norm();
    Vector lo = x0.array() - r, hi = x0.array() + r;
    if (const auto *b = std::get_if<Box>(&set)) {
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::isfinite(b->lower[i]))
                lo[i] = b->lower[i];
            if (std::isfinite(b->upper[i]))
                hi[i] = b->upper[i];
            if (!std::isfinite(b->lower[i]) && std::isfinite(b->upper[i]))
                lo[i] = hi[i] - 2 * r;
            if (std::isfinite(b->lower[i]) && !std::isfinite(b->upper[i]))
                hi[i] = lo[i] + 2 * r;
        }
    } else if (const auto *b = std::get_if<Ball>(&set)) {
        lo = b->center.array() - b->radius;
        hi = b->center.array() + b->radius;
    } else if (const auto *s = std::get_if<Simplex>(&set)) {
        lo = Vector::Zero(n);
        hi = Vector::Constant(n, s->scale);
    }
    return {lo, hi};
}

} // namespace detail

/// Reference minimizer for small instances (dimension at most 4).
inline Reference reference_solution(const ProblemInstance &inst) {
    const Eigen::Index n = inst.x0.size();
    if (n > 4)
        throw std::invalid_argument("reference_solution: dimension " + std::to_string(n) +
                                    " exceeds 4");
    Reference ref;
    const auto *quad = std::get_if<Quadratic>(&inst.objective);
    const auto poly = polyhedron_of(inst.set);
    if (quad && poly) {
        ref.method = "active-set-qp";
        const auto x = active_set_qp(quad->Q, quad->b, *poly);
        if (!x) {
            ref.flagged = true;
            ref.note = "no KKT point found (unbounded or ill-posed)";
            return ref;
        }
        ref.x = *x;
        ref.f = eval(inst.objective, ref.x);
        ref.residual = residual(inst, ref.x);
        ref.solution_set = detail::solution_polyhedron(*quad, *poly, ref.x);
        Matrix stacked(quad->Q.rows() + 1 + poly->E.rows(), n);
        stacked << quad->Q, quad->b.transpose(), poly->E;
        ref.free_directions =
            static_cast<int>(n - stacked.completeOrthogonalDecomposition().rank());
        ref.projection_of_x0 = detail::project_polyhedron(*ref.solution_set, inst.x0);
        if (!ref.projection_of_x0) {
            ref.flagged = true;
            ref.note = "could not project x0 onto the solution set";
        }
        ref.description = ref.free_directions == 0
                              ? "unique solution " + detail::describe_vector(ref.x)
                              : "S* = C ∩ {y : Qy = " + detail::describe_vector(quad->Q * ref.x) +
                                    ", <b,y> = " + format_sci(quad->b.dot(ref.x)) + "}, " +
                                    std::to_string(ref.free_directions) + " free direction(s)";
        return ref;
    }

    ref.method = "grid-refine";
    const auto [lo, hi] = detail::grid_bounds(inst.set, inst.x0);
    const int per_axis = n <= 2 ? 81 : (n == 3 ? 21 : 11);
    Vector best = inst.x0;
    double best_f = eval(inst.objective, best);
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
        Vector p(n);
        for (Eigen::Index i = 0; i < n; ++i)
            p[i] = lo[i] + (hi[i] - lo[i]) * idx[static_cast<std::size_t>(i)] / (per_axis - 1);
        p = project(inst.set, p);
        const double f = eval(inst.objective, p);
        if (f < best_f) {
            best_f = f;
            best = p;
        }
        Eigen::Index d = 0;
        while (d < n && ++idx[static_cast<std::size_t>(d)] == per_axis)
            idx[static_cast<std::size_t>(d++)] = 0;
        if (d == n)
            break;
    }

    // Projected gradient refinement with a self-adjusting step. Near the
    // minimizer f stops resolving progress, so ties in f are broken by the
    // residual.
    Vector x = best;
    double f = best_f;
    double res = residual(inst, x);
    double t = 1.0;
    for (int it = 0; it < 200000 && res > 1e-13; ++it) {
        const Vector g = grad(inst.objective, x);
        bool moved = false;
        for (int back = 0; back < 60; ++back, t *= 0.5) {
            const Vector y = project(inst.set, x - t * g);
            const double fy = eval(inst.objective, y);
            if (fy > f + 4 * std::numeric_limits<double>::epsilon() * std::abs(f))
                continue;
            const double ry = residual(inst, y);
            if (fy < f || ry < res) {
                x = y;
                f = std::min(f, fy);
                res = ry;
                moved = true;
                break;
            }
        }
        if (!moved)
            break;
        t *= 2.0;
    }
    ref.x = x;
    ref.f = eval(inst.objective, x);
    ref.residual = res;
    if (!(ref.residual <= 1e-8)) {
        ref.flagged = true;
        ref.note = "refinement stalled at residual " + format_sci(ref.residual);
    }
    ref.description = "best point " + detail::describe_vector(ref.x);
    return ref;
}

/// Distance from x to the reference: to S* when it is known, else to the point.
inline double distance_to_reference(const Reference &ref, const Vector &x) {
    if (ref.solution_set) {
        if (const auto p = detail::project_polyhedron(*ref.solution_set, x))
            return (x - *p).norm();
        return kNaN;
    }
    return (x - ref.x).norm();
}

} // namespace pgm::bench
