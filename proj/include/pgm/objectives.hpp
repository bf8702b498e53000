#pragma once

#include "core.hpp"

#include <string>
#include <variant>

namespace pgm {

/// f(x) = (1/p) ||x - shift||^p with p > 1.
///
/// The gradient ||x - shift||^(p-2) (x - shift) is uniformly continuous on
/// bounded sets for every p > 1 but globally Lipschitz only when p = 2, so
/// nothing in this library relies on a Lipschitz constant.
struct PNorm {
    double p = 2.0;
    Vector shift;
};

/// f(x) = 1/2 <x, Qx> + <b, x> + c with Q symmetric positive semidefinite.
struct Quadratic {
    Matrix Q;
    Vector b;
    double c = 0.0;
};

/// f(x) = log sum_i exp(<a_i, x> + t_i), rows a_i of A.
struct LogSumExp {
    Matrix A;
    Vector t;
};

using Objective = std::variant<PNorm, Quadratic, LogSumExp>;

inline Eigen::Index dim(const Objective &obj) {
    struct {
        Eigen::Index operator()(const PNorm &o) const { return o.shift.size(); }
        Eigen::Index operator()(const Quadratic &o) const { return o.b.size(); }
        Eigen::Index operator()(const LogSumExp &o) const { return o.A.cols(); }
    } visitor;
    return std::visit(visitor, obj);
}

inline std::string kind_name(const Objective &obj) {
    static const char *names[] = {"pnorm", "quadratic", "logsumexp"};
    return names[obj.index()];
}

inline void validate(const Objective &obj) {
    auto fail = [&](const std::string &m) { throw std::invalid_argument(kind_name(obj) + ": " + m); };
    if (const auto *o = std::get_if<PNorm>(&obj)) {
        if (!(o->p > 1.0) || !std::isfinite(o->p))
            fail("p must be a finite number greater than 1");
        require_valid(o->shift, "pnorm shift");
    } else if (const auto *o = std::get_if<Quadratic>(&obj)) {
        require_valid(o->b, "quadratic b");
        if (o->Q.rows() != o->b.size() || o->Q.cols() != o->b.size())
            fail("Q must be square with the dimension of b");
        if (!o->Q.allFinite() || !std::isfinite(o->c))
            fail("entries must be finite");
        const double scale = std::max(1.0, o->Q.cwiseAbs().maxCoeff());
        if ((o->Q - o->Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            fail("Q must be symmetric");
        Eigen::SelfAdjointEigenSolver<Matrix> eig(o->Q, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -1e-12 * scale)
            fail("Q must be positive semidefinite");
    } else if (const auto *o = std::get_if<LogSumExp>(&obj)) {
        if (o->A.rows() < 1 || o->A.cols() < 1)
            fail("A must be nonempty");
        if (o->t.size() != o->A.rows())
            fail("t must have one entry per row of A");
        if (!o->A.allFinite() || !o->t.allFinite())
            fail("entries must be finite");
    }
}

inline double eval(const Objective &obj, const Vector &x) {
    if (x.size() != dim(obj))
        throw DimensionMismatch("eval(" + kind_name(obj) + ")", dim(obj), x.size());
    struct {
        const Vector &x;
        double operator()(const PNorm &o) const {
            return std::pow((x - o.shift).norm(), o.p) / o.p;
        }
        double operator()(const Quadratic &o) const {
            return 0.5 * x.dot(o.Q * x) + o.b.dot(x) + o.c;
        }
        double operator()(const LogSumExp &o) const {
            const Vector s = o.A * x + o.t;
            const double top = s.maxCoeff();
            return top + std::log((s.array() - top).exp().sum());
        }
    } visitor{x};
    return std::visit(visitor, obj);
}

inline Vector grad(const Objective &obj, const Vector &x) {
    if (x.size() != dim(obj))
        throw DimensionMismatch("grad(" + kind_name(obj) + ")", dim(obj), x.size());
    struct {
        const Vector &x;
        Vector operator()(const PNorm &o) const {
            const Vector d = x - o.shift;
            const double r = d.norm();
            // Continuous extension at the minimizer, also for p in (1,2).
            if (r == 0.0)
                return Vector::Zero(x.size());
            return std::pow(r, o.p - 2.0) * d;
        }
        Vector operator()(const Quadratic &o) const { return o.Q * x + o.b; }
        Vector operator()(const LogSumExp &o) const {
            const Vector s = o.A * x + o.t;
            const Eigen::ArrayXd w = (s.array() - s.maxCoeff()).exp();
            return o.A.transpose() * (w / w.sum()).matrix();
        }
    } visitor{x};
    return std::visit(visitor, obj);
}

/// Max over coordinate directions of |central difference - gradient component|.
inline double check_gradient(const Objective &obj, const Vector &x, double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("check_gradient: step must be positive");
    const Vector g = grad(obj, x);
    double worst = 0.0;
    Vector probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double up = eval(obj, probe);
        probe[i] = x[i] - h;
        const double down = eval(obj, probe);
        probe[i] = x[i];
        worst = std::max(worst, std::abs((up - down) / (2.0 * h) - g[i]));
    }
    return worst;
}

} // namespace pgm
