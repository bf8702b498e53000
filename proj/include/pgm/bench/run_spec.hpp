#pragma once

#include "registry.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace pgm::bench {

using json = nlohmann::json;

enum class Strategy { A, B, C, D, A2 };

inline const char *to_string(Strategy s) {
    switch (s) {
    case Strategy::A: return "a";
    case Strategy::B: return "b";
    case Strategy::C: return "c";
    case Strategy::D: return "d";
    case Strategy::A2: return "A2";
    }
    return "?";
}

inline std::optional<Strategy> parse_strategy(const std::string &s) {
    if (s == "a") return Strategy::A;
    if (s == "b") return Strategy::B;
    if (s == "c") return Strategy::C;
    if (s == "d") return Strategy::D;
    if (s == "A2" || s == "a2") return Strategy::A2;
    return std::nullopt;
}

/// Bad spec file or field. The message names the line or the field path.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunSpec {
    ProblemInstance problem;
    std::string problem_ref; // registry id, or "inline"
    Strategy strategy = Strategy::C;
    SolverConfig config;
    std::uint64_t seed = 0;
    std::string output; // path prefix; empty means no files
    bool has_constant_beta = false;
    bool has_exo_constant = false;
};

/// Strategy (a) needs an explicit beta and (d) an explicit c.
inline void validate(const RunSpec &spec) {
    if (spec.strategy == Strategy::A && !spec.has_constant_beta)
        throw SpecError("strategy a requires config.constant_beta");
    if (spec.strategy == Strategy::D && !spec.has_exo_constant)
        throw SpecError("strategy d requires config.exo_constant");
    try {
        spec.config.validate();
    } catch (const InvalidConfig &e) {
        throw SpecError(std::string("config: ") + e.what());
    }
}

namespace detail {

inline void only_keys(const json &j, const std::string &path, std::set<std::string> allowed) {
    if (!j.is_object())
        throw SpecError(path + ": expected an object");
    for (const auto &[key, _] : j.items())
        if (!allowed.count(key))
            throw SpecError((path.empty() ? key : path + "." + key) + ": unknown field");
}

inline const json &field(const json &j, const std::string &path, const std::string &key) {
    if (!j.contains(key))
        throw SpecError((path.empty() ? key : path + "." + key) + ": missing");
    return j.at(key);
}

inline double to_number(const json &v, const std::string &path) {
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf")
            return kInf;
        if (s == "-inf")
            return -kInf;
    }
    throw SpecError(path + ": expected a number");
}

inline double number(const json &j, const std::string &path, const std::string &key) {
    return to_number(field(j, path, key), path + "." + key);
}

inline int integer(const json &j, const std::string &path, const std::string &key) {
    const json &v = field(j, path, key);
    if (!v.is_number_integer())
        throw SpecError(path + "." + key + ": expected an integer");
    return v.get<int>();
}

inline Vector vector(const json &v, const std::string &path) {
    if (!v.is_array() || v.empty())
        throw SpecError(path + ": expected a nonempty array of numbers");
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = to_number(v[i], path + "[" + std::to_string(i) + "]");
    return out;
}

inline Matrix matrix(const json &v, const std::string &path) {
    if (!v.is_array() || v.empty())
        throw SpecError(path + ": expected a nonempty array of rows");
    const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
    Matrix out(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < v.size(); ++r) {
        const Vector row = vector(v[r], path + "[" + std::to_string(r) + "]");
        if (static_cast<std::size_t>(row.size()) != cols)
            throw SpecError(path + "[" + std::to_string(r) + "]: ragged row");
        out.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return out;
}

inline Objective parse_objective(const json &j, const std::string &path) {
    const std::string kind = field(j, path, "kind").get<std::string>();
    if (kind == "pnorm") {
        only_keys(j, path, {"kind", "p", "shift"});
        return PNorm{number(j, path, "p"), vector(field(j, path, "shift"), path + ".shift")};
    }
    if (kind == "quadratic") {
        only_keys(j, path, {"kind", "Q", "b", "c"});
        return Quadratic{matrix(field(j, path, "Q"), path + ".Q"),
                         vector(field(j, path, "b"), path + ".b"),
                         j.contains("c") ? number(j, path, "c") : 0.0};
    }
    if (kind == "logsumexp") {
        only_keys(j, path, {"kind", "A", "t"});
        return LogSumExp{matrix(field(j, path, "A"), path + ".A"),
                         vector(field(j, path, "t"), path + ".t")};
    }
    throw SpecError(path + ".kind: unknown objective kind '" + kind + "'");
}

inline FeasibleSet parse_set(const json &j, const std::string &path) {
    const std::string kind = field(j, path, "kind").get<std::string>();
    if (kind == "box") {
        only_keys(j, path, {"kind", "lower", "upper"});
        return Box{vector(field(j, path, "lower"), path + ".lower"),
                   vector(field(j, path, "upper"), path + ".upper")};
    }
    if (kind == "ball") {
        only_keys(j, path, {"kind", "center", "radius"});
        return Ball{vector(field(j, path, "center"), path + ".center"), number(j, path, "radius")};
    }
    if (kind == "halfspace" || kind == "hyperplane") {
        only_keys(j, path, {"kind", "normal", "offset"});
        Vector normal = vector(field(j, path, "normal"), path + ".normal");
        const double offset = number(j, path, "offset");
        if (kind == "halfspace")
            return Halfspace{std::move(normal), offset};
        return Hyperplane{std::move(normal), offset};
    }
    if (kind == "simplex") {
        only_keys(j, path, {"kind", "dim", "scale"});
        return Simplex{integer(j, path, "dim"), j.contains("scale") ? number(j, path, "scale") : 1.0};
    }
    if (kind == "whole") {
        only_keys(j, path, {"kind", "dim"});
        return WholeSpace{integer(j, path, "dim")};
    }
    throw SpecError(path + ".kind: unknown set kind '" + kind + "'");
}

inline ProblemInstance parse_problem(const json &j, const std::string &path) {
    only_keys(j, path, {"id", "objective", "set", "x0", "known_solution", "known_fstar"});
    ProblemInstance inst;
    inst.id = j.contains("id") ? j.at("id").get<std::string>() : "inline";
    inst.objective = parse_objective(field(j, path, "objective"), path + ".objective");
    inst.set = parse_set(field(j, path, "set"), path + ".set");
    inst.x0 = vector(field(j, path, "x0"), path + ".x0");
    if (j.contains("known_solution"))
        inst.known_solution = vector(j.at("known_solution"), path + ".known_solution");
    if (j.contains("known_fstar"))
        inst.known_fstar = number(j, path, "known_fstar");
    return inst;
}

inline void parse_config(const json &j, RunSpec &spec) {
    const std::string path = "config";
    only_keys(j, path,
              {"theta", "delta", "beta", "beta_schedule", "beta_min", "beta_max", "residual_tol",
               "fixed_point_tol", "max_outer_iters", "max_inner_iters", "constant_beta", "beta_bar",
               "exo_constant", "projection_tol", "projection_max_cycles", "projection_method",
               "trace_stride"});
    SolverConfig &c = spec.config;
    auto num = [&](const char *key, double &dst) {
        if (j.contains(key))
            dst = number(j, path, key);
    };
    auto whole = [&](const char *key, int &dst) {
        if (j.contains(key))
            dst = integer(j, path, key);
    };
    num("theta", c.theta);
    num("delta", c.delta);
    num("beta_min", c.beta_min);
    num("beta_max", c.beta_max);
    num("residual_tol", c.residual_tol);
    num("fixed_point_tol", c.fixed_point_tol);
    num("constant_beta", c.constant_beta);
    num("beta_bar", c.beta_bar);
    num("exo_constant", c.exo_constant);
    num("projection_tol", c.projection_tol);
    whole("max_outer_iters", c.max_outer_iters);
    whole("max_inner_iters", c.max_inner_iters);
    whole("projection_max_cycles", c.projection_max_cycles);
    whole("trace_stride", c.trace_stride);
    spec.has_constant_beta = j.contains("constant_beta");
    spec.has_exo_constant = j.contains("exo_constant");
    if (j.contains("beta") && j.contains("beta_schedule"))
        throw SpecError("config: give either beta or beta_schedule, not both");
    if (j.contains("beta"))
        c.beta_schedule = BetaSchedule::constant(number(j, path, "beta"));
    if (j.contains("beta_schedule")) {
        const Vector v = vector(j.at("beta_schedule"), path + ".beta_schedule");
        c.beta_schedule = BetaSchedule::cyclic(std::vector<double>(v.begin(), v.end()));
    }
    if (j.contains("projection_method")) {
        const auto m = j.at("projection_method").get<std::string>();
        if (m == "auto")
            c.projection_method = IntersectionMethod::Auto;
        else if (m == "dykstra")
            c.projection_method = IntersectionMethod::Dykstra;
        else if (m == "dual")
            c.projection_method = IntersectionMethod::Dual;
        else
            throw SpecError("config.projection_method: expected auto, dykstra or dual");
    }
}

inline std::string line_column(const std::string &text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace detail

/// Parse a run spec from JSON text. `origin` prefixes error messages.
inline RunSpec parse_spec(const std::string &text, const std::string &origin = "<spec>") {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw SpecError(origin + ": parse error at " + detail::line_column(text, byte));
    }
    RunSpec spec;
    try {
        detail::only_keys(j, "", {"problem", "strategy", "config", "seed", "output"});
        if (j.contains("seed")) {
            if (!j.at("seed").is_number_unsigned())
                throw SpecError("seed: expected a nonnegative integer");
            spec.seed = j.at("seed").get<std::uint64_t>();
        }
        const json &problem = detail::field(j, "", "problem");
        if (problem.is_string()) {
            spec.problem_ref = problem.get<std::string>();
            try {
                spec.problem = registry_instance(spec.problem_ref, spec.seed);
            } catch (const UnknownInstance &e) {
                throw SpecError(std::string("problem: ") + e.what());
            }
        } else {
            spec.problem_ref = "inline";
            spec.problem = detail::parse_problem(problem, "problem");
        }
        if (j.contains("strategy")) {
            const auto s = parse_strategy(j.at("strategy").get<std::string>());
            if (!s)
                throw SpecError("strategy: expected one of a, b, c, d, A2");
            spec.strategy = *s;
        }
        if (j.contains("config"))
            detail::parse_config(j.at("config"), spec);
        if (j.contains("output"))
            spec.output = j.at("output").get<std::string>();

        try {
            validate(spec.problem);
        } catch (const InfeasibleStart &e) {
            throw SpecError("problem.x0: " + std::string(e.what()));
        } catch (const std::invalid_argument &e) {
            throw SpecError(std::string("problem: ") + e.what());
        }
        validate(spec);
    } catch (const SpecError &e) {
        throw SpecError(origin + ": " + e.what());
    } catch (const json::exception &e) {
        throw SpecError(origin + ": " + e.what());
    }
    return spec;
}

inline RunSpec load_spec(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw SpecError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str(), path);
}

} // namespace pgm::bench
