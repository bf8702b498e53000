#pragma once

#include "reference.hpp"
#include "run_spec.hpp"
#include "trace_io.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

namespace pgm::bench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitLineSearch = 2;
inline constexpr int kExitIntersection = 3;
inline constexpr int kExitIterationCap = 4;

inline int exit_code(Status s) {
    switch (s) {
    case Status::OptimalResidual:
    case Status::FixedPointStop: return kExitOk;
    case Status::LineSearchFailure: return kExitLineSearch;
    case Status::IntersectionFailure: return kExitIntersection;
    case Status::IterationCap: return kExitIterationCap;
    }
    return kExitUsage;
}

struct SummaryRow {
    std::string instance;
    std::string strategy;
    Status status = Status::IterationCap;
    int iterations = 0;
    double final_residual = kNaN;
    double final_f = kNaN;
    long total_inner_trials = 0;
    long total_projections = 0;
    double wall_seconds = 0.0;
    std::vector<Monitor> monitors;
    bool monitors_passed = true;
    std::optional<double> distance_to_known_solution;
    bool below_tolerance = false; // final residual <= residual_tol
    std::string message;
};

struct RunResult {
    SummaryRow row;
    RunReport report;
    int exit_code = kExitOk;
};

inline RunReport solve(const RunSpec &spec) {
    switch (spec.strategy) {
    case Strategy::A: return classic_solve(spec.problem, spec.config, ClassicStrategy::Constant);
    case Strategy::B:
        return classic_solve(spec.problem, spec.config, ClassicStrategy::ArmijoBoundary);
    case Strategy::C: return a1_solve(spec.problem, spec.config);
    case Strategy::D: return classic_solve(spec.problem, spec.config, ClassicStrategy::Exogenous);
    case Strategy::A2: return a2_solve(spec.problem, spec.config);
    }
    throw std::logic_error("unknown strategy");
}

inline json to_json(const SummaryRow &row) {
    json monitors = json::object();
    for (const auto &m : row.monitors)
        monitors[m.name] = {{"passed", m.passed()},
                            {"worst_margin", m.checks ? json(m.worst_margin) : json(nullptr)},
                            {"tolerance", m.tolerance},
                            {"checks", m.checks}};
    json j = {{"instance", row.instance},
              {"strategy", row.strategy},
              {"status", to_string(row.status)},
              {"exit_code", exit_code(row.status)},
              {"iterations", row.iterations},
              {"final_residual", row.final_residual},
              {"final_f", row.final_f},
              {"total_inner_trials", row.total_inner_trials},
              {"total_projections", row.total_projections},
              {"wall_seconds", row.wall_seconds},
              {"below_tolerance", row.below_tolerance},
              {"monitors_passed", row.monitors_passed},
              {"monitors", monitors}};
    if (row.distance_to_known_solution)
        j["distance_to_known_solution"] = *row.distance_to_known_solution;
    if (!row.message.empty())
        j["message"] = row.message;
    return j;
}

inline void write_outputs(const RunSpec &spec, const RunResult &result) {
    if (spec.output.empty())
        return;
    const std::filesystem::path prefix(spec.output);
    if (prefix.has_parent_path())
        std::filesystem::create_directories(prefix.parent_path());
    std::ofstream csv(spec.output + ".trace.csv");
    write_trace_csv(csv, result.report.trace);
    std::ofstream summary(spec.output + ".summary.json");
    json j = to_json(result.row);
    j["final_x"] = std::vector<double>(result.report.final_x.begin(), result.report.final_x.end());
    summary << j.dump(2) << '\n';
    if (!csv || !summary)
        throw std::runtime_error("could not write outputs under '" + spec.output + "'");
}

/// Runs one spec and writes `<output>.trace.csv` and `<output>.summary.json`.
inline RunResult run(const RunSpec &spec) {
    validate(spec);
    RunResult result;
    const auto start = std::chrono::steady_clock::now();
    result.report = solve(spec);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;

    const RunReport &rep = result.report;
    SummaryRow &row = result.row;
    row.instance = spec.problem.id;
    row.strategy = to_string(spec.strategy);
    row.status = rep.status;
    row.iterations = rep.iterations;
    row.final_residual = rep.final_residual;
    row.final_f = rep.final_f;
    row.total_inner_trials = rep.total_inner_trials;
    row.total_projections = rep.total_projections;
    row.wall_seconds = wall.count();
    row.monitors = rep.monitors.all();
    row.monitors_passed = rep.monitors.all_passed();
    if (spec.problem.known_solution)
        row.distance_to_known_solution = (rep.final_x - *spec.problem.known_solution).norm();
    row.below_tolerance = rep.final_residual <= spec.config.residual_tol;
    row.message = rep.message;
    result.exit_code = exit_code(rep.status);
    write_outputs(spec, result);
    return result;
}

/// Worker count for batch runs: PGBENCH_JOBS, else the hardware concurrency.
inline unsigned job_count() {
    if (const char *env = std::getenv("PGBENCH_JOBS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

template <class Fn> void parallel_for(std::size_t count, unsigned jobs, Fn fn) {
    jobs = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), count));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < count;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

class CompareError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct CompareRow {
    RunResult result;
    bool projection_check_applies = false;
    bool projection_check_passed = true;
    std::string projection_rule;
    bool nonconvergent = false;
};

struct Comparison {
    std::string instance;
    std::vector<CompareRow> rows;
    bool all_projection_checks_passed() const {
        return std::all_of(rows.begin(), rows.end(),
                           [](const CompareRow &r) { return r.projection_check_passed; });
    }
};

namespace detail {

inline bool same_instance(const ProblemInstance &a, const ProblemInstance &b) {
    if (a.id != b.id || a.x0.size() != b.x0.size() || a.x0 != b.x0)
        return false;
    return kind_name(a.objective) == kind_name(b.objective) && kind_name(a.set) == kind_name(b.set);
}

} // namespace detail

/// Runs every spec (in parallel) and checks per-iteration projection counts:
/// one per outer step for (c), l(k) + 1 for (b).
inline Comparison compare(const std::vector<RunSpec> &specs, unsigned jobs = job_count()) {
    if (specs.size() < 2)
        throw CompareError("compare needs at least two specs, got " + std::to_string(specs.size()));
    for (const auto &s : specs)
        if (!detail::same_instance(s.problem, specs.front().problem))
            throw CompareError("specs refer to different instances ('" +
                               specs.front().problem.id + "' vs '" + s.problem.id + "')");
    Comparison cmp;
    cmp.instance = specs.front().problem.id;
    cmp.rows.resize(specs.size());
    parallel_for(specs.size(), jobs, [&](std::size_t i) { cmp.rows[i].result = run(specs[i]); });
    for (std::size_t i = 0; i < specs.size(); ++i) {
        CompareRow &row = cmp.rows[i];
        const auto &trace = row.result.report.trace;
        if (specs[i].strategy == Strategy::C) {
            row.projection_check_applies = true;
            row.projection_rule = "1 per iteration";
            row.projection_check_passed = std::all_of(
                trace.begin(), trace.end(), [](const IterateRecord &r) { return r.projections == 1; });
        } else if (specs[i].strategy == Strategy::B) {
            row.projection_check_applies = true;
            row.projection_rule = "l(k)+1 per iteration";
            row.projection_check_passed =
                std::all_of(trace.begin(), trace.end(), [](const IterateRecord &r) {
                    return r.projections == r.inner_trials + 1;
                });
        }
        row.nonconvergent = !row.result.row.below_tolerance;
    }
    return cmp;
}

inline void print_comparison(std::ostream &out, const Comparison &cmp) {
    out << "instance " << cmp.instance << '\n';
    out << std::left << std::setw(9) << "strategy" << std::setw(18) << "status" << std::right
        << std::setw(10) << "iters" << std::setw(13) << "projections" << std::setw(13)
        << "inner_trials" << std::setw(14) << "residual" << "  notes\n";
    for (const auto &r : cmp.rows) {
        const SummaryRow &s = r.result.row;
        std::string notes;
        if (r.projection_check_applies)
            notes += std::string(r.projection_check_passed ? "proj ok" : "PROJ MISMATCH") + " (" +
                     r.projection_rule + ")";
        if (r.nonconvergent)
            notes += std::string(notes.empty() ? "" : "; ") + "NONCONVERGENT";
        if (!s.monitors_passed)
            notes += std::string(notes.empty() ? "" : "; ") + "monitor failure";
        out << std::left << std::setw(9) << s.strategy << std::setw(18) << to_string(s.status)
            << std::right << std::setw(10) << s.iterations << std::setw(13) << s.total_projections
            << std::setw(13) << s.total_inner_trials << std::setw(14) << format_sci(s.final_residual)
            << "  " << notes << '\n';
    }
}

struct OracleEntry {
    Strategy strategy;
    Status status;
    double distance = kNaN;           // to S* or to the reference point
    double distance_to_target = kNaN; // A2 only: to P_{S*}(x0) when known
};

struct OracleReport {
    std::string instance;
    Reference reference;
    std::vector<OracleEntry> entries;
};

/// Reference solution plus the distance from each strategy's limit to it.
/// Strategy (a) and (d) are included only when the spec gives their parameter.
inline OracleReport oracle_check(const RunSpec &spec, unsigned jobs = job_count()) {
    OracleReport rep;
    rep.instance = spec.problem.id;
    rep.reference = reference_solution(spec.problem);
    std::vector<Strategy> strategies{Strategy::B, Strategy::C, Strategy::A2};
    if (spec.has_constant_beta)
        strategies.insert(strategies.begin(), Strategy::A);
    if (spec.has_exo_constant)
        strategies.push_back(Strategy::D);
    rep.entries.resize(strategies.size());
    parallel_for(strategies.size(), jobs, [&](std::size_t i) {
        RunSpec s = spec;
        s.strategy = strategies[i];
        s.output.clear();
        const RunReport r = solve(s);
        OracleEntry &e = rep.entries[i];
        e.strategy = strategies[i];
        e.status = r.status;
        if (!rep.reference.x.size())
            return;
        e.distance = distance_to_reference(rep.reference, r.final_x);
        if (strategies[i] == Strategy::A2 && rep.reference.projection_of_x0)
            e.distance_to_target = (r.final_x - *rep.reference.projection_of_x0).norm();
    });
    return rep;
}

inline json to_json(const OracleReport &rep) {
    const Reference &ref = rep.reference;
    auto arr = [](const Vector &v) { return std::vector<double>(v.begin(), v.end()); };
    json j = {{"instance", rep.instance},
              {"method", ref.method},
              {"flagged", ref.flagged},
              {"description", ref.description},
              {"reference_f", ref.f},
              {"reference_residual", ref.residual}};
    if (ref.x.size())
        j["reference_x"] = arr(ref.x);
    if (!ref.note.empty())
        j["note"] = ref.note;
    if (ref.free_directions >= 0)
        j["free_directions"] = ref.free_directions;
    if (ref.projection_of_x0)
        j["projection_of_x0"] = arr(*ref.projection_of_x0);
    j["strategies"] = json::array();
    for (const auto &e : rep.entries) {
        json s = {{"strategy", to_string(e.strategy)},
                  {"status", to_string(e.status)},
                  {"distance", e.distance}};
        if (!std::isnan(e.distance_to_target))
            s["distance_to_projection_of_x0"] = e.distance_to_target;
        j["strategies"].push_back(s);
    }
    return j;
}

} // namespace pgm::bench
