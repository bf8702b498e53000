#include <pgm/bench/harness.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace pgm;
using namespace pgm::bench;

namespace {

int do_solve(const std::string &path, const std::string &strategy, int max_iters, double tol,
             const std::string &out, bool quiet) {
    RunSpec spec = load_spec(path);
    if (!strategy.empty()) {
        const auto s = parse_strategy(strategy);
        if (!s)
            throw SpecError("--strategy: expected one of a, b, c, d, A2");
        spec.strategy = *s;
    }
    if (max_iters > 0)
        spec.config.max_outer_iters = max_iters;
    if (tol > 0)
        spec.config.residual_tol = tol;
    if (!out.empty())
        spec.output = out;
    validate(spec);

    const RunResult res = run(spec);
    if (!quiet) {
        json j = to_json(res.row);
        j["final_x"] =
            std::vector<double>(res.report.final_x.begin(), res.report.final_x.end());
        std::cout << j.dump(2) << '\n';
    }
    return res.exit_code;
}

int do_compare(const std::vector<std::string> &paths, const std::string &json_out) {
    std::vector<RunSpec> specs;
    for (const auto &p : paths)
        specs.push_back(load_spec(p));
    const Comparison cmp = compare(specs);
    print_comparison(std::cout, cmp);
    if (!json_out.empty()) {
        json j = {{"instance", cmp.instance}, {"rows", json::array()}};
        for (const auto &r : cmp.rows) {
            json row = to_json(r.result.row);
            row["nonconvergent"] = r.nonconvergent;
            if (r.projection_check_applies)
                row["projection_check"] = r.projection_check_passed;
            j["rows"].push_back(row);
        }
        std::ofstream(json_out) << j.dump(2) << '\n';
    }
    return cmp.all_projection_checks_passed() ? kExitOk : kExitUsage;
}

int do_oracle(const std::string &path) {
    const RunSpec spec = load_spec(path);
    const OracleReport rep = oracle_check(spec);
    std::cout << to_json(rep).dump(2) << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Projected gradient benchmark harness"};
    app.require_subcommand(1);

    std::string spec_path, strategy, out;
    int max_iters = 0;
    double tol = 0.0;
    bool quiet = false;
    auto *solve_cmd = app.add_subcommand("solve", "Run one spec; writes trace CSV and summary JSON");
    solve_cmd->add_option("--spec", spec_path, "Run spec (JSON)")->required();
    solve_cmd->add_option("--strategy", strategy, "a | b | c | d | A2 (overrides the spec)");
    solve_cmd->add_option("--max-iters", max_iters, "Outer iteration cap")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--out", out, "Output path prefix");
    solve_cmd->add_flag("--quiet", quiet, "Do not print the summary");

    std::vector<std::string> spec_paths;
    std::string compare_json;
    auto *compare_cmd = app.add_subcommand("compare", "Run several strategies on one instance");
    compare_cmd->add_option("--specs", spec_paths, "Run specs (JSON)")->required();
    compare_cmd->add_option("--json", compare_json, "Also write the table as JSON");

    std::string oracle_path;
    auto *oracle_cmd = app.add_subcommand("oracle", "Compare strategy limits with a reference");
    oracle_cmd->add_option("--spec", oracle_path, "Run spec (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*solve_cmd)
            return do_solve(spec_path, strategy, max_iters, tol, out, quiet);
        if (*compare_cmd)
            return do_compare(spec_paths, compare_json);
        if (*oracle_cmd)
            return do_oracle(oracle_path);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
