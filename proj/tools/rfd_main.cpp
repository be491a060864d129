/// @file rfd_main.cpp
/// @brief Command-line driver: single runs, convergence studies, property
///        verification.
///
/// Exit codes: 0 success, 1 usage/config/runtime error, 2 property failure.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rfd/harness.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::string> problem;
    std::optional<std::string> variant;
    std::optional<int> grid_points;
    std::optional<int> steps;
    std::optional<double> final_time;
    std::optional<double> delta_star;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> levels;
    bool parallel = false;
};

void add_common_flags(CLI::App* app, CommonFlags& flags) {
    app->add_option("-c,--config", flags.config_path, "JSON config file");
    app->add_option("--problem", flags.problem, "catalogue problem id");
    app->add_option("--variant", flags.variant, "rfd | rfd-first-order | mrfd");
    app->add_option("--grid", flags.grid_points, "interior spatial nodes J");
    app->add_option("--steps", flags.steps, "time steps N");
    app->add_option("--final-time", flags.final_time, "final time T");
    app->add_option("--delta-star", flags.delta_star, "cutoff radius (mrfd)");
    app->add_option("--out", flags.out, "output path (JSON report / CSV table)");
    app->add_option("--seed", flags.seed, "seed for randomized property tests");
    app->add_option("--levels", flags.levels, "mesh levels for converge");
    app->add_flag("--parallel", flags.parallel, "run convergence levels concurrently");
}

// File values first, then command-line overrides.
rfd::RunConfig build_config(const CommonFlags& flags) {
    rfd::RunConfig cfg;
    if (!flags.config_path.empty()) {
        cfg = rfd::parse_config(flags.config_path);
    }
    if (flags.problem) cfg.problem = *flags.problem;
    if (flags.variant) cfg.variant = *flags.variant;
    if (flags.grid_points) cfg.grid_points = *flags.grid_points;
    if (flags.steps) cfg.steps = *flags.steps;
    if (flags.final_time) cfg.final_time = *flags.final_time;
    if (flags.delta_star) cfg.delta_star = *flags.delta_star;
    if (flags.out) cfg.output_path = *flags.out;
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.levels) cfg.levels = *flags.levels;
    if (flags.parallel) cfg.parallel_levels = true;
    return cfg;
}

void require_run_fields(const rfd::RunConfig& cfg) {
    if (cfg.problem.empty() || cfg.grid_points < 1 || cfg.steps < 1 ||
        !(cfg.final_time > 0.0)) {
        throw rfd::ConfigError(
            "missing run parameters: need problem, grid (J >= 1), steps (N >= 1) "
            "and final-time (T > 0), from flags or a config file");
    }
}

int run_solve(const CommonFlags& flags) {
    rfd::RunConfig cfg = build_config(flags);
    require_run_fields(cfg);
    const rfd::ErrorReport report = rfd::run_single(cfg);
    std::printf("problem=%s variant=%s J=%d N=%d T=%g\n", report.problem.c_str(),
                report.variant.c_str(), report.grid_points, report.steps, report.final_time);
    std::printf("  err_node_h1  = %.6e\n", report.err_node_h1);
    std::printf("  err_half_h1  = %.6e\n", report.err_half_h1);
    std::printf("  err_relax_h1 = %.6e\n", report.err_relax_h1);
    std::printf("  charge_drift = %.3e\n", report.charge_drift);
    if (report.energy_drift) {
        std::printf("  energy_drift = %.3e\n", *report.energy_drift);
    }
    if (report.mesh_condition) {
        std::printf("  mesh condition: %.3e %s %.3e (constant %g)\n",
                    report.mesh_condition->lhs,
                    report.mesh_condition->satisfied ? "<=" : ">",
                    report.mesh_condition->rhs, report.mesh_condition->constant);
    }
    std::printf("  wall_ms      = %.1f\n", report.wall_ms);
    return 0;
}

int run_converge(const CommonFlags& flags) {
    rfd::RunConfig cfg = build_config(flags);
    require_run_fields(cfg);
    const rfd::EOCTable table = rfd::convergence_study(cfg);
    std::fputs(rfd::eoc_to_csv(table).c_str(), stdout);
    std::printf("# fitted slopes: node=%.3f half=%.3f relax=%.3f\n", table.slope_node,
                table.slope_half, table.slope_relax);
    if (!cfg.output_path.empty()) {
        rfd::emit_eoc_csv(table, rfd::resolve_output_path(cfg.output_path));
    }
    return 0;
}

int run_verify(const CommonFlags& flags) {
    rfd::RunConfig cfg = build_config(flags);
    const rfd::PropertyReport report = rfd::verify_properties(cfg.seed);
    for (const rfd::PropertyResult& r : report.results) {
        std::printf("%-32s %s  worst defect %.3e (tolerance %.1e)\n", r.name.c_str(),
                    r.passed ? "pass" : "FAIL", r.worst_defect, r.tolerance);
    }
    std::printf("seed %llu: %zu properties, %s\n",
                static_cast<unsigned long long>(report.seed), report.results.size(),
                report.all_passed() ? "all passed" : "FAILURES PRESENT");
    return report.all_passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relaxation finite-difference solver for the 1D nonlinear "
                 "Schroedinger equation with Dirichlet boundary conditions"};
    app.require_subcommand(1);

    CommonFlags solve_flags, converge_flags, verify_flags;
    CLI::App* solve = app.add_subcommand("solve", "run one configuration and report errors");
    add_common_flags(solve, solve_flags);
    CLI::App* converge =
        app.add_subcommand("converge", "run a mesh-halving sweep and print the EOC table");
    add_common_flags(converge, converge_flags);
    CLI::App* verify =
        app.add_subcommand("verify", "run the randomized operator/mollifier property suite");
    add_common_flags(verify, verify_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) {
            return run_solve(solve_flags);
        }
        if (converge->parsed()) {
            return run_converge(converge_flags);
        }
        if (verify->parsed()) {
            return run_verify(verify_flags);
        }
    } catch (const rfd::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
