/// @file harness.hpp
/// @brief Experiment driver: single runs, convergence studies with EOC
///        tables, the randomized property suite, and config/report IO.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rfd/scheme.hpp"

namespace rfd {

/// Raised for malformed configs, unknown keys/ids and invalid ranges.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string problem;           ///< catalogue id
    std::string variant = "rfd";   ///< rfd | rfd-first-order | mrfd
    int grid_points = 0;           ///< J, interior spatial nodes
    int steps = 0;                 ///< N, time steps
    double final_time = 0.0;       ///< T
    std::optional<double> delta_star;  ///< cutoff radius (mrfd)
    double fp_tol = 1e-12;
    int fp_max_iter = 50;
    std::vector<double> snapshot_times;
    std::string output_path;       ///< empty: no file emitted
    std::uint64_t seed = 20240901; ///< randomized property tests
    int levels = 4;                ///< mesh levels for convergence studies
    double mesh_condition_constant = 1.0;  ///< user constant in the delta* check
    bool parallel_levels = false;

    SchemeVariant scheme_variant() const;
};

/// Strict JSON config parser: unknown keys are rejected by name, required
/// fields (problem, J, N, T) must be present, ranges are validated.
RunConfig parse_config(const std::filesystem::path& path);

/// Canonical JSON form of a config (round-trips through parse_config).
void emit_config(const RunConfig& cfg, const std::filesystem::path& path);

struct MeshConditionReport {
    double lhs = 0.0;        ///< constant * sqrt(L) * (tau^2 + h^2)
    double rhs = 0.0;        ///< delta_star / 2
    bool satisfied = false;
    double constant = 1.0;
};

struct Snapshot {
    double requested_time = 0.0;
    double actual_time = 0.0;  ///< nearest node time
    std::vector<Complex> values;
};

struct ErrorReport {
    std::string problem;
    std::string variant;
    int grid_points = 0;
    int steps = 0;
    double final_time = 0.0;
    double h = 0.0;
    double tau = 0.0;
    double err_node_h1 = 0.0;   ///< max_m ||u^m - W^m||_{1,h}, NaN without exact
    double err_half_h1 = 0.0;   ///< ||u^{1/2} - W^{1/2}||_{1,h}
    double err_relax_h1 = 0.0;  ///< max_m ||g(|u^{m+1/2}|^2) - Phi^{m+1/2}||_{1,h}
    double charge_drift = 0.0;  ///< max_n |Q^n - Q^0| / Q^0 (0 when Q^0 = 0)
    std::optional<double> energy_drift;  ///< max_n of |E^n - E^0|/max(|E^0|,1)
    double wall_ms = 0.0;       ///< excluded from the determinism contract
    bool non_conforming_init = false;  ///< W^0 fell back to interpolation
    std::optional<MeshConditionReport> mesh_condition;  ///< mrfd only
    int fp_iterations_max = 0;
    std::vector<Snapshot> snapshots;
};

/// March the configured problem to T and measure errors in the discrete
/// norms at the nodes and intermediate nodes.
ErrorReport run_single(const RunConfig& cfg);

struct EOCRow {
    int level = 0;
    int grid_points = 0;
    int steps = 0;
    double h = 0.0;
    double tau = 0.0;
    double err_node = 0.0;
    double eoc_node = 0.0;  ///< NaN on the first row
    double err_half = 0.0;
    double err_relax = 0.0;
    double eoc_relax = 0.0;
    double charge_drift = 0.0;
    std::optional<double> energy_drift;
    double wall_ms = 0.0;
};

struct EOCTable {
    std::vector<EOCRow> rows;
    double slope_node = 0.0;   ///< least-squares fit of log(err) vs log(h)
    double slope_half = 0.0;
    double slope_relax = 0.0;
};

/// Run cfg.levels mesh levels, halving h and tau together from (J, N).
/// @throws ConfigError with fewer than 3 levels.
EOCTable convergence_study(const RunConfig& cfg);

struct PropertyResult {
    std::string name;
    double worst_defect = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct PropertyReport {
    std::uint64_t seed = 0;
    std::vector<PropertyResult> results;
    bool all_passed() const;
};

/// Execute the randomized identity/inequality suites (operator identities,
/// embedding inequalities, eigenmode table, mollifier conditions and
/// Lipschitz bounds) on the given grid sizes.  Deterministic for a fixed
/// seed; failures are report entries, not exceptions.
PropertyReport verify_properties(std::uint64_t seed, std::span<const int> sizes);
PropertyReport verify_properties(std::uint64_t seed);  ///< sizes {3, 10, 100}

/// Atomically write a JSON report / EOC CSV.
void emit_report(const ErrorReport& report, const std::filesystem::path& path);
void emit_eoc_csv(const EOCTable& table, const std::filesystem::path& path);
std::string report_to_json(const ErrorReport& report);
std::string eoc_to_csv(const EOCTable& table);

/// Environment variable that overrides the directory for relative output
/// paths ("RFD_OUT_DIR").
std::filesystem::path resolve_output_path(const std::string& path);

}  // namespace rfd
