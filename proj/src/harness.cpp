#include "rfd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rfd/operators.hpp"

namespace rfd {

namespace {

using json = nlohmann::ordered_json;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Config IO
// ---------------------------------------------------------------------------

const std::vector<std::string>& allowed_config_keys() {
    static const std::vector<std::string> keys = {
        "problem",     "variant",        "J",
        "N",           "T",              "delta_star",
        "fp_tol",      "fp_max_iter",    "snapshot_times",
        "out",         "seed",           "levels",
        "mesh_condition_constant",       "parallel",
    };
    return keys;
}

void validate_ranges(const RunConfig& cfg) {
    if (cfg.problem.empty()) {
        throw ConfigError("config: 'problem' must not be empty");
    }
    if (cfg.variant != "rfd" && cfg.variant != "rfd-first-order" && cfg.variant != "mrfd") {
        throw ConfigError("config: unknown variant '" + cfg.variant +
                          "' (expected rfd, rfd-first-order or mrfd)");
    }
    if (cfg.grid_points < 1) {
        throw ConfigError("config: 'J' must be >= 1");
    }
    if (cfg.steps < 1) {
        throw ConfigError("config: 'N' must be >= 1");
    }
    if (!(cfg.final_time > 0.0)) {
        throw ConfigError("config: 'T' must be positive");
    }
    if (cfg.delta_star && !(*cfg.delta_star > 0.0)) {
        throw ConfigError("config: 'delta_star' must be positive");
    }
    if (!(cfg.fp_tol > 0.0)) {
        throw ConfigError("config: 'fp_tol' must be positive");
    }
    if (cfg.fp_max_iter < 1) {
        throw ConfigError("config: 'fp_max_iter' must be >= 1");
    }
    if (cfg.levels < 1) {
        throw ConfigError("config: 'levels' must be >= 1");
    }
    if (!(cfg.mesh_condition_constant > 0.0)) {
        throw ConfigError("config: 'mesh_condition_constant' must be positive");
    }
}

}  // namespace

SchemeVariant RunConfig::scheme_variant() const {
    if (variant == "rfd") {
        SchemeVariant v = SchemeVariant::relaxation();
        v.fp_tol = fp_tol;
        v.fp_max_iter = fp_max_iter;
        return v;
    }
    if (variant == "rfd-first-order") {
        SchemeVariant v = SchemeVariant::relaxation_first_order();
        v.fp_tol = fp_tol;
        v.fp_max_iter = fp_max_iter;
        return v;
    }
    if (variant == "mrfd") {
        if (!delta_star) {
            throw ConfigError("config: variant 'mrfd' requires 'delta_star'");
        }
        return SchemeVariant::mollified(*delta_star, fp_tol, fp_max_iter);
    }
    throw ConfigError("config: unknown variant '" + variant + "'");
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path.string() + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config: malformed JSON in '" + path.string() + "': " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }

    const auto& allowed = allowed_config_keys();
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            throw ConfigError("config: unknown key '" + it.key() + "'");
        }
    }
    for (const char* required : {"problem", "J", "N", "T"}) {
        if (!doc.contains(required)) {
            throw ConfigError(std::string("config: missing required field '") + required + "'");
        }
    }

    RunConfig cfg;
    try {
        cfg.problem = doc.at("problem").get<std::string>();
        cfg.grid_points = doc.at("J").get<int>();
        cfg.steps = doc.at("N").get<int>();
        cfg.final_time = doc.at("T").get<double>();
        if (doc.contains("variant")) cfg.variant = doc["variant"].get<std::string>();
        if (doc.contains("delta_star")) cfg.delta_star = doc["delta_star"].get<double>();
        if (doc.contains("fp_tol")) cfg.fp_tol = doc["fp_tol"].get<double>();
        if (doc.contains("fp_max_iter")) cfg.fp_max_iter = doc["fp_max_iter"].get<int>();
        if (doc.contains("snapshot_times")) {
            cfg.snapshot_times = doc["snapshot_times"].get<std::vector<double>>();
        }
        if (doc.contains("out")) cfg.output_path = doc["out"].get<std::string>();
        if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("levels")) cfg.levels = doc["levels"].get<int>();
        if (doc.contains("mesh_condition_constant")) {
            cfg.mesh_condition_constant = doc["mesh_condition_constant"].get<double>();
        }
        if (doc.contains("parallel")) cfg.parallel_levels = doc["parallel"].get<bool>();
    } catch (const json::exception& e) {
        throw ConfigError("config: type error in '" + path.string() + "': " + e.what());
    }
    validate_ranges(cfg);
    return cfg;
}

namespace {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out << content;
        if (!out) {
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

void emit_config(const RunConfig& cfg, const std::filesystem::path& path) {
    json doc;
    doc["problem"] = cfg.problem;
    doc["variant"] = cfg.variant;
    doc["J"] = cfg.grid_points;
    doc["N"] = cfg.steps;
    doc["T"] = cfg.final_time;
    if (cfg.delta_star) {
        doc["delta_star"] = *cfg.delta_star;
    }
    doc["fp_tol"] = cfg.fp_tol;
    doc["fp_max_iter"] = cfg.fp_max_iter;
    if (!cfg.snapshot_times.empty()) {
        doc["snapshot_times"] = cfg.snapshot_times;
    }
    if (!cfg.output_path.empty()) {
        doc["out"] = cfg.output_path;
    }
    doc["seed"] = cfg.seed;
    doc["levels"] = cfg.levels;
    doc["mesh_condition_constant"] = cfg.mesh_condition_constant;
    doc["parallel"] = cfg.parallel_levels;
    atomic_write(path, doc.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Single run
// ---------------------------------------------------------------------------

namespace {

// g(|u(t,.)|^2) - phi in the discrete H^1 norm.
double relax_error(const Problem& p, const ExactSolution& exact, double t,
                   const RealGridFunction& phi, const SpaceMesh& mesh) {
    std::vector<Complex> diff(mesh.total_nodes());
    for (std::size_t j = 0; j < diff.size(); ++j) {
        const double x = mesh.node(static_cast<int>(j));
        diff[j] = Complex(p.g(std::norm(exact.u(t, x))) - phi[j], 0.0);
    }
    return norm_1h(GridFunction(std::move(diff)), mesh);
}

double node_error(const ExactSolution& exact, double t, const GridFunction& w,
                  const SpaceMesh& mesh) {
    std::vector<Complex> diff(mesh.total_nodes());
    for (std::size_t j = 0; j < diff.size(); ++j) {
        diff[j] = exact.u(t, mesh.node(static_cast<int>(j))) - w[j];
    }
    return norm_1h(GridFunction(std::move(diff)), mesh);
}

}  // namespace

ErrorReport run_single(const RunConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();

    const Problem p = make_problem(cfg.problem);
    const SpaceMesh mesh(p.x_a, p.x_b, cfg.grid_points);
    const TimeMesh time(cfg.final_time, cfg.steps);
    validate_problem(p, mesh);
    const SchemeVariant variant = cfg.scheme_variant();
    const bool mollified = variant.kind == SchemeVariant::Kind::mollified;

    std::optional<Mollifier> moll;
    if (mollified) {
        moll = Mollifier::build(variant.delta_star);
    }

    ErrorReport report;
    report.problem = cfg.problem;
    report.variant = cfg.variant;
    report.grid_points = cfg.grid_points;
    report.steps = cfg.steps;
    report.final_time = cfg.final_time;
    report.h = mesh.h();
    report.tau = time.tau();
    if (mollified) {
        MeshConditionReport mc;
        mc.constant = cfg.mesh_condition_constant;
        mc.lhs = cfg.mesh_condition_constant * std::sqrt(mesh.length()) *
                 (time.tau() * time.tau() + mesh.h() * mesh.h());
        mc.rhs = 0.5 * variant.delta_star;
        mc.satisfied = mc.lhs <= mc.rhs;
        report.mesh_condition = mc;
    }

    bool fallback = false;
    const GridFunction w0 = init_w0(p, mesh, &fallback);
    report.non_conforming_init = fallback;
    if (fallback) {
        std::fprintf(stderr,
                     "warning: problem '%s' supplies no u0''; W^0 uses interior "
                     "interpolation (non-conforming initialization)\n",
                     p.name.c_str());
    }

    const GridFunction w_half = step_half(w0, p, time.tau(), mesh);
    const RealGridFunction phi0 =
        phi_init(variant, w_half, p, mesh, moll ? &*moll : nullptr);

    const bool has_exact = p.exact.has_value();
    report.err_node_h1 = has_exact ? node_error(*p.exact, 0.0, w0, mesh) : quiet_nan();
    report.err_half_h1 = has_exact ? node_error(*p.exact, time.t_mid(0), w_half, mesh)
                                   : quiet_nan();
    report.err_relax_h1 = quiet_nan();

    const double charge0 = charge(w0, mesh);
    report.charge_drift = 0.0;
    const bool has_energy = static_cast<bool>(p.g_antiderivative);
    double energy0 = 0.0;
    double energy_scale = 1.0;
    if (has_energy) {
        energy0 = energy(w0, p.g_antiderivative, mesh);
        energy_scale = std::max(std::abs(energy0), 1.0);
        report.energy_drift = 0.0;
    }

    // Nearest time node per requested snapshot; the final state is always kept.
    std::vector<double> wanted = cfg.snapshot_times;
    std::sort(wanted.begin(), wanted.end());
    auto snapshot_index = [&](double t) {
        const long n = std::lround(t / time.tau());
        return static_cast<int>(std::clamp<long>(n, 0, time.N()));
    };
    auto record_snapshot = [&](int n, const GridFunction& w) {
        for (const double t : wanted) {
            if (snapshot_index(t) == n) {
                report.snapshots.push_back(
                    Snapshot{t, time.t(n), std::vector<Complex>(w.values().begin(),
                                                                w.values().end())});
            }
        }
    };
    record_snapshot(0, w0);

    SolverState state{0, w0, phi0, mesh, time};
    for (int n = 0; n < time.N(); ++n) {
        if (mollified) {
            int iters = 0;
            state = mrfd_advance(state, p, *moll, variant, &iters);
            report.fp_iterations_max = std::max(report.fp_iterations_max, iters);
        } else {
            state = advance(state, p, variant);
        }

        if (has_exact) {
            const double e_relax = relax_error(p, *p.exact, time.t_mid(n), state.phi, mesh);
            report.err_relax_h1 = std::isnan(report.err_relax_h1)
                                      ? e_relax
                                      : std::max(report.err_relax_h1, e_relax);
            report.err_node_h1 =
                std::max(report.err_node_h1, node_error(*p.exact, time.t(n + 1), state.w, mesh));
        }
        if (charge0 > 0.0) {
            report.charge_drift =
                std::max(report.charge_drift, std::abs(charge(state.w, mesh) - charge0) / charge0);
        }
        if (has_energy) {
            const double drift =
                std::abs(energy(state.w, p.g_antiderivative, mesh) - energy0) / energy_scale;
            report.energy_drift = std::max(*report.energy_drift, drift);
        }
        record_snapshot(n + 1, state.w);
    }

    // Final state snapshot (kept even when not requested).
    if (report.snapshots.empty() || snapshot_index(report.snapshots.back().requested_time) !=
                                        time.N()) {
        report.snapshots.push_back(Snapshot{time.final_time(), time.final_time(),
                                            std::vector<Complex>(state.w.values().begin(),
                                                                 state.w.values().end())});
    }

    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               t_start)
                         .count();
    if (!cfg.output_path.empty()) {
        emit_report(report, resolve_output_path(cfg.output_path));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Convergence study
// ---------------------------------------------------------------------------

namespace {

double fit_slope(const std::vector<double>& log_h, const std::vector<double>& log_e) {
    const std::size_t n = log_h.size();
    if (n < 2) {
        return quiet_nan();
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += log_h[i];
        my += log_e[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (log_h[i] - mx) * (log_e[i] - my);
        den += (log_h[i] - mx) * (log_h[i] - mx);
    }
    return num / den;
}

}  // namespace

EOCTable convergence_study(const RunConfig& cfg) {
    if (cfg.levels < 3) {
        throw ConfigError("convergence_study: need at least 3 mesh levels");
    }

    std::vector<RunConfig> level_cfg(static_cast<std::size_t>(cfg.levels), cfg);
    for (int l = 0; l < cfg.levels; ++l) {
        auto& c = level_cfg[static_cast<std::size_t>(l)];
        c.grid_points = ((cfg.grid_points + 1) << l) - 1;
        c.steps = cfg.steps << l;
        c.snapshot_times.clear();
        c.output_path.clear();
    }

    std::vector<ErrorReport> reports(level_cfg.size());
    if (cfg.parallel_levels) {
        std::vector<std::future<ErrorReport>> futures;
        futures.reserve(level_cfg.size());
        for (const RunConfig& c : level_cfg) {
            futures.push_back(std::async(std::launch::async, [c] { return run_single(c); }));
        }
        for (std::size_t i = 0; i < futures.size(); ++i) {
            reports[i] = futures[i].get();
        }
    } else {
        for (std::size_t i = 0; i < level_cfg.size(); ++i) {
            reports[i] = run_single(level_cfg[i]);
        }
    }

    EOCTable table;
    std::vector<double> lh, le_node, le_half, le_relax;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const ErrorReport& r = reports[i];
        EOCRow row;
        row.level = static_cast<int>(i);
        row.grid_points = r.grid_points;
        row.steps = r.steps;
        row.h = r.h;
        row.tau = r.tau;
        row.err_node = r.err_node_h1;
        row.err_half = r.err_half_h1;
        row.err_relax = r.err_relax_h1;
        row.charge_drift = r.charge_drift;
        row.energy_drift = r.energy_drift;
        row.wall_ms = r.wall_ms;
        row.eoc_node = quiet_nan();
        row.eoc_relax = quiet_nan();
        if (i > 0) {
            const ErrorReport& prev = reports[i - 1];
            if (prev.err_node_h1 > 0.0 && r.err_node_h1 > 0.0) {
                row.eoc_node = std::log2(prev.err_node_h1 / r.err_node_h1);
            }
            if (prev.err_relax_h1 > 0.0 && r.err_relax_h1 > 0.0) {
                row.eoc_relax = std::log2(prev.err_relax_h1 / r.err_relax_h1);
            }
        }
        table.rows.push_back(std::move(row));

        if (r.err_node_h1 > 0.0 && std::isfinite(r.err_node_h1)) {
            lh.push_back(std::log(r.h));
            le_node.push_back(std::log(r.err_node_h1));
        }
        if (r.err_half_h1 > 0.0 && std::isfinite(r.err_half_h1)) {
            le_half.push_back(std::log(r.err_half_h1));
        }
        if (r.err_relax_h1 > 0.0 && std::isfinite(r.err_relax_h1)) {
            le_relax.push_back(std::log(r.err_relax_h1));
        }
    }
    table.slope_node = fit_slope(lh, le_node);
    table.slope_half = le_half.size() == lh.size() ? fit_slope(lh, le_half) : quiet_nan();
    table.slope_relax = le_relax.size() == lh.size() ? fit_slope(lh, le_relax) : quiet_nan();
    return table;
}

// ---------------------------------------------------------------------------
// Property suite
// ---------------------------------------------------------------------------

namespace {

// Dense complex LU with partial pivoting; used to solve (I + B_h) y = c
// without invoking the algebraic identity under test.
class DenseLU {
public:
    explicit DenseLU(std::vector<std::vector<Complex>> a) : a_(std::move(a)), piv_(a_.size()) {
        const std::size_t n = a_.size();
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pr = col;
            for (std::size_t r = col + 1; r < n; ++r) {
                if (std::abs(a_[r][col]) > std::abs(a_[pr][col])) {
                    pr = r;
                }
            }
            if (std::abs(a_[pr][col]) < 1e-300) {
                throw std::runtime_error("DenseLU: singular matrix");
            }
            std::swap(a_[col], a_[pr]);
            piv_[col] = pr;
            for (std::size_t r = col + 1; r < n; ++r) {
                a_[r][col] /= a_[col][col];
                for (std::size_t c = col + 1; c < n; ++c) {
                    a_[r][c] -= a_[r][col] * a_[col][c];
                }
            }
        }
    }

    std::vector<Complex> solve(std::vector<Complex> b) const {
        const std::size_t n = a_.size();
        for (std::size_t col = 0; col < n; ++col) {
            std::swap(b[col], b[piv_[col]]);
            for (std::size_t r = col + 1; r < n; ++r) {
                b[r] -= a_[r][col] * b[col];
            }
        }
        for (std::size_t r = n; r-- > 0;) {
            for (std::size_t c = r + 1; c < n; ++c) {
                b[r] -= a_[r][c] * b[c];
            }
            b[r] /= a_[r][r];
        }
        return b;
    }

private:
    std::vector<std::vector<Complex>> a_;
    std::vector<std::size_t> piv_;
};

class RandomGridFunctions {
public:
    explicit RandomGridFunctions(std::uint64_t seed) : rng_(seed) {}

    // Boundary-zero function with uniform values; every 10th draw is an
    // adversarial single-node spike.
    GridFunction draw(const SpaceMesh& mesh) {
        ++count_;
        std::vector<Complex> vals(mesh.total_nodes(), Complex(0.0, 0.0));
        if (count_ % 10 == 0) {
            std::uniform_int_distribution<std::size_t> node(1, mesh.total_nodes() - 2);
            vals[node(rng_)] = Complex(amplitude_(rng_) * 10.0, amplitude_(rng_) * 10.0);
        } else {
            for (std::size_t j = 1; j + 1 < vals.size(); ++j) {
                vals[j] = Complex(amplitude_(rng_), amplitude_(rng_));
            }
        }
        return GridFunction(std::move(vals), true);
    }

    double uniform() { return amplitude_(rng_); }

private:
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> amplitude_{-1.0, 1.0};
    std::size_t count_ = 0;
};

struct DefectTracker {
    double worst = 0.0;
    void update(double defect) { worst = std::max(worst, defect); }
};

double rel_defect(Complex got, Complex want) {
    const double scale = std::max({std::abs(got), std::abs(want), 1e-30});
    return std::abs(got - want) / scale;
}

double rel_defect(double got, double want) {
    const double scale = std::max({std::abs(got), std::abs(want), 1e-30});
    return std::abs(got - want) / scale;
}

// Violation of lhs <= rhs, relative to rhs.
double violation(double lhs, double rhs) {
    return rhs > 0.0 ? std::max(0.0, (lhs - rhs) / rhs) : std::max(0.0, lhs);
}

}  // namespace

PropertyReport verify_properties(std::uint64_t seed) {
    const int sizes[] = {3, 10, 100};
    return verify_properties(seed, sizes);
}

PropertyReport verify_properties(std::uint64_t seed, std::span<const int> sizes) {
    PropertyReport report;
    report.seed = seed;
    RandomGridFunctions rand(seed);

    constexpr int kDraws = 100;
    constexpr double kTau = 0.37;  // arbitrary positive step for the operators
    const double x_a = -0.3, x_b = 1.1;

    DefectTracker sbp, dirichlet_form, sup_embed, poincare, inverse_ineq, norm_consistency;
    DefectTracker bh_norm, bh_semi, ah_contraction, half_identity, eigenmode;

    for (const int J : sizes) {
        const SpaceMesh mesh(x_a, x_b, J);
        const HalfStepOperators ops(kTau, mesh);
        const double L = mesh.length();

        // (I + B_h) as a dense matrix on the interior unknowns.
        const std::size_t ni = mesh.total_nodes() - 2;
        std::vector<std::vector<Complex>> ipb(ni, std::vector<Complex>(ni));
        for (std::size_t c = 0; c < ni; ++c) {
            std::vector<Complex> e(mesh.total_nodes(), Complex(0.0, 0.0));
            e[c + 1] = Complex(1.0, 0.0);
            const GridFunction col = apply_B_h(GridFunction(std::move(e), true), ops);
            for (std::size_t r = 0; r < ni; ++r) {
                ipb[r][c] = col[r + 1] + (r == c ? Complex(1.0, 0.0) : Complex(0.0, 0.0));
            }
        }
        const DenseLU ipb_lu(std::move(ipb));
        const RealGridFunction zero_phi = RealGridFunction::zeros(mesh.total_nodes());

        for (int draw = 0; draw < kDraws; ++draw) {
            const GridFunction v = rand.draw(mesh);
            const GridFunction z = rand.draw(mesh);

            // Summation by parts and the Dirichlet-form identity.
            const Complex a = inner_product_0h(apply_laplacian(v, mesh), z, mesh);
            const Complex b =
                -staggered_inner_product_0h(delta_h(v, mesh), delta_h(z, mesh), mesh);
            const Complex c = inner_product_0h(v, apply_laplacian(z, mesh), mesh);
            sbp.update(rel_defect(a, b));
            sbp.update(rel_defect(c, b));
            const double s1v = seminorm_1h(v, mesh);
            dirichlet_form.update(rel_defect(
                inner_product_0h(apply_laplacian(v, mesh), v, mesh), Complex(-s1v * s1v, 0.0)));

            // Embedding and inverse inequalities.
            const NormBundle nb = discrete_norms(v, mesh);
            sup_embed.update(violation(nb.normInf, std::sqrt(L) * nb.seminorm1h));
            poincare.update(violation(nb.norm0h, L * nb.seminorm1h));
            inverse_ineq.update(violation(nb.seminorm1h, 2.0 / mesh.h() * nb.norm0h));
            norm_consistency.update(rel_defect(
                nb.norm1h * nb.norm1h, nb.norm0h * nb.norm0h + nb.seminorm1h * nb.seminorm1h));

            // B_h isometries and the A_h^{-1} contraction.
            const GridFunction bv = apply_B_h(v, ops);
            bh_norm.update(rel_defect(norm_0h(bv, mesh), nb.norm0h));
            bh_semi.update(rel_defect(seminorm_1h(bv, mesh), nb.seminorm1h));
            const GridFunction ainv = solve_nu_h(0.5, zero_phi, v, kTau, mesh);
            ah_contraction.update(violation(norm_0h(ainv, mesh), nb.norm0h));

            // Half identity: y solving (I + B_h) y = A_h^{-1} v equals v/2.
            std::vector<Complex> rhs(ni);
            for (std::size_t r = 0; r < ni; ++r) {
                rhs[r] = ainv[r + 1];
            }
            const std::vector<Complex> y = ipb_lu.solve(std::move(rhs));
            double defect = 0.0, scale = 1e-30;
            for (std::size_t r = 0; r < ni; ++r) {
                defect = std::max(defect, std::abs(y[r] - 0.5 * v[r + 1]));
                scale = std::max(scale, std::abs(0.5 * v[r + 1]));
            }
            half_identity.update(defect / scale);
        }

        // Discrete eigenmode table: lap_h(sine_k) = -lambda_k sine_k.
        for (const int k : {1, 2, std::max(1, J / 2), J}) {
            std::vector<Complex> mode(mesh.total_nodes());
            for (std::size_t j = 0; j < mode.size(); ++j) {
                mode[j] = Complex(
                    std::sin(k * std::numbers::pi * (mesh.node(static_cast<int>(j)) - x_a) / L),
                    0.0);
            }
            mode.front() = mode.back() = Complex(0.0, 0.0);
            const GridFunction sine(std::move(mode), true);
            const double lambda =
                4.0 / (mesh.h() * mesh.h()) *
                std::pow(std::sin(k * std::numbers::pi * mesh.h() / (2.0 * L)), 2);
            const GridFunction lap = apply_laplacian(sine, mesh);
            double defect = 0.0;
            for (std::size_t j = 1; j + 1 < sine.size(); ++j) {
                defect = std::max(defect, std::abs(lap[j] + lambda * sine[j]));
            }
            eigenmode.update(defect / lambda);
        }
    }

    // Mollifier properties across three scales.
    DefectTracker hermite, identity_region, lipschitz, grid_lipschitz;
    for (const double delta : {0.5, 1.0, 2.0}) {
        const Mollifier m = Mollifier::build(delta);
        const double scale = std::max(1.0, delta);
        const std::array<double, 8> expected = {delta, 1.0, 0.0, 0.0,
                                                2.0 * delta, 0.0, 0.0, 0.0};
        int idx = 0;
        for (const double x : {delta, 2.0 * delta}) {
            hermite.update(std::abs(m.saturate(x) - expected[idx == 0 ? 0 : 4]) / scale);
            for (int order = 1; order <= 3; ++order) {
                hermite.update(std::abs(m.saturate_derivative(x, order) -
                                        expected[static_cast<std::size_t>((idx == 0 ? 0 : 4) +
                                                                          order)]) /
                               scale);
            }
            ++idx;
        }

        const double n1 = m.derivative_sup(1);
        for (int i = 0; i < 500; ++i) {
            // Identity region: |z| <= delta.
            const double angle = rand.uniform() * std::numbers::pi;
            const double radius = std::abs(rand.uniform()) * delta;
            const Complex z(radius * std::cos(angle), radius * std::sin(angle));
            identity_region.update(std::abs(m.clip(z) - z));

            // Lipschitz bound on arbitrary pairs (scaled to stress the joins).
            const Complex z1(rand.uniform() * 3.0 * delta, rand.uniform() * 3.0 * delta);
            const Complex z2(rand.uniform() * 3.0 * delta, rand.uniform() * 3.0 * delta);
            lipschitz.update(violation(std::abs(m.clip(z1) - m.clip(z2)),
                                       n1 * std::abs(z1 - z2) + 1e-30));
        }

        const SpaceMesh mesh(x_a, x_b, 50);
        for (int i = 0; i < 20; ++i) {
            const GridFunction v = rand.draw(mesh);
            const GridFunction w = rand.draw(mesh);
            grid_lipschitz.update(violation(norm_0h(m.clip(v) - m.clip(w), mesh),
                                            n1 * norm_0h(v - w, mesh) + 1e-30));
        }
    }

    auto push = [&report](std::string name, const DefectTracker& tracker, double tolerance) {
        report.results.push_back(
            PropertyResult{std::move(name), tracker.worst, tolerance, tracker.worst <= tolerance});
    };
    push("summation_by_parts", sbp, 1e-13);
    push("dirichlet_form_identity", dirichlet_form, 1e-13);
    push("sup_embedding", sup_embed, 1e-12);
    push("discrete_poincare", poincare, 1e-12);
    push("inverse_inequality", inverse_ineq, 1e-12);
    push("norm1h_consistency", norm_consistency, 1e-14);
    push("B_h_norm_isometry", bh_norm, 1e-12);
    push("B_h_seminorm_isometry", bh_semi, 1e-12);
    push("A_h_inverse_contraction", ah_contraction, 1e-13);
    push("half_identity", half_identity, 1e-11);
    push("laplacian_eigenmode_table", eigenmode, 1e-12);
    push("mollifier_hermite_conditions", hermite, 1e-10);
    push("mollifier_identity_region", identity_region, 0.0);
    push("mollifier_lipschitz", lipschitz, 1e-12);
    push("mollifier_grid_lipschitz", grid_lipschitz, 1e-12);
    return report;
}

bool PropertyReport::all_passed() const {
    return std::all_of(results.begin(), results.end(),
                       [](const PropertyResult& r) { return r.passed; });
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

std::string report_to_json(const ErrorReport& r) {
    json doc;
    doc["problem"] = r.problem;
    doc["variant"] = r.variant;
    doc["J"] = r.grid_points;
    doc["N"] = r.steps;
    doc["T"] = r.final_time;
    doc["h"] = r.h;
    doc["tau"] = r.tau;
    doc["err_node_h1"] = r.err_node_h1;    // NaN serializes as null
    doc["err_half_h1"] = r.err_half_h1;
    doc["err_relax_h1"] = r.err_relax_h1;
    doc["charge_drift"] = r.charge_drift;
    if (r.energy_drift) {
        doc["energy_drift"] = *r.energy_drift;
    } else {
        doc["energy_drift"] = nullptr;
    }
    doc["wall_ms"] = r.wall_ms;
    doc["non_conforming_init"] = r.non_conforming_init;
    doc["fp_iterations_max"] = r.fp_iterations_max;
    if (r.mesh_condition) {
        doc["mesh_condition"] = {{"lhs", r.mesh_condition->lhs},
                                 {"rhs", r.mesh_condition->rhs},
                                 {"satisfied", r.mesh_condition->satisfied},
                                 {"constant", r.mesh_condition->constant}};
    } else {
        doc["mesh_condition"] = nullptr;
    }
    doc["snapshots"] = json::array();
    for (const Snapshot& s : r.snapshots) {
        json snap;
        snap["requested_t"] = s.requested_time;
        snap["t"] = s.actual_time;
        json re = json::array(), im = json::array();
        for (const Complex& v : s.values) {
            re.push_back(v.real());
            im.push_back(v.imag());
        }
        snap["re"] = std::move(re);
        snap["im"] = std::move(im);
        doc["snapshots"].push_back(std::move(snap));
    }
    return doc.dump(2) + "\n";
}

void emit_report(const ErrorReport& report, const std::filesystem::path& path) {
    atomic_write(path, report_to_json(report));
}

std::string eoc_to_csv(const EOCTable& table) {
    std::ostringstream out;
    out << "level,J,N,h,tau,err_node_h1,eoc_node,err_half_h1,err_relax_h1,eoc_relax,"
           "charge_drift,energy_drift,wall_ms\n";
    for (const EOCRow& row : table.rows) {
        out << row.level << ',' << row.grid_points << ',' << row.steps << ','
            << format_double(row.h) << ',' << format_double(row.tau) << ','
            << format_double(row.err_node) << ','
            << (std::isnan(row.eoc_node) ? "" : format_double(row.eoc_node)) << ','
            << format_double(row.err_half) << ',' << format_double(row.err_relax) << ','
            << (std::isnan(row.eoc_relax) ? "" : format_double(row.eoc_relax)) << ','
            << format_double(row.charge_drift) << ','
            << (row.energy_drift ? format_double(*row.energy_drift) : "") << ','
            << format_double(row.wall_ms) << '\n';
    }
    return out.str();
}

void emit_eoc_csv(const EOCTable& table, const std::filesystem::path& path) {
    atomic_write(path, eoc_to_csv(table));
}

std::filesystem::path resolve_output_path(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("RFD_OUT_DIR"); dir != nullptr && *dir != '\0') {
            return std::filesystem::path(dir) / p;
        }
    }
    return p;
}

}  // namespace rfd
