#pragma once

#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "beltrami/errors.hpp"
#include "beltrami/geometry.hpp"
#include "beltrami/io.hpp"
#include "beltrami/model.hpp"
#include "beltrami/profile.hpp"
#include "beltrami/scenarios.hpp"

namespace beltrami::cli {

enum class Command { geometry, potential, solve, sweep, validate, reproduce };

inline const char* to_string(Command c)
{
    switch (c) {
    case Command::geometry: return "geometry";
    case Command::potential: return "potential";
    case Command::solve: return "solve";
    case Command::sweep: return "sweep";
    case Command::validate: return "validate";
    default: return "reproduce";
    }
}

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int usage = 1;
inline constexpr int validation_failed = 2;
} // namespace exit_code

struct RunConfig {
    Command command = Command::solve;
    std::string figure;             ///< reproduce target
    std::vector<double> radii{1.0}; ///< --R, a list only for sweep
    std::vector<int> ells{0};       ///< --ell, a list only for sweep
    double hbar = 1.0;
    double mass = 1.0;
    std::optional<double> u_max; ///< default depends on R and l
    std::size_t n = 4000;
    GridMode mode = GridMode::staggered_full;
    std::size_t k = 8;
    double tol = 1e-10;
    std::string out = "out";
    std::string format = "csv";

    SurfaceParams surface(double R) const { return {R, hbar, mass}; }

    scenarios::ScenarioParameters scenario(double R, int ell) const
    {
        scenarios::ScenarioParameters p = scenarios::default_parameters(R, ell);
        p.surface = surface(R);
        p.u_max = u_max.value_or(p.u_max);
        p.n = n;
        p.mode = mode;
        p.k = k;
        p.tol = tol;
        return p;
    }

    /// Every range and consistency rule; throws invalid_parameter naming the key.
    void validate() const
    {
        if (radii.empty()) {
            throw invalid_parameter("R", "at least one value required");
        }
        if (ells.empty()) {
            throw invalid_parameter("ell", "at least one value required");
        }
        for (double R : radii) {
            surface(R).validate();
        }
        SurfaceParams{1.0, hbar, mass}.validate();
        if (u_max && !(*u_max > 0.0)) {
            throw invalid_parameter("umax", "must be positive");
        }
        if (n < RadialGrid::min_nodes) {
            throw invalid_parameter("n", "at least 64 nodes required");
        }
        if (mode == GridMode::staggered_full && n % 2 != 0) {
            throw invalid_parameter("n", "staggered-full grids need an even node count");
        }
        if (k > n) {
            throw invalid_parameter("k", "cannot exceed n");
        }
        if (!(tol > 0.0)) {
            throw invalid_parameter("tol", "must be positive");
        }
        if (format != "csv" && format != "json") {
            throw invalid_parameter("format", "expected csv or json");
        }
        const bool single = command == Command::geometry || command == Command::potential || command == Command::solve;
        if (single && radii.size() != 1) {
            throw invalid_parameter("R", std::string(to_string(command)) + " takes a single radius");
        }
        if (single && ells.size() != 1) {
            throw invalid_parameter("ell", std::string(to_string(command)) + " takes a single orbital number");
        }
    }

    /// Effective configuration echoed into every output.
    io::KeyValues echo(std::optional<double> R = {}, std::optional<int> ell = {}) const
    {
        auto join_r = [&] {
            std::string s;
            for (std::size_t i = 0; i < radii.size(); ++i) {
                s += (i ? "," : "") + format_number(radii[i]);
            }
            return s;
        };
        auto join_l = [&] {
            std::string s;
            for (std::size_t i = 0; i < ells.size(); ++i) {
                s += (i ? "," : "") + std::to_string(ells[i]);
            }
            return s;
        };
        const double r0 = R.value_or(radii.front());
        const int l0 = ell.value_or(ells.front());
        io::KeyValues kv{{"command", to_string(command)}};
        if (command == Command::reproduce) {
            kv.emplace_back("figure", figure);
        }
        kv.emplace_back("R", R ? format_number(*R) : join_r());
        kv.emplace_back("ell", ell ? std::to_string(*ell) : join_l());
        kv.emplace_back("hbar", format_number(hbar));
        kv.emplace_back("mass", format_number(mass));
        kv.emplace_back("umax", format_number(u_max.value_or(scenarios::default_u_max(r0, l0))));
        kv.emplace_back("n", std::to_string(n));
        kv.emplace_back("mode", beltrami::to_string(mode));
        kv.emplace_back("k", std::to_string(k));
        kv.emplace_back("tol", format_number(tol));
        kv.emplace_back("format", format);
        return kv;
    }
};

struct ParseResult {
    RunConfig config;
    std::optional<int> exit_now; ///< set for --help or usage errors
    std::string message;
};

/// Flags override config-file values, which override defaults. Unknown config
/// keys and malformed values are usage errors naming the key.
inline ParseResult parse(int argc, const char* const* argv)
{
    ParseResult res;
    RunConfig& cfg = res.config;
    CLI::App app{"Bound states of an electron on the Beltrami pseudosphere", "beltrami"};
    app.set_config("--config", "", "flat key = value file; keys are the long flag names");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    std::string mode = "staggered-full";
    double u_max = 0.0;
    app.add_option("--R", cfg.radii, "pseudosphere radius (list for sweep)")->delimiter(',');
    app.add_option("--ell", cfg.ells, "orbital quantum number (list for sweep)")->delimiter(',');
    app.add_option("--hbar", cfg.hbar, "reduced Planck constant");
    app.add_option("--mass", cfg.mass, "effective mass m*");
    auto* umax_opt = app.add_option("--umax", u_max, "domain half-width; default max(10R, 10/max(l,1))");
    app.add_option("--n", cfg.n, "grid nodes");
    app.add_option("--mode", mode, "staggered-full or split-half");
    app.add_option("--k", cfg.k, "number of eigenvalues");
    app.add_option("--tol", cfg.tol, "bisection tolerance (energy units)");
    app.add_option("--out", cfg.out, "output directory");
    app.add_option("--format", cfg.format, "csv or json");
    app.fallthrough();

    auto* geometry = app.add_subcommand("geometry", "metric, Christoffel symbols and curvatures on a u grid");
    auto* potential = app.add_subcommand("potential", "V_dC, Lambda coefficients, V_eff, Vbar_eff and M(u)");
    auto* solve = app.add_subcommand("solve", "lowest eigenpairs for one (R, l)");
    auto* sweep = app.add_subcommand("sweep", "solve every (R, l) combination");
    auto* validate = app.add_subcommand("validate", "benchmarks and oracle checks; exit 2 on failure");
    auto* reproduce = app.add_subcommand("reproduce", "regenerate the data behind one figure");
    reproduce->add_option("figure", cfg.figure, "fig2 | fig3 | fig4 | fig5 | fig6")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6"}));
    for (auto* sc : {geometry, potential, solve, sweep, validate, reproduce}) {
        sc->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        res.message = app.help();
        res.exit_now = exit_code::success;
        return res;
    } catch (const CLI::ParseError& e) {
        res.message = std::string("usage error: ") + e.what();
        res.exit_now = exit_code::usage;
        return res;
    }

    if (geometry->parsed()) {
        cfg.command = Command::geometry;
    } else if (potential->parsed()) {
        cfg.command = Command::potential;
    } else if (solve->parsed()) {
        cfg.command = Command::solve;
    } else if (sweep->parsed()) {
        cfg.command = Command::sweep;
    } else if (validate->parsed()) {
        cfg.command = Command::validate;
    } else {
        cfg.command = Command::reproduce;
    }
    try {
        cfg.mode = grid_mode_from_string(mode);
        if (umax_opt->count() > 0) {
            cfg.u_max = u_max;
        }
        cfg.validate();
    } catch (const invalid_parameter& e) {
        res.message = std::string("usage error: ") + e.what();
        res.exit_now = exit_code::usage;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Emitters.

inline std::filesystem::path output_path(const RunConfig& cfg, const std::string& stem, const char* ext)
{
    return std::filesystem::path(cfg.out) / (stem + ext);
}

inline io::json profile_json(const ProfileTable& t, const io::KeyValues& config)
{
    io::json params = io::json::object();
    for (const auto& [k, v] : config) {
        params[k] = v;
    }
    io::json meta = io::json::object();
    for (const auto& [k, v] : t.metadata) {
        meta[k] = v;
    }
    io::json cols = io::json::object();
    cols["u"] = t.u;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        cols[t.labels[c]] = t.columns[c];
    }
    return {{"name", t.name}, {"parameters", params}, {"metadata", meta}, {"columns", cols}};
}

inline std::string emit_table(const ProfileTable& t, const RunConfig& cfg, const io::KeyValues& config)
{
    if (cfg.format == "json") {
        const auto path = output_path(cfg, t.name, ".json");
        io::write_file(path, io::dump(profile_json(t, config)));
        return path.string();
    }
    const auto path = output_path(cfg, t.name, ".csv");
    io::write_file(path, io::render([&](std::ostream& os) { io::write_profile_csv(os, t, config); }));
    return path.string();
}

/// Spectrum summary plus one eigenfunction CSV per state. Returns the written paths.
inline std::vector<std::string> emit_result(scenarios::ScenarioResult& r, const RunConfig& cfg)
{
    const auto config = cfg.echo(r.parameters.surface.radius, r.parameters.ell);
    const RadialGrid grid = scenarios::make_grid(r.parameters);
    std::vector<std::string> written;
    r.profile_files.clear();
    for (std::size_t j = 0; j < r.spectrum.eigenvectors.size(); ++j) {
        const std::string stem = r.id + "_state" + std::to_string(j);
        auto kv = config;
        kv.emplace_back("state", std::to_string(j));
        kv.emplace_back("energy", format_number(r.spectrum.eigenvalues[j]));
        const auto path = output_path(cfg, stem, ".csv");
        io::write_file(path, io::render([&](std::ostream& os) {
                           io::write_eigenfunction_csv(os, grid.nodes(), r.spectrum.eigenvectors[j],
                                                       r.parameters.surface, kv);
                       }));
        r.profile_files.push_back(path.filename().string());
        written.push_back(path.string());
    }
    if (cfg.format == "json") {
        const auto path = output_path(cfg, r.id, ".json");
        io::write_file(path, io::dump(io::to_json(r)));
        written.push_back(path.string());
    } else {
        const auto path = output_path(cfg, r.id + "_spectrum", ".csv");
        io::write_file(path, io::render([&](std::ostream& os) { io::write_spectrum_csv(os, r.spectrum, config); }));
        written.push_back(path.string());
    }
    return written;
}

inline void emit_claims(const std::string& stem, const std::vector<scenarios::ClaimCheck>& checks,
                        const RunConfig& cfg, std::ostream& out)
{
    std::string csv;
    csv += io::render([&](std::ostream& os) { io::write_comment_header(os, cfg.echo()); });
    csv += "check,passed,measured,threshold,detail\n";
    for (const auto& c : checks) {
        csv += "\"" + c.name + "\"," + (c.passed ? "true" : "false") + "," + format_number(c.measured) + ","
               + format_number(c.threshold) + ",\"" + c.detail + "\"\n";
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  measured=" << format_number(c.measured);
        if (!c.detail.empty()) {
            out << "  (" << c.detail << ")";
        }
        out << '\n';
    }
    io::write_file(output_path(cfg, stem, ".csv"), csv);
}

inline ProfileTable geometry_table(const SurfaceParams& p)
{
    ProfileTable t;
    t.name = "geometry_" + scenarios::radius_tag(p.radius);
    t.u = scenarios::profile_nodes(5.0 * p.radius, 500);
    t.add_column("g_uu", [&](double u) { return geometry::metric(u, p).g_uu; });
    t.add_column("g_phiphi", [&](double u) { return geometry::metric(u, p).g_phiphi; });
    t.add_column("gamma_u_uu", [&](double u) { return geometry::christoffel(u, p).u_uu; });
    t.add_column("gamma_u_phiphi", [&](double u) { return geometry::christoffel(u, p).u_phiphi; });
    t.add_column("gamma_phi_uphi", [&](double u) { return geometry::christoffel(u, p).phi_uphi; });
    t.add_column("K", [&](double) { return geometry::gaussian_curvature(p); });
    t.add_column("H", [&](double u) { return geometry::mean_curvature(u, p); });
    t.add_column("sqrt_g", [&](double u) { return geometry::sqrt_det_metric(u, p); });
    return t;
}

inline ProfileTable potential_table(const SurfaceParams& p, int ell)
{
    const OrbitalNumber l{ell};
    ProfileTable t;
    t.name = "potential_" + scenarios::radius_tag(p.radius) + "_l" + std::to_string(ell);
    t.u = scenarios::profile_nodes(5.0 * p.radius, 500);
    t.add_column("V_dC", [&](double u) { return model::dacosta_potential(u, p); });
    t.add_column("lambda1", [&](double u) { return model::lambda_coefficients(u, l, p).lambda1; });
    t.add_column("lambda2", [&](double u) { return model::lambda_coefficients(u, l, p).lambda2; });
    t.add_column("lambda3", [&](double u) { return model::lambda_coefficients(u, l, p).lambda3; });
    t.add_column("V_eff", [&](double u) { return model::effective_potential(u, l, p); });
    t.add_column("Vbar_eff", [&](double u) { return model::pdm_effective_potential(u, l, p); });
    t.add_column("M", [&](double u) { return model::mass_profile(u, p); });
    return t;
}

// ---------------------------------------------------------------------------
// Dispatch.

inline void print_spectrum(const scenarios::ScenarioResult& r, std::ostream& out)
{
    out << r.id << ": " << r.spectrum.size() << " states, " << r.statistics.bound_count << " bound\n";
    for (std::size_t j = 0; j < r.spectrum.size(); ++j) {
        out << "  E" << j << " = " << format_number(r.spectrum.eigenvalues[j]) << "  "
            << beltrami::to_string(r.spectrum.classifications[j].state) << '\n';
    }
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        switch (cfg.command) {
        case Command::geometry: {
            const auto t = geometry_table(cfg.surface(cfg.radii.front()));
            out << emit_table(t, cfg, cfg.echo()) << '\n';
            return exit_code::success;
        }
        case Command::potential: {
            const auto t = potential_table(cfg.surface(cfg.radii.front()), cfg.ells.front());
            out << emit_table(t, cfg, cfg.echo()) << '\n';
            return exit_code::success;
        }
        case Command::solve:
        case Command::sweep: {
            std::vector<std::pair<std::string, scenarios::ScenarioParameters>> jobs;
            for (int ell : cfg.ells) {
                for (double R : cfg.radii) {
                    jobs.emplace_back(scenarios::scenario_id(R, ell), cfg.scenario(R, ell));
                }
            }
            auto results = scenarios::run_all(jobs);
            for (auto& r : results) {
                emit_result(r, cfg);
                print_spectrum(r, out);
            }
            return exit_code::success;
        }
        case Command::validate: {
            scenarios::ValidationOptions opt;
            opt.n = cfg.n;
            opt.tol = cfg.tol;
            const auto rep = scenarios::run_validation(opt);
            emit_claims("validation", rep.checks, cfg, out);
            out << (rep.all_passed() ? "validation passed\n" : "validation FAILED\n");
            return rep.all_passed() ? exit_code::success : exit_code::validation_failed;
        }
        case Command::reproduce: {
            if (cfg.figure == "fig5" || cfg.figure == "fig6") {
                const bool r_sweep = cfg.figure == "fig5";
                const scenarios::ParameterOverride tweak = [&](scenarios::ScenarioParameters& p) {
                    p.surface.hbar = cfg.hbar;
                    p.surface.mass_star = cfg.mass;
                    p.n = cfg.n;
                    p.mode = cfg.mode;
                    p.k = cfg.k;
                    p.tol = cfg.tol;
                    if (cfg.u_max) {
                        p.u_max = *cfg.u_max;
                    }
                };
                auto results = r_sweep ? scenarios::run_r_sweep({1.0, 10.0, 20.0}, {0}, tweak)
                                       : scenarios::run_l_sweep(1.0, {0, 5, 10}, tweak);
                for (auto& r : results) {
                    emit_result(r, cfg);
                    print_spectrum(r, out);
                }
                const auto claims =
                    r_sweep ? scenarios::assess_r_ladder(results) : scenarios::assess_l_structure(results);
                emit_claims(cfg.figure + "_claims", claims, cfg, out);
                return exit_code::success;
            }
            const auto e = scenarios::export_profiles(cfg.figure);
            for (const auto& t : e.tables) {
                out << emit_table(t, cfg, cfg.echo()) << '\n';
            }
            if (!e.well_widths.empty()) {
                ProfileTable widths;
                widths.name = cfg.figure + "_well_width";
                widths.u = {1.0, 5.0, 10.0}; // the first column holds R here
                widths.labels = {"well_width"};
                widths.columns = {e.well_widths};
                widths.metadata = {{"column_u", "R"}, {"reference_depth", format_number(scenarios::well_reference_depth)},
                                   {"potential", "Vbar_eff"}};
                out << emit_table(widths, cfg, cfg.echo()) << '\n';
                for (std::size_t i = 0; i < e.well_widths.size(); ++i) {
                    out << "well width at R=" << format_number(widths.u[i]) << ": " << format_number(e.well_widths[i])
                        << '\n';
                }
            }
            return exit_code::success;
        }
        }
    } catch (const invalid_parameter& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
    return exit_code::success;
}

} // namespace beltrami::cli
