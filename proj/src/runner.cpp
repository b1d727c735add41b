#include "ilw/runner.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ilw/diagnostics.hpp"
#include "ilw/evolution.hpp"
#include "ilw/inequality.hpp"
#include "ilw/io.hpp"
#include "ilw/soliton.hpp"
#include "ilw/weights.hpp"

namespace ilw {

namespace {

constexpr const char* code_version = "ilw 1.0.0";

std::string wall_time_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path make_run_dir(const ExperimentConfig& config) {
    std::filesystem::path dir =
        std::filesystem::path(config.output.directory) / ("run-" + config_content_hash(config));
    std::filesystem::create_directories(dir);
    return dir;
}

// Shared manifest assembly: inventory every file in the run directory except
// the manifest itself, then write the manifest atomically at the very end.
void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& config,
                    const std::string& started, bool completed,
                    const std::vector<std::string>& warnings) {
    nlohmann::json j;
    j["version"] = code_version;
    j["config"] = emit_config(config);
    j["started_at"] = started;
    j["finished_at"] = wall_time_utc();
    j["completed"] = completed;
    j["warnings"] = warnings;
    j["clamped_omega_prime_evaluations"] = clamped_omega_prime_count();
    nlohmann::json files = nlohmann::json::object();
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().filename() != "manifest.json")
            paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths)
        files[p.filename().string()] = {{"bytes", std::filesystem::file_size(p)},
                                        {"fnv1a", file_checksum(p)}};
    j["files"] = files;
    write_file_atomic(dir / "manifest.json", j.dump(2) + "\n");
}

RealField initial_condition(const ExperimentConfig& config, GridPtr grid) {
    if (config.initial.kind == "gaussian") {
        RealField u(grid);
        for (int i = 0; i < grid->n_points; ++i) {
            double x = (grid->nodes[i] - config.initial.center) / config.initial.width;
            u.samples[i] = config.initial.amplitude * std::exp(-x * x);
        }
        return u;
    }
    if (config.initial.kind == "soliton") {
        SolitonSpec spec{config.model, config.initial.soliton_speed, grid};
        SolitonResult r = petviashvili_solve(spec);
        if (!r.converged)
            throw std::runtime_error("soliton profile iteration did not converge");
        int shift = static_cast<int>(std::lround(config.initial.center / grid->spacing));
        RealField u(grid);
        const int n = grid->n_points;
        for (int i = 0; i < n; ++i)
            u.samples[(i + shift % n + n) % n] = r.profile.samples[i];
        return u;
    }
    return read_field_binary(config.initial.path, grid, 0.0);
}

std::vector<DiagnosticsRow> diagnostics_rows(const ExperimentConfig& config,
                                             const Trajectory& traj) {
    WeightFamily weights;
    std::vector<DiagnosticsRow> rows;
    rows.reserve(traj.checkpoints.size());
    for (std::size_t i = 0; i < traj.checkpoints.size(); ++i)
        rows.push_back(diagnostics_row(config.model, config.diagnostics, weights,
                                       traj.checkpoints[i], traj.times[i]));
    return rows;
}

EvolutionConfig evolution_config(const ExperimentConfig& config, GridPtr grid) {
    EvolutionConfig ec;
    ec.params = config.model;
    ec.grid = grid;
    ec.dt = config.dt;
    ec.t_end = config.t_end;
    ec.integrator = config.integrator;
    ec.checkpoint_stride = config.checkpoint_stride;
    return ec;
}

}  // namespace

RunOutcome run_simulate(const ExperimentConfig& config) {
    RunOutcome outcome;
    const std::string started = wall_time_utc();
    outcome.run_dir = make_run_dir(config);
    write_file_atomic(outcome.run_dir / "config.ini", emit_config(config));

    GridPtr grid = build_grid(config.grid_n_points, config.grid_length);
    std::vector<std::string> warnings;
    try {
        RealField u0 = initial_condition(config, grid);
        Trajectory traj = evolve(evolution_config(config, grid), u0);
        warnings = traj.warnings;

        std::vector<CheckpointEntry> index;
        for (std::size_t i = 0; i < traj.checkpoints.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "checkpoint_%06zu.bin", i);
            write_field_binary(outcome.run_dir / name, traj.checkpoints[i]);
            index.push_back({name, traj.times[i]});
        }
        write_checkpoint_index(outcome.run_dir / "checkpoints.json", grid->n_points,
                               grid->length, index);
        write_diagnostics_csv(outcome.run_dir / "diagnostics.csv",
                              diagnostics_rows(config, traj));
    } catch (const std::runtime_error& e) {
        warnings.push_back(std::string("numerical abort: ") + e.what());
        write_manifest(outcome.run_dir, config, started, false, warnings);
        outcome.exit_code = exit_numerical_abort;
        outcome.messages = warnings;
        return outcome;
    }
    write_manifest(outcome.run_dir, config, started, true, warnings);
    outcome.messages.push_back("simulate: " + outcome.run_dir.string());
    return outcome;
}

RunOutcome run_soliton(const ExperimentConfig& config) {
    RunOutcome outcome;
    const std::string started = wall_time_utc();
    outcome.run_dir = make_run_dir(config);
    write_file_atomic(outcome.run_dir / "config.ini", emit_config(config));

    GridPtr grid = build_grid(config.grid_n_points, config.grid_length);
    SolitonSpec spec{config.model, config.initial.soliton_speed, grid};
    SolitonResult result = petviashvili_solve(spec);

    nlohmann::json report;
    report["speed"] = spec.speed;
    report["delta"] = config.model.delta;
    report["residual_norm"] = result.residual_norm;
    report["iterations"] = result.iterations;
    report["converged"] = result.converged;

    std::vector<std::string> warnings;
    if (result.converged) {
        write_field_binary(outcome.run_dir / "profile.bin", result.profile);
        PropagationReport prop = propagation_error(result, spec, config.t_end, config.dt);
        warnings = prop.warnings;
        report["shape_error"] = prop.shape_error;
        report["fitted_speed"] = prop.fitted_speed;
    } else {
        warnings.push_back("petviashvili iteration did not converge");
    }
    write_file_atomic(outcome.run_dir / "soliton.json", report.dump(2) + "\n");
    write_manifest(outcome.run_dir, config, started, result.converged, warnings);
    outcome.exit_code = result.converged ? exit_ok : exit_numerical_abort;
    outcome.messages.push_back("soliton residual " + format_scientific(result.residual_norm));
    return outcome;
}

RunOutcome run_limits(const ExperimentConfig& config) {
    RunOutcome outcome;
    const std::string started = wall_time_utc();
    outcome.run_dir = make_run_dir(config);
    write_file_atomic(outcome.run_dir / "config.ini", emit_config(config));

    GridPtr grid = build_grid(config.grid_n_points, config.grid_length);
    RealField u0 = initial_condition(config, grid);
    const double u0_norm = l2_norm(u0);

    std::string csv = "regime,delta,gap\n";
    std::vector<std::string> warnings;
    try {
        // deep water: ILW(delta) against Benjamin-Ono at t = 1
        EvolutionConfig ec = evolution_config(config, grid);
        ec.t_end = 1.0;
        ec.checkpoint_stride = 1 << 30;  // final state only
        Trajectory bo = evolve_bo(ec, u0);
        for (double delta : {5.0, 20.0, 50.0}) {
            ec.params.delta = delta;
            Trajectory ilw = evolve(ec, u0);
            double gap_sq = 0.0;
            for (int i = 0; i < grid->n_points; ++i) {
                double d = ilw.checkpoints.back().samples[i] - bo.checkpoints.back().samples[i];
                gap_sq += d * d;
            }
            double gap = std::sqrt(gap_sq * grid->spacing) / u0_norm;
            csv += "deep," + format_scientific(delta) + "," + format_scientific(gap) + "\n";
        }

        // shallow water: rescaled ILW(delta) against KdV at rescaled t = 1
        EvolutionConfig kc = evolution_config(config, grid);
        kc.t_end = 1.0;
        kc.checkpoint_stride = 1 << 30;
        Trajectory kdv = evolve_kdv(kc, u0);
        const double v_norm = u0_norm;
        for (double delta : {0.1, 0.3}) {
            EvolutionConfig ic = evolution_config(config, grid);
            ic.params.delta = delta;
            ic.t_end = 3.0 / delta;  // maps to rescaled time 1
            ic.checkpoint_stride = 1 << 30;
            RealField w0(grid);
            for (int i = 0; i < grid->n_points; ++i)
                w0.samples[i] = delta / 3.0 * u0.samples[i];
            Trajectory ilw = evolve(ic, w0);
            Trajectory rescaled = kdv_rescale(ilw, delta);
            double gap_sq = 0.0;
            for (int i = 0; i < grid->n_points; ++i) {
                double d =
                    rescaled.checkpoints.back().samples[i] - kdv.checkpoints.back().samples[i];
                gap_sq += d * d;
            }
            double gap = std::sqrt(gap_sq * grid->spacing) / v_norm;
            csv += "shallow," + format_scientific(delta) + "," + format_scientific(gap) + "\n";
        }
    } catch (const std::runtime_error& e) {
        warnings.push_back(std::string("numerical abort: ") + e.what());
        write_manifest(outcome.run_dir, config, started, false, warnings);
        outcome.exit_code = exit_numerical_abort;
        outcome.messages = warnings;
        return outcome;
    }
    write_file_atomic(outcome.run_dir / "limits.csv", csv);
    write_manifest(outcome.run_dir, config, started, true, warnings);
    outcome.messages.push_back("limits: " + outcome.run_dir.string());
    return outcome;
}

RunOutcome run_inequalities(const ExperimentConfig& config) {
    RunOutcome outcome;
    const std::string started = wall_time_utc();
    outcome.run_dir = make_run_dir(config);
    write_file_atomic(outcome.run_dir / "config.ini", emit_config(config));

    GridPtr grid = build_grid(config.grid_n_points, config.grid_length);
    TestBattery battery = make_battery(config.seed, grid);

    std::vector<RatioReport> reports;
    reports.push_back(check_interpolation(battery, 1.0, 1.0, 0.5));
    reports.push_back(check_interpolation_full(battery, 1.0, 0.5, 0.25, 1.5, 0.5));
    reports.push_back(check_gns(battery));
    for (double s : {0.5, 1.0, 1.5}) {
        reports.push_back(check_kato_ponce(battery, s));
        reports.push_back(check_leibniz(battery, s));
    }
    RatioReport expansion;
    expansion.check = "commutator_expansion";
    for (const auto& c : battery.functions) {
        CommutatorExpansionResult r =
            check_commutator_expansion(family_J(0.5), battery.weights[2].f, c.f, 2);
        for (const auto& cs : r.report.cases) {
            expansion.cases.push_back({c.name, cs.lhs, cs.rhs, cs.ratio});
            expansion.max_ratio = std::max(expansion.max_ratio, cs.ratio);
        }
    }
    reports.push_back(expansion);

    write_ratio_reports_csv(outcome.run_dir / "inequality_reports.csv", reports);
    write_manifest(outcome.run_dir, config, started, true, {});
    outcome.messages.push_back("check-inequalities: " + outcome.run_dir.string());
    return outcome;
}

RunOutcome run_diagnose(const ExperimentConfig& config) {
    RunOutcome outcome;
    outcome.run_dir = std::filesystem::path(config.output.directory) /
                      ("run-" + config_content_hash(config));
    int n_points = 0;
    double length = 0.0;
    std::vector<CheckpointEntry> index =
        read_checkpoint_index(outcome.run_dir / "checkpoints.json", n_points, length);
    GridPtr grid = build_grid(n_points, length);

    WeightFamily weights;
    std::vector<DiagnosticsRow> rows;
    for (const auto& entry : index) {
        RealField u = read_field_binary(outcome.run_dir / entry.file, grid, entry.time);
        rows.push_back(
            diagnostics_row(config.model, config.diagnostics, weights, u, entry.time));
    }
    write_diagnostics_csv(outcome.run_dir / "diagnose.csv", rows);
    outcome.messages.push_back("diagnose: " + (outcome.run_dir / "diagnose.csv").string());
    return outcome;
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Pseudospectral simulator and verification toolkit for the "
                 "intermediate long wave equation"};
    app.require_subcommand(1);
    app.allow_extras();

    std::string config_path;
    app.add_option("--config", config_path, "INI configuration file");
    std::string seed_flag, threads_flag, output_flag;
    app.add_option("--seed", seed_flag, "override run.seed");
    app.add_option("--threads", threads_flag, "override run.threads");
    app.add_option("--output", output_flag, "override output.directory");

    CLI::App* simulate = app.add_subcommand("simulate", "evolve and record diagnostics");
    CLI::App* soliton = app.add_subcommand("soliton", "traveling-wave forge and check");
    CLI::App* limits = app.add_subcommand("limits", "deep and shallow water comparisons");
    CLI::App* inequalities =
        app.add_subcommand("check-inequalities", "operator-inequality batteries");
    CLI::App* diagnose = app.add_subcommand("diagnose", "recompute diagnostics of a run");
    for (CLI::App* sub : {simulate, soliton, limits, inequalities, diagnose}) {
        sub->allow_extras();
        sub->fallthrough();  // route --seed/--threads/--output etc. to the parent
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_config_error;
    }

    std::vector<std::string> overrides;
    std::vector<std::string> extras = app.remaining();
    CLI::App* sub = app.get_subcommands().front();
    for (const std::string& extra : sub->remaining()) extras.push_back(extra);
    static const std::regex key_value("--([A-Za-z_]+\\.[A-Za-z_]+)=(.*)");
    for (const std::string& extra : extras) {
        std::smatch m;
        if (!std::regex_match(extra, m, key_value)) {
            std::cerr << "unrecognized argument: " << extra << "\n";
            return exit_config_error;
        }
        overrides.push_back(m[1].str() + "=" + m[2].str());
    }
    if (!seed_flag.empty()) overrides.push_back("run.seed=" + seed_flag);
    if (!threads_flag.empty()) overrides.push_back("run.threads=" + threads_flag);
    if (!output_flag.empty()) overrides.push_back("output.directory=" + output_flag);

    std::string text;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read config file " << config_path << "\n";
            return exit_io_error;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }

    ExperimentConfig config;
    try {
        config = parse_config(text, overrides);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return exit_config_error;
    }

    RunOutcome outcome;
    try {
        if (sub == simulate)
            outcome = run_simulate(config);
        else if (sub == soliton)
            outcome = run_soliton(config);
        else if (sub == limits)
            outcome = run_limits(config);
        else if (sub == inequalities)
            outcome = run_inequalities(config);
        else
            outcome = run_diagnose(config);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_io_error;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_io_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical_abort;
    }
    for (const auto& m : outcome.messages) std::cout << m << "\n";
    return outcome.exit_code;
}

}  // namespace ilw
