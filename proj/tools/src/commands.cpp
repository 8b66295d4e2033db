#include "waveobs_cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "waveobs/cascade_observer.hpp"
#include "waveobs/version.hpp"
#include "waveobs_cli/battery.hpp"
#include "waveobs_cli/config.hpp"
#include "waveobs_cli/csv.hpp"
#include "waveobs_cli/errors.hpp"

namespace waveobs::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Log {
public:
    explicit Log(bool quiet) : quiet_(quiet) {}
    template <typename... Args>
    void operator()(const char* fmt, Args... args) const {
        if (quiet_) return;
        if constexpr (sizeof...(Args) == 0)
            std::fputs(fmt, stdout);
        else
            std::printf(fmt, args...);
        std::fflush(stdout);
    }

private:
    bool quiet_;
};

ScenarioConfig resolve_config(const CommandOptions& opt) {
    ScenarioConfig cfg;
    if (opt.config) {
        cfg = load_config(*opt.config);
    } else {
        cfg.has_source = false;
    }
    if (opt.seed) cfg.seed = *opt.seed;
    cfg.out_dir = opt.out.string();
    return cfg;
}

void prepare_out(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

void write_manifest(const fs::path& dir, const std::string& command, const ScenarioConfig& cfg,
                    const CommandOptions& opt, const std::vector<std::string>& outputs) {
    json m;
    m["tool"] = "waveobs";
    m["version"] = kVersion;
    m["command"] = command;
    m["started_utc"] = utc_now();
    m["config"] = config_to_json(cfg);
    m["seed"] = cfg.seed;
    json inputs = json::object();
    if (opt.config) inputs["config"] = opt.config->string();
    if (opt.measurement) inputs["measurement"] = opt.measurement->string();
    m["inputs"] = inputs;
    m["outputs"] = outputs;
    std::ofstream out(dir / "manifest.json");
    out << m.dump(2) << '\n';
    if (!out) throw IoError("failed writing " + (dir / "manifest.json").string());
}

int guarded(const char* command, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "waveobs " << command << ": config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError& e) {
        std::cerr << "waveobs " << command << ": I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "waveobs " << command << ": I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const DataMismatch& e) {
        std::cerr << "waveobs " << command << ": data mismatch: " << e.what() << '\n';
        return kDataMismatch;
    } catch (const ShapeMismatch& e) {
        std::cerr << "waveobs " << command << ": data mismatch: " << e.what() << '\n';
        return kDataMismatch;
    } catch (const std::exception& e) {
        std::cerr << "waveobs " << command << ": " << e.what() << '\n';
        return kCheckFailed;
    }
}

std::vector<int> snapshot_iterations(const ScenarioConfig& cfg) {
    std::vector<int> ks;
    for (int k = 0; k <= cfg.iterations; ++k)
        if (k % cfg.snapshot_stride == 0 || k == cfg.iterations) ks.push_back(k);
    return ks;
}

std::string snapshot_name(int k) { return "estimate_iter_" + std::to_string(k) + ".csv"; }

std::vector<std::string> inversion_outputs(const ScenarioConfig& cfg, bool truth) {
    std::vector<std::string> out{"iterations.csv"};
    for (int k : snapshot_iterations(cfg)) out.push_back(snapshot_name(k));
    out.push_back("estimate_final.csv");
    if (truth) out.push_back("diagnostics.csv");
    return out;
}

MeasurementRecord clean_record(const TimeSeries& y, const ScenarioConfig& cfg) {
    MeasurementRecord m;
    m.y = y;
    m.omega = cfg.omega;
    m.T = cfg.T;
    return m;
}

// Writes iterations, snapshots and the final estimate; returns the run.
BackAndForthResult invert_and_write(const MeasurementRecord& m, const ScenarioConfig& cfg, const Grid1D& g,
                                    const std::optional<ScalarField>& q_true, const CommandOptions& opt,
                                    const Log& log) {
    RunOptions ro;
    ro.record_pass_traces = q_true.has_value();
    log("inverting: %d iterations, %d steps per pass\n", cfg.iterations, g.n_steps);
    auto result = run_back_and_forth(m, cfg.gains, cfg.omega, g, cfg.iterations, q_true, ro);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

    write_iterations(opt.out / "iterations.csv", result.reports, opt.timing);
    for (int k : snapshot_iterations(cfg))
        write_estimate(opt.out / snapshot_name(k), g, result.estimates[static_cast<std::size_t>(k)], q_true);
    write_estimate(opt.out / "estimate_final.csv", g, result.estimates.back(), q_true);

    const auto& last = result.reports.back();
    if (last.l2_err && q_true) {
        const double qn = l2_norm(*q_true, g);
        log("final relative L2 error %.4g\n", qn > 0.0 ? *last.l2_err / qn : *last.l2_err);
    }
    return result;
}

void write_diagnostics(const fs::path& path, const std::vector<DiagnosticEntry>& entries, const Log& log) {
    write_checks(path, entries);
    for (const auto& e : entries)
        log("  %-28s %-4s %.4g (threshold %.4g)\n", e.check.c_str(), e.pass ? "ok" : "FAIL", e.value, e.threshold);
}

std::vector<std::string> split_checks(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int cmd_simulate(const CommandOptions& opt) {
    return guarded("simulate", [&] {
        const Log log(opt.quiet);
        const ScenarioConfig cfg = resolve_config(opt);
        const Grid1D g = cfg.grid();
        std::vector<std::string> outputs{"measurement.csv"};
        if (cfg.noise > 0.0) outputs.push_back("measurement_noisy.csv");
        prepare_out(opt.out);
        write_manifest(opt.out, "simulate", cfg, opt, outputs);

        log("simulating %s, omega %g, T %g, nx %d, %d steps\n", cfg.source.name().c_str(), cfg.omega, cfg.T, cfg.nx,
            g.n_steps);
        const auto m = simulate_forward(eval_source_profile(cfg.source, g), cfg.omega, g);
        write_series(opt.out / "measurement.csv", m.y);
        if (cfg.noise > 0.0) write_series(opt.out / "measurement_noisy.csv", add_noise(m, cfg.noise, cfg.seed).y);
        return kOk;
    });
}

int cmd_invert(const CommandOptions& opt) {
    return guarded("invert", [&] {
        const Log log(opt.quiet);
        if (!opt.measurement) throw ConfigError("invert needs --measurement");
        const ScenarioConfig cfg = resolve_config(opt);
        const Grid1D g = cfg.grid();
        const TimeSeries y = read_series(*opt.measurement);
        if (y.size() != static_cast<std::size_t>(g.n_steps) + 1)
            throw DataMismatch("measurement has " + std::to_string(y.size()) + " samples, the grid needs " +
                               std::to_string(g.n_steps + 1));
        if (std::abs(y.dt - g.dt) > 1e-9 * g.dt)
            throw DataMismatch("measurement dt " + format_double(y.dt) + " differs from grid dt " + format_double(g.dt));

        std::optional<ScalarField> q_true;
        if (cfg.has_source) q_true = eval_source_profile(cfg.source, g);
        prepare_out(opt.out);
        write_manifest(opt.out, "invert", cfg, opt, inversion_outputs(cfg, q_true.has_value()));

        auto result = invert_and_write(clean_record(y, cfg), cfg, g, q_true, opt, log);
        if (q_true) {
            const ObserverStudy study{g, *q_true, std::move(result)};
            write_diagnostics(opt.out / "diagnostics.csv", observer_diagnostics(study, cfg), log);
        }
        return kOk;
    });
}

int cmd_verify(const CommandOptions& opt) {
    return guarded("verify", [&] {
        const Log log(opt.quiet);
        if (opt.jobs < 1) throw ConfigError("--jobs must be >= 1");
        BatteryOptions bo;
        bo.jobs = opt.jobs;
        bo.inject_fault = opt.inject_fault;
        // reject unknown names before touching the output directory
        if (opt.checks)
            for (const auto& c : *opt.checks)
                if (std::find(battery_check_names().begin(), battery_check_names().end(), c) ==
                    battery_check_names().end())
                    throw ConfigError("unknown check '" + c + "'");
        prepare_out(opt.out);
        ScenarioConfig cfg;
        write_manifest(opt.out, "verify", cfg, opt, {"verify.csv"});

        const auto entries = run_battery(opt.checks, bo);
        write_diagnostics(opt.out / "verify.csv", entries, log);
        const bool ok = std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
        log("%zu checks, %s\n", entries.size(), ok ? "all passed" : "FAILURES");
        return ok ? kOk : kCheckFailed;
    });
}

int cmd_full(const CommandOptions& opt) {
    return guarded("full", [&] {
        const Log log(opt.quiet);
        ScenarioConfig cfg = resolve_config(opt);
        cfg.has_source = true;
        const Grid1D g = cfg.grid();
        const ScalarField q = eval_source_profile(cfg.source, g);

        std::vector<std::string> outputs{"measurement.csv"};
        if (cfg.noise > 0.0) outputs.push_back("measurement_noisy.csv");
        for (auto& f : inversion_outputs(cfg, true)) outputs.push_back(f);
        outputs.push_back("lyapunov.csv");
        prepare_out(opt.out);
        write_manifest(opt.out, "full", cfg, opt, outputs);

        log("simulating %s, omega %g, T %g, nx %d, %d steps\n", cfg.source.name().c_str(), cfg.omega, cfg.T, cfg.nx,
            g.n_steps);
        const auto clean = simulate_forward(q, cfg.omega, g);
        write_series(opt.out / "measurement.csv", clean.y);
        MeasurementRecord data = clean;
        if (cfg.noise > 0.0) {
            data = add_noise(clean, cfg.noise, cfg.seed);
            write_series(opt.out / "measurement_noisy.csv", data.y);
        }

        auto result = invert_and_write(data, cfg, g, q, opt, log);
        write_lyapunov(opt.out / "lyapunov.csv", result.reports);

        // The error-system identities only hold for exact data, so with noise
        // the checks run on a second, clean inversion.
        std::vector<DiagnosticEntry> entries;
        if (cfg.noise > 0.0) {
            log("diagnostics on the clean measurement\n");
            entries = observer_diagnostics(run_observer_study(cfg), cfg);
        } else {
            entries = observer_diagnostics(ObserverStudy{g, q, std::move(result)}, cfg);
        }
        write_diagnostics(opt.out / "diagnostics.csv", entries, log);
        return kOk;
    });
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Source reconstruction for the 1D wave equation by back-and-forth boundary observers"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CommandOptions opt;
    std::string config, out = opt.out.string(), measurement, checks;
    std::uint64_t seed = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", out, "Output directory")->capture_default_str();
        sub->add_flag("--quiet", opt.quiet, "Suppress progress output");
        sub->add_option("--jobs", opt.jobs, "Parallel jobs (verify)")->capture_default_str();
    };
    auto scenario = [&](CLI::App* sub) {
        sub->add_option("--config", config, "JSON scenario file");
        sub->add_option("--seed", seed, "Noise seed, overrides the config");
    };

    auto* sim = app.add_subcommand("simulate", "Synthesize the boundary measurement");
    common(sim);
    scenario(sim);
    auto* inv = app.add_subcommand("invert", "Reconstruct the source from a measurement");
    common(inv);
    scenario(inv);
    inv->add_option("--measurement", measurement, "Measurement CSV (t,y)")->required();
    inv->add_flag("--timing", opt.timing, "Record wall-clock seconds per iteration");
    auto* ver = app.add_subcommand("verify", "Run the built-in diagnostics battery");
    common(ver);
    ver->add_option("--checks", checks, "Comma-separated check names (empty for none)");
    ver->add_flag("--inject-fault", opt.inject_fault, "Flip the injection sign (self-test of the battery)");
    ver->add_flag("--list", "List check names and exit");
    auto* full = app.add_subcommand("full", "Simulate, add noise, invert and check");
    common(full);
    scenario(full);
    full->add_flag("--timing", opt.timing, "Record wall-clock seconds per iteration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    opt.out = out;
    if (!config.empty()) opt.config = config;
    if (!measurement.empty()) opt.measurement = measurement;
    for (auto* sub : {sim, inv, full})
        if (sub->parsed() && sub->count("--seed")) opt.seed = seed;

    if (sim->parsed()) return cmd_simulate(opt);
    if (inv->parsed()) return cmd_invert(opt);
    if (full->parsed()) return cmd_full(opt);
    if (ver->count("--list")) {
        for (const auto& n : battery_check_names()) std::cout << n << '\n';
        return kOk;
    }
    if (ver->count("--checks")) opt.checks = split_checks(checks);
    return cmd_verify(opt);
}

}  // namespace waveobs::cli
