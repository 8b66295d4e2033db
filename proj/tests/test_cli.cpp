#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "waveobs_cli/battery.hpp"
#include "waveobs_cli/commands.hpp"
#include "waveobs_cli/config.hpp"
#include "waveobs_cli/csv.hpp"
#include "waveobs_cli/errors.hpp"

using namespace waveobs;
using namespace waveobs::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("waveobs_test_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& s) const { return path_ / s; }

private:
    fs::path path_;
};

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t line_count(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "waveobs");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

// A coarse scenario that runs in well under a second.
const char* kSmall = R"({"source": {"profile": "poly_paper"}, "cfl": 0.05, "iterations": 3, "noise": 0.1, "seed": 7})";

}  // namespace

TEST_CASE("config: defaults and overrides") {
    const auto d = parse_config("{}");
    CHECK(d.omega == 1.0);
    CHECK(d.T == 3.0);
    CHECK(d.nx == 20);
    CHECK(d.cfl == 0.005);
    CHECK(d.gains.gamma1 == 1.0);
    CHECK(d.gains.gamma2 == 0.5);
    CHECK(d.iterations == 50);
    CHECK(d.noise == 0.0);
    CHECK(d.seed == 42u);
    CHECK(d.snapshot_stride == 1);
    CHECK_FALSE(d.has_source);

    const auto c = parse_config(R"({"source": {"profile": "sine_k", "k": 3}, "omega": 0, "nx": 40, "seed": 9})");
    CHECK(c.has_source);
    CHECK(c.source.kind == SourceProfile::Kind::SineMode);
    CHECK(c.source.k == 3);
    CHECK(c.omega == 0.0);
    CHECK(c.nx == 40);
    CHECK(c.seed == 9u);

    const auto k = parse_config(R"({"source": {"coeffs": [0.5, 0, 1]}})");
    CHECK(k.source.kind == SourceProfile::Kind::Coefficients);
    CHECK(k.source.coeffs.size() == 3u);
}

TEST_CASE("config: round trip through json") {
    const auto c = parse_config(R"({"source": {"profile": "sine_k", "k": 2}, "T": 2.5, "gamma1": 2, "noise": 0.05})");
    const auto back = parse_config(config_to_json(c).dump());
    CHECK(back.T == c.T);
    CHECK(back.gains.gamma1 == c.gains.gamma1);
    CHECK(back.noise == c.noise);
    CHECK(back.source.k == 2);
}

TEST_CASE("config: rejections") {
    for (const char* bad : {"not json", "[]", R"({"nx": "20"})", R"({"nx": 2.5})", R"({"bogus": 1})",
                            R"({"cfl": 1.5})", R"({"nx": 2})", R"({"iterations": 0})", R"({"noise": -1})",
                            R"({"gamma1": 0})", R"({"seed": -3})", R"({"source": {"profile": "gauss"}})",
                            R"({"source": {"profile": "sine_k", "k": 0}})", R"({"source": {"extra": 1}})",
                            R"({"snapshot_stride": 0})", R"({"T": -1})"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_config(bad), ConfigError);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/waveobs.json"), IoError);
}

TEST_CASE("csv: series round trip is bit exact") {
    TempDir dir;
    TimeSeries y;
    y.dt = 2.5e-4;
    for (int n = 0; n <= 1000; ++n) y.values.push_back(std::sin(0.1 * n) / 3.0 + 1e-300 * n);
    write_series(dir / "m.csv", y);
    const auto back = read_series(dir / "m.csv");
    CHECK(back.values == y.values);
    CHECK(back.dt == doctest::Approx(y.dt).epsilon(1e-15));
    CHECK(read_text(dir / "m.csv").rfind("t,y\n", 0) == 0);
}

TEST_CASE("csv: malformed series") {
    TempDir dir;
    const std::vector<std::string> bad{"", "x,y\n0,1\n0.1,2\n", "t,y\n0,1\n", "t,y\n0,1\n0.1,abc\n",
                                       "t,y\n0,1,2\n0.1,2\n", "t,y\n0,1\n0.1,2\n0.25,3\n", "t,y\n0.1,1\n0.2,2\n"};
    for (std::size_t i = 0; i < bad.size(); ++i) {
        const auto p = dir / ("bad" + std::to_string(i) + ".csv");
        write_text(p, bad[i]);
        CAPTURE(bad[i]);
        CHECK_THROWS_AS(read_series(p), DataMismatch);
    }
    CHECK_THROWS_AS(read_series(dir / "missing.csv"), IoError);
}

TEST_CASE("csv: check and iteration tables") {
    TempDir dir;
    const std::vector<DiagnosticEntry> e{{"alpha", 0.5, 1.0, true, ""}, {"beta", 2.0, 1.0, false, ""}};
    write_checks(dir / "c.csv", e);
    CHECK(read_text(dir / "c.csv") == "check,value,threshold,pass\nalpha,0.5,1,true\nbeta,2,1,false\n");

    IterationReport r0;
    r0.iteration = 0;
    IterationReport r1;
    r1.iteration = 1;
    r1.l2_err = 0.25;
    r1.lyapunov = 1.5;
    r1.seconds = 3.0;
    const std::vector<IterationReport> reps{r0, r1};
    write_iterations(dir / "i.csv", reps, false);
    CHECK(read_text(dir / "i.csv") == "iter,l2_err,h1_err,lyapunov,energy_residual,seconds\n0,,,,,\n1,0.25,,1.5,,\n");
    write_iterations(dir / "t.csv", reps, true);
    CHECK(read_text(dir / "t.csv").find("1,0.25,,1.5,,3\n") != std::string::npos);
    write_lyapunov(dir / "v.csv", reps);
    CHECK(read_text(dir / "v.csv") == "iter,V\n1,1.5\n");
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("simulate: experiment grid gives 12001 samples") {
    TempDir dir;
    write_text(dir / "c.json", R"({"source": {"profile": "poly_paper"}})");
    CHECK(run({"simulate", "--config", (dir / "c.json").string(), "--out", (dir / "o").string(), "--quiet"}) == kOk);
    CHECK(line_count(dir / "o" / "measurement.csv") == 12002u);
    CHECK_FALSE(fs::exists(dir / "o" / "measurement_noisy.csv"));
    const auto manifest = nlohmann::json::parse(read_text(dir / "o" / "manifest.json"));
    CHECK(manifest["command"] == "simulate");
    CHECK(manifest["seed"] == 42);
    CHECK(manifest["config"]["nx"] == 20);
}

TEST_CASE("exit codes") {
    TempDir dir;
    write_text(dir / "small.json", kSmall);
    write_text(dir / "bad.json", R"({"nx": "many"})");
    const std::string small = (dir / "small.json").string();

    SUBCASE("usage errors") {
        CHECK(run({}) == kConfigError);
        CHECK(run({"frobnicate"}) == kConfigError);
        CHECK(run({"simulate", "--bogus"}) == kConfigError);
        CHECK(run({"invert", "--config", small}) == kConfigError);
        CHECK(run({"verify", "--jobs", "0", "--checks", "", "--out", (dir / "j").string(), "--quiet"}) ==
              kConfigError);
    }
    SUBCASE("config error writes nothing") {
        CHECK(run({"simulate", "--config", (dir / "bad.json").string(), "--out", (dir / "x").string()}) ==
              kConfigError);
        CHECK_FALSE(fs::exists(dir / "x"));
        CHECK(run({"verify", "--checks", "no_such_check", "--out", (dir / "y").string()}) == kConfigError);
        CHECK_FALSE(fs::exists(dir / "y"));
    }
    SUBCASE("I/O errors") {
        CHECK(run({"simulate", "--config", (dir / "missing.json").string(), "--out", (dir / "x").string()}) ==
              kIoError);
        write_text(dir / "file", "occupied");
        CHECK(run({"simulate", "--config", small, "--out", (dir / "file" / "sub").string(), "--quiet"}) == kIoError);
        CHECK(run({"invert", "--config", small, "--measurement", (dir / "none.csv").string(), "--out",
                   (dir / "x").string()}) == kIoError);
    }
    SUBCASE("data mismatch") {
        CHECK(run({"simulate", "--config", small, "--out", (dir / "s").string(), "--quiet"}) == kOk);
        // a measurement from another grid
        write_text(dir / "other.json", R"({"cfl": 0.1})");
        CHECK(run({"invert", "--config", (dir / "other.json").string(), "--measurement",
                   (dir / "s" / "measurement.csv").string(), "--out", (dir / "i").string()}) == kDataMismatch);
        write_text(dir / "garbage.csv", "t,y\n0,1\n0.1,oops\n");
        CHECK(run({"invert", "--config", small, "--measurement", (dir / "garbage.csv").string(), "--out",
                   (dir / "i").string()}) == kDataMismatch);
    }
    SUBCASE("verify pass, empty selection and fault injection") {
        CHECK(run({"verify", "--checks", "trace_ratio_analytic,kernel_round_trip", "--out", (dir / "v").string(),
                   "--quiet"}) == kOk);
        CHECK(line_count(dir / "v" / "verify.csv") == 3u);
        CHECK(run({"verify", "--checks", "", "--out", (dir / "e").string(), "--quiet"}) == kOk);
        CHECK(read_text(dir / "e" / "verify.csv") == "check,value,threshold,pass\n");
        CHECK(run({"verify", "--checks", "lyapunov_decrease", "--inject-fault", "--out", (dir / "f").string(),
                   "--quiet"}) == kCheckFailed);
        CHECK(read_text(dir / "f" / "verify.csv").find("lyapunov_decrease") != std::string::npos);
        CHECK(read_text(dir / "f" / "verify.csv").find("false") != std::string::npos);
    }
    SUBCASE("help and version") {
        CHECK(run({"--help"}) == kOk);
        CHECK(run({"--version"}) == kOk);
        CHECK(run({"verify", "--list"}) == kOk);
    }
}

TEST_CASE("invert: round trip through the measurement file") {
    TempDir dir;
    write_text(dir / "small.json", kSmall);
    const std::string small = (dir / "small.json").string();
    REQUIRE(run({"simulate", "--config", small, "--out", (dir / "s").string(), "--quiet"}) == kOk);
    REQUIRE(run({"invert", "--config", small, "--measurement", (dir / "s" / "measurement.csv").string(), "--out",
                 (dir / "i").string(), "--quiet"}) == kOk);
    for (const char* f : {"iterations.csv", "estimate_iter_0.csv", "estimate_iter_3.csv", "estimate_final.csv",
                          "diagnostics.csv", "manifest.json"})
        CHECK(fs::exists(dir / "i" / f));
    CHECK(line_count(dir / "i" / "iterations.csv") == 5u);
    CHECK(read_text(dir / "i" / "estimate_final.csv").rfind("x,q_hat,q_true\n", 0) == 0);

    // the file route reproduces the in-memory run bit for bit
    const auto cfg = parse_config(kSmall);
    const auto g = cfg.grid();
    const auto q = eval_source_profile(cfg.source, g);
    const auto direct = run_back_and_forth(simulate_forward(q, cfg.omega, g), cfg.gains, cfg.omega, g, cfg.iterations);
    TempDir ref;
    write_estimate(ref / "e.csv", g, direct.estimates.back(), q);
    CHECK(read_text(ref / "e.csv") == read_text(dir / "i" / "estimate_final.csv"));

    // without a named source there is no truth and no diagnostics
    write_text(dir / "blind.json", R"({"cfl": 0.05, "iterations": 2})");
    REQUIRE(run({"invert", "--config", (dir / "blind.json").string(), "--measurement",
                 (dir / "s" / "measurement.csv").string(), "--out", (dir / "b").string(), "--quiet"}) == kOk);
    CHECK_FALSE(fs::exists(dir / "b" / "diagnostics.csv"));
    CHECK(read_text(dir / "b" / "estimate_final.csv").rfind("x,q_hat\n", 0) == 0);
}

TEST_CASE("full: snapshot stride and artifact set") {
    TempDir dir;
    write_text(dir / "c.json", R"({"source": {"profile": "poly_paper"}, "cfl": 0.05, "iterations": 5, "snapshot_stride": 2})");
    REQUIRE(run({"full", "--config", (dir / "c.json").string(), "--out", (dir / "o").string(), "--quiet"}) == kOk);
    for (int k : {0, 2, 4, 5}) CHECK(fs::exists(dir / "o" / ("estimate_iter_" + std::to_string(k) + ".csv")));
    for (int k : {1, 3}) CHECK_FALSE(fs::exists(dir / "o" / ("estimate_iter_" + std::to_string(k) + ".csv")));
    CHECK(fs::exists(dir / "o" / "lyapunov.csv"));
    CHECK(line_count(dir / "o" / "lyapunov.csv") == 7u);
    const auto manifest = nlohmann::json::parse(read_text(dir / "o" / "manifest.json"));
    for (const auto& f : manifest["outputs"]) CHECK(fs::exists(dir / "o" / f.get<std::string>()));
}

TEST_CASE("full: identical config and seed give identical CSV files") {
    TempDir dir;
    write_text(dir / "c.json", kSmall);
    const std::string c = (dir / "c.json").string();
    REQUIRE(run({"full", "--config", c, "--out", (dir / "a").string(), "--quiet"}) == kOk);
    REQUIRE(run({"full", "--config", c, "--out", (dir / "b").string(), "--quiet", "--jobs", "2"}) == kOk);
    REQUIRE(run({"full", "--config", c, "--out", (dir / "s").string(), "--quiet", "--seed", "8"}) == kOk);
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        if (entry.path().extension() != ".csv") continue;
        CAPTURE(entry.path().filename().string());
        CHECK(read_text(entry.path()) == read_text(dir / "b" / entry.path().filename()));
        ++compared;
    }
    CHECK(compared >= 8u);
    CHECK(read_text(dir / "a" / "measurement_noisy.csv") != read_text(dir / "s" / "measurement_noisy.csv"));
    CHECK(read_text(dir / "a" / "measurement.csv") == read_text(dir / "s" / "measurement.csv"));
}

TEST_CASE("battery: names and selection") {
    const auto& names = battery_check_names();
    CHECK(names.size() == 15u);
    CHECK_THROWS_AS(run_battery(std::vector<std::string>{"nope"}, {}), ConfigError);
    const auto some = run_battery(std::vector<std::string>{"kernel_round_trip", "trace_ratio_analytic"}, {});
    REQUIRE(some.size() == 2u);
    CHECK(some[0].check == "trace_ratio_analytic");
    CHECK(some[1].check == "kernel_round_trip");
    CHECK(run_battery(std::vector<std::string>{}, {}).empty());
}
