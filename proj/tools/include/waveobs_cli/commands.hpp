#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace waveobs::cli {

struct CommandOptions {
    std::optional<std::filesystem::path> config;       // defaults when absent
    std::filesystem::path out = "waveobs_out";
    std::optional<std::uint64_t> seed;                 // overrides the config seed
    std::optional<std::filesystem::path> measurement;  // invert only
    std::optional<std::vector<std::string>> checks;    // verify only; nullopt = all
    int jobs = 1;
    bool quiet = false;
    bool timing = false;        // fill the seconds column of iterations.csv
    bool inject_fault = false;  // verify only: flip the injection sign
};

/// Each command returns a process exit code (see errors.hpp) and reports
/// failures on stderr. Config problems are detected before anything is written.
int cmd_simulate(const CommandOptions& opt);
int cmd_invert(const CommandOptions& opt);
int cmd_verify(const CommandOptions& opt);
int cmd_full(const CommandOptions& opt);

/// Parses argv and dispatches; usage errors give exit code 2.
int run_cli(int argc, char** argv);

}  // namespace waveobs::cli
