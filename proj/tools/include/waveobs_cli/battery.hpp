#pragma once

#include <optional>
#include <string>
#include <vector>

#include "waveobs/cascade_observer.hpp"
#include "waveobs/diagnostics.hpp"

namespace waveobs::cli {

/// Noiseless reconstruction with truth monitoring, the raw material of the
/// observer checks.
struct ObserverStudy {
    Grid1D grid;
    ScalarField q_true;
    BackAndForthResult result;
};

ObserverStudy run_observer_study(const ScenarioConfig& cfg, double injection_sign = 1.0);

/// Lyapunov decrease (tolerance 1e-3 V0), energy identity (1e-2), second
/// energy boundedness and trend, trace-ratio bound over all observer passes.
std::vector<DiagnosticEntry> observer_diagnostics(const ObserverStudy& study, const ScenarioConfig& cfg);

/// Largest trace ratio over the recorded observer passes.
double max_pass_trace_ratio(const ObserverStudy& study);

/// Relative max-norm error of the forward measurement and of the cascade
/// output against the spectral oracle, and their mutual discrepancy.
struct EquivalenceStudy {
    double forward_vs_oracle = 0.0;
    double cascade_vs_oracle = 0.0;
    double discrepancy = 0.0;
};

EquivalenceStudy run_equivalence_study(const SourceProfile& q, double omega, int nx, double cfl, double T);

/// Homogeneous leapfrog from q0 = sin(pi x): worst relative change of the
/// discrete energy over `n_steps`.
double kernel_energy_drift(int nx, double cfl, int n_steps);

/// Forward n steps, reverse, backward n steps; max abs deviation from the start field.
double kernel_round_trip_error(int nx, double cfl, int n_steps);

/// Max-norm field error of the homogeneous run against the modal solution at time t.
double kernel_oracle_error(int nx, double cfl, double t);

struct BatteryOptions {
    bool inject_fault = false;  // flips the sign of the observer injection
    int jobs = 1;
};

/// Every check name the battery knows, in output order.
const std::vector<std::string>& battery_check_names();

/// Runs the selected checks (all when `selection` is nullopt). Unknown names
/// raise ConfigError. Output order follows battery_check_names().
std::vector<DiagnosticEntry> run_battery(const std::optional<std::vector<std::string>>& selection,
                                         const BatteryOptions& options);

}  // namespace waveobs::cli
