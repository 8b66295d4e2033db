#pragma once

#include <optional>
#include <string>
#include <vector>

#include "waveobs/diagnostics.hpp"
#include "waveobs/forward_model.hpp"
#include "waveobs/oscillator.hpp"
#include "waveobs/wave_kernel.hpp"

namespace waveobs {

// --- cascade system ----------------------------------------------------------

struct CascadeRun {
    TimeSeries Y;         // z1(t_n)
    TimeSeries w_trace;   // w_x(t_n, 0)
    LeapfrogState wave;   // final wave state
    OscillatorState osc;  // final oscillator state
};

/// Source-free wave from (q, 0) feeding the boundary oscillator, started at
/// z = (y(0), y'(0)) = (0, 0).
CascadeRun simulate_cascade(const ScalarField& q, double omega, const Grid1D& g);

// --- periodized measurement ----------------------------------------------------

/// The measurement on (0,T) read forward on even half-passes and reversed on
/// odd ones.
struct ExtendedMeasurement {
    MeasurementRecord base;

    int n_steps() const { return static_cast<int>(base.y.size()) - 1; }
};

/// Y on half-pass k at local step n: y(t_n) for even k, y(T - t_n) for odd k.
double extended_output(const ExtendedMeasurement& em, int half_pass, int step);

// --- observer ------------------------------------------------------------------

struct ObserverState {
    LeapfrogState wave;
    OscillatorState osc;
    double y_integral = 0.0;  // int_0^t Y over the extended signal
    int half_pass = 0;
    int step_in_pass = 0;

    Direction direction() const { return half_pass % 2 == 0 ? Direction::Forward : Direction::Backward; }
    bool at_pass_boundary() const { return step_in_pass == 0; }
};

/// Dirichlet value injected at x = 0.
double injection_value(const OscillatorState& z, double Y, double y_integral, const Gains& gains);

/// Stepping engine for the observer; caches the oscillator propagators.
class Observer {
public:
    Observer(const Grid1D& grid, const Gains& gains, double omega, double injection_sign = 1.0);

    /// Zero wave and oscillator; the boundary node carries the t = 0 injection value.
    ObserverState initial_state(const ExtendedMeasurement& em) const;

    /// One coupled step: trace, oscillator (trace held at its node value),
    /// output integral, boundary injection for the new node, wave step.
    /// Returns the trace used for the step.
    double step(ObserverState& s, const ExtendedMeasurement& em) const;

    void half_pass(ObserverState& s, const ExtendedMeasurement& em) const;

    const Grid1D& grid() const { return grid_; }
    const Gains& gains() const { return gains_; }

private:
    Grid1D grid_;
    Gains gains_;
    double omega_;
    double injection_sign_;
    OscillatorPropagator forward_;
    OscillatorPropagator backward_;
};

ObserverState observer_half_pass(ObserverState s, const ExtendedMeasurement& em, const Gains& gains, double omega,
                                 const Grid1D& g);

/// Observer wave displacement at a time 2kT with its endpoints pinned to 0.
/// Throws StateError mid-pass or at an odd half-pass boundary.
ScalarField extract_estimate(const ObserverState& s, const Grid1D& g);

// --- periodized plant ------------------------------------------------------------

struct PlantState {
    LeapfrogState wave;
    OscillatorState osc;
    int half_pass = 0;
    int step_in_pass = 0;
};

/// The true periodized cascade system, advanced with the same scheme as the observer.
class Plant {
public:
    Plant(const Grid1D& grid, double omega);
    PlantState initial_state(const ScalarField& q) const;
    void step(PlantState& s) const;

private:
    Grid1D grid_;
    OscillatorPropagator forward_;
    OscillatorPropagator backward_;
};

// --- back-and-forth iteration ----------------------------------------------------

struct IterationReport {
    int iteration = 0;
    std::optional<double> l2_err;
    std::optional<double> h1_err;
    std::optional<double> lyapunov;
    std::optional<double> energy_residual;
    double seconds = 0.0;
};

/// Boundary data of one observer half-pass, for the trace estimate.
struct PassTrace {
    int half_pass = 0;
    TimeSeries boundary;  // Dirichlet data at x = 0
    TimeSeries trace;     // observer trace at x = 0
    ScalarField q0;       // displacement at the start of the pass
    ScalarField q1;       // velocity at the start of the pass
};

struct RunOptions {
    int sample_stride = 100;        // error samples every this many steps (plus pass ends)
    bool record_pass_traces = false;
    double injection_sign = 1.0;    // -1 flips the injection (fault hook for diagnostics tests)
};

struct BackAndForthResult {
    std::vector<ScalarField> estimates;   // q_hat after 0..n iterations
    std::vector<IterationReport> reports;
    std::vector<double> lyapunov_half_pass;   // V at t = kT, k = 0..2n (truth only)
    std::vector<ErrorSample> samples;         // truth only
    std::vector<PassTrace> passes;
    std::vector<std::string> warnings;
};

/// Runs `n_iterations` forward/backward cycles starting from the zero
/// observer. With `q_true`, the periodized plant is advanced alongside to
/// form the error system.
BackAndForthResult run_back_and_forth(const MeasurementRecord& m, const Gains& gains, double omega,
                                      const Grid1D& g, int n_iterations,
                                      const std::optional<ScalarField>& q_true = std::nullopt,
                                      const RunOptions& options = {});

}  // namespace waveobs
