#pragma once

#include <span>
#include <string>
#include <vector>

#include "waveobs/grid.hpp"
#include "waveobs/oscillator.hpp"

namespace waveobs {

/// One named numeric check.
struct DiagnosticEntry {
    std::string check;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string anchor;  // the identity or estimate the check mirrors
};

struct DiagnosticsReport {
    std::vector<DiagnosticEntry> entries;
    std::vector<std::string> notes;

    bool all_pass() const;
    void add(DiagnosticEntry e) { entries.push_back(std::move(e)); }
};

/// State of the error system (observer minus plant) at one time node.
struct ErrorSample {
    double t = 0.0;
    int half_pass = 0;
    ScalarField w1;            // displacement error
    ScalarField w2;            // velocity error
    OscillatorState z;
    double z1_sq_integral = 0.0;  // int_0^t z1^2
    double z2_sq_integral = 0.0;  // int_0^t z2^2
};

/// V = 1/2 (|w1_x|^2 + |w2|^2 + gamma1 omega^2 z1^2 + gamma1 z2^2).
double lyapunov_value(const ScalarField& w1_err, const ScalarField& w2_err, const OscillatorState& z_err,
                      const Gains& gains, double omega, const Grid1D& g);

/// Passes iff V[k+1] <= V[k] + tolerance for every k.
DiagnosticEntry lyapunov_decrease_check(std::span<const double> v_series, double tolerance);

/// Conserved bundle |w1_x|^2 + |w2|^2 + gamma1 z2^2 + gamma1 omega^2 z1^2 + 2 gamma1 gamma2 omega^2 int z1^2.
double energy_bundle(const ErrorSample& s, const Gains& gains, double omega, const Grid1D& g);

/// Largest |bundle(t) - bundle(0)| / bundle(0) over the samples; the first
/// sample is taken as t = 0.
double energy_identity_residual(std::span<const ErrorSample> samples, const Gains& gains, double omega,
                                const Grid1D& g);

/// Per-sample residual series, same convention as `energy_identity_residual`.
std::vector<double> energy_identity_residuals(std::span<const ErrorSample> samples, const Gains& gains,
                                              double omega, const Grid1D& g);

/// Left-hand side of the second-order energy estimate at one sample:
/// 1/2(|w1_xx|^2 + |w2_x|^2 + gamma1 omega^4 z1^2) + 1/4 gamma1 w1_x(t,0)^2
/// + 1/2 gamma1 gamma2 omega^2 int z2^2 + gamma1 omega^2 z2^2.
double second_energy_lhs(const ErrorSample& s, const Gains& gains, double omega, const Grid1D& g);

/// |q0|^2_{H^2} + |q1|^2_{H^1} + z1(0)^2 + z2(0)^2 for the first sample.
double second_energy_initial_bundle(const ErrorSample& s, const Grid1D& g);

/// Ratio max_t LHS / initial bundle; passes iff the ratio stays <= cap.
DiagnosticEntry second_energy_boundedness(std::span<const ErrorSample> samples, const Gains& gains, double omega,
                                          const Grid1D& g, double cap);

/// Growth-trend check for the same bundle: the largest LHS over the final
/// quarter of the sampled time span divided by the largest LHS over the first
/// quarter. A bounded, non-growing history gives a value <= 1.
DiagnosticEntry second_energy_trend(std::span<const ErrorSample> samples, const Gains& gains, double omega,
                                    const Grid1D& g);

/// ||f||_{H^1(0,T)}^2 as the L2 part plus the difference-quotient derivative part.
double h1_time_norm_sq(const TimeSeries& f);

/// ||trace||^2_{L2(0,T)} / [2(4T^2+3)||f||^2_{H1} + 2(2+T)(|q0_x|^2 + |q1|^2)].
/// Returns 0 for an all-zero case; throws std::domain_error on 0 denominator
/// with a nonzero trace.
double hidden_regularity_ratio(const TimeSeries& f, const ScalarField& q0, const ScalarField& q1,
                               const TimeSeries& trace, double T, const Grid1D& g);

struct EquivalenceMetrics {
    double rel_max = 0.0;
    double rel_l2 = 0.0;
};

EquivalenceMetrics equivalence_metrics(const TimeSeries& y, const TimeSeries& Y);

/// Relative max-norm discrepancy between the measured output and the cascade output.
DiagnosticEntry equivalence_report(const TimeSeries& y, const TimeSeries& Y, double tolerance);

}  // namespace waveobs
