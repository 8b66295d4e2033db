#pragma once

#include <array>

#include "waveobs/wave_kernel.hpp"

namespace waveobs {

/// Boundary oscillator (z1, z2) plus the running integral z3 of z1.
struct OscillatorState {
    double z1 = 0.0;
    double z2 = 0.0;
    double z3 = 0.0;

    friend OscillatorState operator-(const OscillatorState& a, const OscillatorState& b) {
        return {a.z1 - b.z1, a.z2 - b.z2, a.z3 - b.z3};
    }
};

/// Plant: the cascade oscillator driven by the wave trace.
/// Observer: adds the -gamma2 (z1 - Y) output injection on the first channel.
enum class OscillatorMode { Plant, Observer };

/// One-step propagator for the oscillator over a fixed dt.
///
/// The homogeneous part (z1, z2, z3) is advanced with its exact matrix
/// exponential; the affine forcing (gamma2 Y, +-trace) enters through the
/// trapezoid rule on the variation-of-constants integral. On backward
/// half-passes the right-hand sides of the first two channels change sign.
class OscillatorPropagator {
public:
    OscillatorPropagator(OscillatorMode mode, Direction direction, double omega, double gamma2, double dt);

    OscillatorState step(const OscillatorState& z, double trace_now, double trace_next, double y_now,
                         double y_next) const;

    const std::array<double, 9>& matrix() const { return exp_; }

private:
    std::array<double, 3> forcing(double trace, double y) const;

    OscillatorMode mode_;
    double sigma_;
    double gamma2_;
    double dt_;
    std::array<double, 9> exp_{};  // row-major exp(A dt)
};

OscillatorState oscillator_step(const OscillatorState& z, double trace_now, double trace_next, double y_now,
                                double y_next, double omega, double gamma2, double dt, OscillatorMode mode,
                                Direction direction);

}  // namespace waveobs
