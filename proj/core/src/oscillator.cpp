#include "waveobs/oscillator.hpp"

#include <Eigen/Dense>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace waveobs {

OscillatorPropagator::OscillatorPropagator(OscillatorMode mode, Direction direction, double omega, double gamma2,
                                           double dt)
    : mode_(mode), sigma_(sign_of(direction)), gamma2_(gamma2), dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("OscillatorPropagator: dt must be positive");
    const double damping = mode == OscillatorMode::Observer ? gamma2 : 0.0;
    Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
    a(0, 0) = -damping;
    a(0, 1) = sigma_;
    a(1, 0) = -sigma_ * omega * omega;
    a(2, 0) = 1.0;
    const Eigen::Matrix3d e = (a * dt).exp();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) exp_[3 * r + c] = e(r, c);
}

std::array<double, 3> OscillatorPropagator::forcing(double trace, double y) const {
    const double inject = mode_ == OscillatorMode::Observer ? gamma2_ * y : 0.0;
    return {inject, sigma_ * trace, 0.0};
}

OscillatorState OscillatorPropagator::step(const OscillatorState& z, double trace_now, double trace_next,
                                           double y_now, double y_next) const {
    const auto b0 = forcing(trace_now, y_now);
    const auto b1 = forcing(trace_next, y_next);
    const double half = 0.5 * dt_;
    // w = z + dt/2 b0, then z_next = E w + dt/2 b1
    const std::array<double, 3> w{z.z1 + half * b0[0], z.z2 + half * b0[1], z.z3 + half * b0[2]};
    std::array<double, 3> out{};
    for (int r = 0; r < 3; ++r)
        out[r] = exp_[3 * r] * w[0] + exp_[3 * r + 1] * w[1] + exp_[3 * r + 2] * w[2] + half * b1[r];
    return {out[0], out[1], out[2]};
}

OscillatorState oscillator_step(const OscillatorState& z, double trace_now, double trace_next, double y_now,
                                double y_next, double omega, double gamma2, double dt, OscillatorMode mode,
                                Direction direction) {
    return OscillatorPropagator(mode, direction, omega, gamma2, dt).step(z, trace_now, trace_next, y_now, y_next);
}

}  // namespace waveobs
