#pragma once

#include <cstdint>
#include <optional>

#include "waveobs/grid.hpp"

namespace waveobs {

enum class Provenance { Clean, Noisy };

/// Sampled boundary output y(t_n) = u_x(t_n, 0) of the forced wave equation.
struct MeasurementRecord {
    TimeSeries y;
    double omega = 0.0;
    double T = 0.0;
    double noise_level = 0.0;
    std::optional<std::uint64_t> noise_seed;
    Provenance provenance = Provenance::Clean;
};

/// Solves u_tt - u_xx = q(x) cos(omega t) from rest with homogeneous
/// Dirichlet data and records the left Neumann trace at every time node.
MeasurementRecord simulate_forward(const ScalarField& q, double omega, const Grid1D& g);

/// Root mean square (sum y^2 dt / T)^{1/2}.
double rms(const TimeSeries& y);

/// Adds white Gaussian noise of standard deviation level * rms(y). The
/// generator is created per call from `seed`, so equal inputs give equal output.
MeasurementRecord add_noise(const MeasurementRecord& m, double level, std::uint64_t seed);

}  // namespace waveobs
