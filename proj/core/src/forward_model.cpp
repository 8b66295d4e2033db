#include "waveobs/forward_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "waveobs/wave_kernel.hpp"

namespace waveobs {

MeasurementRecord simulate_forward(const ScalarField& q, double omega, const Grid1D& g) {
    require_matches(q, g, "simulate_forward q");

    MeasurementRecord m;
    m.omega = omega;
    m.T = g.T;
    m.y.dt = g.dt;
    m.y.values.reserve(static_cast<std::size_t>(g.n_steps) + 1);

    const ScalarField zero = ScalarField::zeros(g);
    LeapfrogState s = init_leapfrog(zero, zero, q, g, Direction::Forward);
    m.y.values.push_back(trace_left(s, g));

    ScalarField f = ScalarField::zeros(g);
    for (int n = 0; n < g.n_steps; ++n) {
        const double c = std::cos(omega * g.t(n));
        for (int j = 0; j < g.nodes(); ++j) f[j] = q[j] * c;
        advance(s, 0.0, f.view(), g);
        m.y.values.push_back(trace_left(s, g));
    }
    return m;
}

double rms(const TimeSeries& y) {
    const double T = y.duration();
    if (!(T > 0.0)) return 0.0;
    double s = 0.0;
    for (double v : y.values) s += v * v * y.dt;
    return std::sqrt(s / T);
}

MeasurementRecord add_noise(const MeasurementRecord& m, double level, std::uint64_t seed) {
    if (!(level >= 0.0)) throw std::invalid_argument("add_noise: level must be >= 0");
    if (level == 0.0) return m;
    MeasurementRecord out = m;
    out.noise_level = level;
    out.noise_seed = seed;
    out.provenance = Provenance::Noisy;

    const double sigma = level * rms(m.y);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& v : out.y.values) v += sigma * normal(rng);
    return out;
}

}  // namespace waveobs
