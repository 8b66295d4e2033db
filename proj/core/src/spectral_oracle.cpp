#include "waveobs/spectral_oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace waveobs {

using std::numbers::pi;

namespace {

// sin(w tau) / w
double kernel_s(double w, double tau) {
    const double x = w * tau;
    if (std::abs(x) < 1e-4) return tau * (1.0 - x * x / 6.0);
    return std::sin(x) / w;
}

// (1 - cos(w tau)) / w^2
double kernel_c(double w, double tau) {
    const double x = w * tau;
    if (std::abs(x) < 1e-4) return 0.5 * tau * tau * (1.0 - x * x / 12.0);
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s / (w * w);
}

std::vector<double> simpson_weights(std::size_t n_intervals, double h) {
    std::vector<double> w(n_intervals + 1, 0.0);
    if (n_intervals == 0) return w;
    if (n_intervals == 1) {
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    std::size_t simpson_end = n_intervals;
    if (n_intervals % 2 == 1) {
        // 3/8 rule on the last three intervals
        simpson_end = n_intervals - 3;
        const double c = 3.0 * h / 8.0;
        w[simpson_end] += c;
        w[simpson_end + 1] += 3.0 * c;
        w[simpson_end + 2] += 3.0 * c;
        w[simpson_end + 3] += c;
    }
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    return w;
}

void check_resonance(std::size_t n_modes, double omega) {
    for (std::size_t k = 1; k <= n_modes; ++k) {
        if (std::abs(std::abs(omega) - static_cast<double>(k) * pi) < kResonanceTolerance)
            throw ResonanceError("forcing frequency resonates with mode " + std::to_string(k));
    }
}

}  // namespace

ModeVector ModeVector::unit(int k, int n_modes) {
    if (k < 1 || k > n_modes) throw std::invalid_argument("ModeVector::unit: mode index out of range");
    std::vector<double> c(static_cast<std::size_t>(n_modes), 0.0);
    c[static_cast<std::size_t>(k - 1)] = 1.0;
    return ModeVector(std::move(c));
}

ModeVector sine_coefficients(const ScalarField& f, const Grid1D& g, int n_modes) {
    require_matches(f, g, "sine_coefficients");
    if (n_modes < 1) throw std::invalid_argument("sine_coefficients: n_modes must be >= 1");
    if (n_modes > g.nx) throw std::invalid_argument("sine_coefficients: n_modes > nx aliases");
    std::vector<double> c(static_cast<std::size_t>(n_modes), 0.0);
    for (int k = 1; k <= n_modes; ++k) {
        // endpoint samples of f sin(k pi x) vanish
        double s = 0.0;
        for (int j = 1; j < g.nx; ++j) s += f[j] * std::sin(k * pi * g.x(j));
        c[static_cast<std::size_t>(k - 1)] = 2.0 * g.dx * s;
    }
    return ModeVector(std::move(c));
}

ModeVector profile_coefficients(const SourceProfile& profile, int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("profile_coefficients: n_modes must be >= 1");
    std::vector<double> c(static_cast<std::size_t>(n_modes), 0.0);
    switch (profile.kind) {
        case SourceProfile::Kind::Polynomial:
            for (int k = 1; k <= n_modes; k += 2) c[static_cast<std::size_t>(k - 1)] = 8.0 / std::pow(k * pi, 3);
            break;
        case SourceProfile::Kind::SineMode:
            if (profile.k <= n_modes) c[static_cast<std::size_t>(profile.k - 1)] = 1.0;
            break;
        case SourceProfile::Kind::Coefficients:
            for (std::size_t m = 0; m < profile.coeffs.size() && m < c.size(); ++m) c[m] = profile.coeffs[m];
            break;
    }
    return ModeVector(std::move(c));
}

ScalarField synthesize(const ModeVector& a, const Grid1D& g) {
    ScalarField f = ScalarField::zeros(g);
    for (int j = 1; j < g.nx; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::sin(static_cast<double>(k + 1) * pi * g.x(j));
        f[j] = s;
    }
    return f;
}

ModeVector free_modal_solution(const ModeVector& q, double t) {
    std::vector<double> c(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) c[k] = q[k] * std::cos(static_cast<double>(k + 1) * pi * t);
    return ModeVector(std::move(c));
}

ModalState forced_modal_solution(const ModeVector& q, double omega, double t) {
    check_resonance(q.size(), omega);
    ModalState s;
    s.position.coefficients.resize(q.size());
    s.velocity.coefficients.resize(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double kp = static_cast<double>(i + 1) * pi;
        const double denom = kp * kp - omega * omega;
        s.position.coefficients[i] = q[i] * (std::cos(omega * t) - std::cos(kp * t)) / denom;
        s.velocity.coefficients[i] = q[i] * (-omega * std::sin(omega * t) + kp * std::sin(kp * t)) / denom;
    }
    return s;
}

double neumann_trace_series(const ModeVector& a) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * static_cast<double>(k + 1) * pi;
    return s;
}

TimeSeries oracle_measurement(const ModeVector& q, double omega, double dt, std::size_t n_samples) {
    check_resonance(q.size(), omega);
    TimeSeries y;
    y.dt = dt;
    y.values.resize(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        const double t = static_cast<double>(n) * dt;
        double s = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double kp = static_cast<double>(i + 1) * pi;
            s += q[i] * kp * (std::cos(omega * t) - std::cos(kp * t)) / (kp * kp - omega * omega);
        }
        y.values[n] = s;
    }
    return y;
}

OscillatorState oscillator_closed_form(double omega, const TimeSeries& forcing, const OscillatorState& z0,
                                       double t) {
    if (forcing.size() < 2) throw std::invalid_argument("oscillator_closed_form: need at least two forcing samples");
    if (std::abs(forcing.duration() - t) > 1e-9 * std::max(1.0, t))
        throw std::invalid_argument("oscillator_closed_form: forcing samples must cover [0, t]");

    const std::size_t n = forcing.size() - 1;
    const auto w = simpson_weights(n, forcing.dt);
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double tau = t - static_cast<double>(i) * forcing.dt;
        const double gi = forcing[i] * w[i];
        c1 += kernel_s(omega, tau) * gi;
        c2 += std::cos(omega * tau) * gi;
        c3 += kernel_c(omega, tau) * gi;
    }
    OscillatorState z;
    z.z1 = std::cos(omega * t) * z0.z1 + kernel_s(omega, t) * z0.z2 + c1;
    z.z2 = -omega * std::sin(omega * t) * z0.z1 + std::cos(omega * t) * z0.z2 + c2;
    z.z3 = z0.z3 + kernel_s(omega, t) * z0.z1 + kernel_c(omega, t) * z0.z2 + c3;
    return z;
}

TimeSeries sample_function(const std::function<double(double)>& fn, double t, int n) {
    if (n < 1) throw std::invalid_argument("sample_function: need n >= 1");
    TimeSeries s;
    s.dt = t / n;
    s.values.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) s.values[static_cast<std::size_t>(i)] = fn(i * s.dt);
    return s;
}

}  // namespace waveobs
