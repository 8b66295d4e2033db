#include "waveobs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "waveobs/wave_kernel.hpp"

namespace waveobs {

namespace {

double second_difference_sq(const ScalarField& f, const Grid1D& g) {
    const double inv = 1.0 / (g.dx * g.dx);
    double s = 0.0;
    for (int j = 1; j < g.nx; ++j) {
        const double d = (f[j + 1] - 2.0 * f[j] + f[j - 1]) * inv;
        s += d * d;
    }
    return s * g.dx;
}

double sq(double x) { return x * x; }

}  // namespace

bool DiagnosticsReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const DiagnosticEntry& e) { return e.pass; });
}

double lyapunov_value(const ScalarField& w1_err, const ScalarField& w2_err, const OscillatorState& z_err,
                      const Gains& gains, double omega, const Grid1D& g) {
    const double h1 = h1_seminorm(w1_err, g);
    const double l2 = l2_norm(w2_err, g);
    return 0.5 * (h1 * h1 + l2 * l2 + gains.gamma1 * omega * omega * sq(z_err.z1) + gains.gamma1 * sq(z_err.z2));
}

DiagnosticEntry lyapunov_decrease_check(std::span<const double> v_series, double tolerance) {
    if (v_series.size() < 2) throw std::invalid_argument("lyapunov_decrease_check: need at least 2 samples");
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < v_series.size(); ++k) worst = std::max(worst, v_series[k + 1] - v_series[k]);
    return {"lyapunov_decrease", worst, tolerance, worst <= tolerance, "dV/dt = -g1 g2 w^2 |Z1|^2 <= 0"};
}

double energy_bundle(const ErrorSample& s, const Gains& gains, double omega, const Grid1D& g) {
    const double w2 = omega * omega;
    const double h1 = h1_seminorm(s.w1, g);
    const double l2 = l2_norm(s.w2, g);
    return h1 * h1 + l2 * l2 + gains.gamma1 * sq(s.z.z2) + gains.gamma1 * w2 * sq(s.z.z1) +
           2.0 * gains.gamma1 * gains.gamma2 * w2 * s.z1_sq_integral;
}

std::vector<double> energy_identity_residuals(std::span<const ErrorSample> samples, const Gains& gains,
                                              double omega, const Grid1D& g) {
    if (samples.empty()) throw std::invalid_argument("energy_identity_residual: missing history");
    const double rhs = energy_bundle(samples.front(), gains, omega, g);
    const double denom = std::max(rhs, 1e-300);
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        const double lhs = energy_bundle(s, gains, omega, g);
        out.push_back(rhs == 0.0 && lhs == 0.0 ? 0.0 : std::abs(lhs - rhs) / denom);
    }
    return out;
}

double energy_identity_residual(std::span<const ErrorSample> samples, const Gains& gains, double omega,
                                const Grid1D& g) {
    const auto r = energy_identity_residuals(samples, gains, omega, g);
    return *std::max_element(r.begin(), r.end());
}

double second_energy_lhs(const ErrorSample& s, const Gains& gains, double omega, const Grid1D& g) {
    const double w2 = omega * omega;
    const double vt = second_difference_sq(s.w1, g);  // |v2_t| = |v1_xx|
    const double vx = sq(h1_seminorm(s.w2, g));
    const double trace = left_trace(s.w1.view(), g.dx);
    return 0.5 * (vt + vx + gains.gamma1 * w2 * w2 * sq(s.z.z1)) + 0.25 * gains.gamma1 * sq(trace) +
           0.5 * gains.gamma1 * gains.gamma2 * w2 * s.z2_sq_integral + gains.gamma1 * w2 * sq(s.z.z2);
}

double second_energy_initial_bundle(const ErrorSample& s, const Grid1D& g) {
    const double h2 = sq(l2_norm(s.w1, g)) + sq(h1_seminorm(s.w1, g)) + second_difference_sq(s.w1, g);
    const double h1 = sq(l2_norm(s.w2, g)) + sq(h1_seminorm(s.w2, g));
    return h2 + h1 + sq(s.z.z1) + sq(s.z.z2);
}

DiagnosticEntry second_energy_boundedness(std::span<const ErrorSample> samples, const Gains& gains, double omega,
                                          const Grid1D& g, double cap) {
    if (samples.empty()) throw std::invalid_argument("second_energy_boundedness: missing history");
    const double initial = second_energy_initial_bundle(samples.front(), g);
    double peak = 0.0;
    for (const auto& s : samples) peak = std::max(peak, second_energy_lhs(s, gains, omega, g));
    double ratio = 0.0;
    if (initial > 0.0) {
        ratio = peak / initial;
    } else if (peak > 0.0) {
        ratio = std::numeric_limits<double>::infinity();
    }
    return {"second_energy_bounded", ratio, cap, ratio <= cap, "second energy estimate, C(|q0|_H2 + |q1|_H1 + |xi0|)"};
}

DiagnosticEntry second_energy_trend(std::span<const ErrorSample> samples, const Gains& gains, double omega,
                                    const Grid1D& g) {
    if (samples.size() < 2) throw std::invalid_argument("second_energy_trend: need at least 2 samples");
    const double t0 = samples.front().t;
    const double span = samples.back().t - t0;
    double early = 0.0, late = 0.0;
    for (const auto& s : samples) {
        const double lhs = second_energy_lhs(s, gains, omega, g);
        if (s.t <= t0 + 0.25 * span) early = std::max(early, lhs);
        if (s.t >= t0 + 0.75 * span) late = std::max(late, lhs);
    }
    const double ratio = early > 0.0 ? late / early : (late > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    return {"second_energy_trend", ratio, 1.0, ratio <= 1.0, "late / early peak of the second energy bundle"};
}

double h1_time_norm_sq(const TimeSeries& f) {
    if (f.size() < 2) return 0.0;
    double deriv = 0.0;
    for (std::size_t n = 0; n + 1 < f.size(); ++n) deriv += sq((f[n + 1] - f[n]) / f.dt);
    return trapezoid_sq(f.values, f.dt) + deriv * f.dt;
}

double hidden_regularity_ratio(const TimeSeries& f, const ScalarField& q0, const ScalarField& q1,
                               const TimeSeries& trace, double T, const Grid1D& g) {
    const double num = trapezoid_sq(trace.values, trace.dt);
    const double den = 2.0 * (4.0 * T * T + 3.0) * h1_time_norm_sq(f) +
                       2.0 * (2.0 + T) * (sq(h1_seminorm(q0, g)) + sq(l2_norm(q1, g)));
    if (den == 0.0) {
        if (num == 0.0) return 0.0;
        throw std::domain_error("hidden_regularity_ratio: zero bound with a nonzero trace");
    }
    return num / den;
}

EquivalenceMetrics equivalence_metrics(const TimeSeries& y, const TimeSeries& Y) {
    if (y.size() != Y.size()) throw ShapeMismatch("equivalence_report: series lengths differ");
    std::vector<double> diff(y.size());
    for (std::size_t n = 0; n < y.size(); ++n) diff[n] = y[n] - Y[n];
    const double ymax = max_abs(y.values);
    const double yl2 = std::sqrt(trapezoid_sq(y.values, y.dt));
    EquivalenceMetrics m;
    const double dmax = max_abs(diff);
    const double dl2 = std::sqrt(trapezoid_sq(diff, y.dt));
    m.rel_max = ymax > 0.0 ? dmax / ymax : dmax;
    m.rel_l2 = yl2 > 0.0 ? dl2 / yl2 : dl2;
    return m;
}

DiagnosticEntry equivalence_report(const TimeSeries& y, const TimeSeries& Y, double tolerance) {
    const auto m = equivalence_metrics(y, Y);
    return {"output_equivalence", m.rel_max, tolerance, m.rel_max <= tolerance, "y = Y in H^2(0,T)"};
}

}  // namespace waveobs
