#include "waveobs/cascade_observer.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace waveobs {

CascadeRun simulate_cascade(const ScalarField& q, double omega, const Grid1D& g) {
    require_matches(q, g, "simulate_cascade q");
    const OscillatorPropagator prop(OscillatorMode::Plant, Direction::Forward, omega, 0.0, g.dt);

    CascadeRun run;
    run.wave = init_leapfrog(q, ScalarField::zeros(g), ScalarField{}, g, Direction::Forward);
    run.Y.dt = g.dt;
    run.w_trace.dt = g.dt;
    run.Y.values.reserve(static_cast<std::size_t>(g.n_steps) + 1);
    run.w_trace.values.reserve(static_cast<std::size_t>(g.n_steps) + 1);

    double trace = trace_left(run.wave, g);
    run.Y.values.push_back(run.osc.z1);
    run.w_trace.values.push_back(trace);
    for (int n = 0; n < g.n_steps; ++n) {
        advance(run.wave, 0.0, {}, g);
        const double next = trace_left(run.wave, g);
        run.osc = prop.step(run.osc, trace, next, 0.0, 0.0);
        trace = next;
        run.Y.values.push_back(run.osc.z1);
        run.w_trace.values.push_back(trace);
    }
    return run;
}

double extended_output(const ExtendedMeasurement& em, int half_pass, int step) {
    const int n_steps = em.n_steps();
    if (step < 0 || step > n_steps || half_pass < 0)
        throw std::out_of_range("extended_output: step " + std::to_string(step) + " outside [0, " +
                                std::to_string(n_steps) + "]");
    const int idx = half_pass % 2 == 0 ? step : n_steps - step;
    return em.base.y.values[static_cast<std::size_t>(idx)];
}

double injection_value(const OscillatorState& z, double Y, double y_integral, const Gains& gains) {
    return gains.gamma1 * (z.z1 - Y) + gains.gamma1 * gains.gamma2 * (z.z3 - y_integral);
}

Observer::Observer(const Grid1D& grid, const Gains& gains, double omega, double injection_sign)
    : grid_(grid),
      gains_(gains),
      omega_(omega),
      injection_sign_(injection_sign),
      forward_(OscillatorMode::Observer, Direction::Forward, omega, gains.gamma2, grid.dt),
      backward_(OscillatorMode::Observer, Direction::Backward, omega, gains.gamma2, grid.dt) {
    validate(gains);
}

ObserverState Observer::initial_state(const ExtendedMeasurement& em) const {
    if (em.n_steps() != grid_.n_steps) throw ShapeMismatch("observer: measurement length does not match the grid");
    const ScalarField zero = ScalarField::zeros(grid_);
    ObserverState s;
    s.wave = init_leapfrog(zero, zero, ScalarField{}, grid_, Direction::Forward);
    const double bc = injection_sign_ * injection_value(s.osc, extended_output(em, 0, 0), 0.0, gains_);
    s.wave.curr[0] = bc;
    s.wave.prev[0] = bc;
    return s;
}

double Observer::step(ObserverState& s, const ExtendedMeasurement& em) const {
    if (em.n_steps() != grid_.n_steps) throw ShapeMismatch("observer: measurement length does not match the grid");
    const Direction dir = s.direction();
    if (s.step_in_pass == 0 && s.wave.direction != dir) reverse(s.wave, grid_);

    const int k = s.half_pass;
    const int n = s.step_in_pass;
    const double trace = trace_left(s.wave, grid_);
    const double y_now = extended_output(em, k, n);
    const double y_next = extended_output(em, k, n + 1);

    const auto& prop = dir == Direction::Forward ? forward_ : backward_;
    s.osc = prop.step(s.osc, trace, trace, y_now, y_next);
    s.y_integral += 0.5 * grid_.dt * (y_now + y_next);

    const double bc = injection_sign_ * injection_value(s.osc, y_next, s.y_integral, gains_);
    advance(s.wave, bc, {}, grid_);

    if (++s.step_in_pass == grid_.n_steps) {
        s.step_in_pass = 0;
        ++s.half_pass;
    }
    return trace;
}

void Observer::half_pass(ObserverState& s, const ExtendedMeasurement& em) const {
    if (!s.at_pass_boundary()) throw StateError("half_pass: state is mid-pass");
    for (int n = 0; n < grid_.n_steps; ++n) step(s, em);
}

ObserverState observer_half_pass(ObserverState s, const ExtendedMeasurement& em, const Gains& gains, double omega,
                                 const Grid1D& g) {
    Observer(g, gains, omega).half_pass(s, em);
    return s;
}

ScalarField extract_estimate(const ObserverState& s, const Grid1D& g) {
    if (!s.at_pass_boundary() || s.half_pass % 2 != 0)
        throw StateError("extract_estimate: state is not at a time 2kT");
    ScalarField q = s.wave.curr;
    require_matches(q, g, "extract_estimate");
    q[0] = 0.0;
    q[g.nx] = 0.0;
    return q;
}

Plant::Plant(const Grid1D& grid, double omega)
    : grid_(grid),
      forward_(OscillatorMode::Plant, Direction::Forward, omega, 0.0, grid.dt),
      backward_(OscillatorMode::Plant, Direction::Backward, omega, 0.0, grid.dt) {}

PlantState Plant::initial_state(const ScalarField& q) const {
    PlantState p;
    p.wave = init_leapfrog(q, ScalarField::zeros(grid_), ScalarField{}, grid_, Direction::Forward);
    return p;
}

void Plant::step(PlantState& p) const {
    const Direction dir = p.half_pass % 2 == 0 ? Direction::Forward : Direction::Backward;
    if (p.step_in_pass == 0 && p.wave.direction != dir) reverse(p.wave, grid_);
    const double trace = trace_left(p.wave, grid_);
    const auto& prop = dir == Direction::Forward ? forward_ : backward_;
    p.osc = prop.step(p.osc, trace, trace, 0.0, 0.0);
    advance(p.wave, 0.0, {}, grid_);
    if (++p.step_in_pass == grid_.n_steps) {
        p.step_in_pass = 0;
        ++p.half_pass;
    }
}

namespace {

ErrorSample make_sample(double t, int half_pass, const ObserverState& s, const PlantState& p, double i1, double i2,
                        const Grid1D& g) {
    ErrorSample e;
    e.t = t;
    e.half_pass = half_pass;
    e.w1 = s.wave.curr - p.wave.curr;
    e.w2 = current_velocity(s.wave, g) - current_velocity(p.wave, g);
    e.z = s.osc - p.osc;
    e.z1_sq_integral = i1;
    e.z2_sq_integral = i2;
    return e;
}

}  // namespace

BackAndForthResult run_back_and_forth(const MeasurementRecord& m, const Gains& gains, double omega,
                                      const Grid1D& g, int n_iterations, const std::optional<ScalarField>& q_true,
                                      const RunOptions& options) {
    validate(gains);
    if (n_iterations < 1) throw std::invalid_argument("run_back_and_forth: n_iterations must be >= 1");
    if (m.y.size() != static_cast<std::size_t>(g.n_steps) + 1)
        throw ShapeMismatch("run_back_and_forth: measurement has " + std::to_string(m.y.size()) +
                            " samples, grid needs " + std::to_string(g.n_steps + 1));
    if (std::abs(m.y.dt - g.dt) > 1e-9 * g.dt) throw ShapeMismatch("run_back_and_forth: measurement dt differs from grid dt");
    if (q_true) require_matches(*q_true, g, "q_true");
    if (options.sample_stride < 1) throw std::invalid_argument("run_back_and_forth: sample_stride must be >= 1");

    const auto t_start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count(); };

    BackAndForthResult out;
    if (g.T < 2.0)
        out.warnings.push_back("horizon T = " + std::to_string(g.T) +
                               " is below the minimal observation time 2; convergence is not guaranteed");

    const ExtendedMeasurement em{m};
    const Observer observer(g, gains, omega, options.injection_sign);
    ObserverState s = observer.initial_state(em);

    const bool monitor = q_true.has_value();
    const Plant plant(g, omega);
    PlantState p;
    double i1 = 0.0, i2 = 0.0;
    OscillatorState z_prev{};
    double rhs = 0.0;
    if (monitor) {
        p = plant.initial_state(*q_true);
        out.samples.push_back(make_sample(0.0, 0, s, p, 0.0, 0.0, g));
        z_prev = out.samples.back().z;
        rhs = energy_bundle(out.samples.back(), gains, omega, g);
        out.lyapunov_half_pass.push_back(
            lyapunov_value(out.samples.back().w1, out.samples.back().w2, z_prev, gains, omega, g));
    }

    auto report_for = [&](int iteration, const ScalarField& q_hat) {
        IterationReport r;
        r.iteration = iteration;
        if (monitor) {
            const ScalarField err = q_hat - *q_true;
            r.l2_err = l2_norm(err, g);
            r.h1_err = h1_seminorm(err, g);
            const ErrorSample& last = out.samples.back();
            r.lyapunov = out.lyapunov_half_pass.back();
            const double lhs = energy_bundle(last, gains, omega, g);
            r.energy_residual = rhs > 0.0 ? std::abs(lhs - rhs) / rhs : std::abs(lhs - rhs);
        }
        r.seconds = elapsed();
        return r;
    };

    out.estimates.push_back(extract_estimate(s, g));
    out.reports.push_back(report_for(0, out.estimates.back()));

    const int n_half = 2 * n_iterations;
    const int N = g.n_steps;
    for (int hp = 0; hp < n_half; ++hp) {
        PassTrace pass;
        if (options.record_pass_traces) {
            pass.half_pass = hp;
            pass.q0 = s.wave.curr;
            pass.q1 = current_velocity(s.wave, g);
            pass.boundary.dt = pass.trace.dt = g.dt;
            pass.boundary.values.reserve(static_cast<std::size_t>(N) + 1);
            pass.trace.values.reserve(static_cast<std::size_t>(N) + 1);
            pass.boundary.values.push_back(s.wave.curr[0]);
        }
        for (int n = 0; n < N; ++n) {
            const double trace = observer.step(s, em);
            if (options.record_pass_traces) {
                pass.trace.values.push_back(trace);
                pass.boundary.values.push_back(s.wave.curr[0]);
            }
            if (!monitor) continue;
            plant.step(p);
            const OscillatorState z = s.osc - p.osc;
            i1 += 0.5 * g.dt * (z_prev.z1 * z_prev.z1 + z.z1 * z.z1);
            i2 += 0.5 * g.dt * (z_prev.z2 * z_prev.z2 + z.z2 * z.z2);
            z_prev = z;
            if ((n + 1) % options.sample_stride == 0 || n + 1 == N) {
                const double t = (static_cast<double>(hp) * N + (n + 1)) * g.dt;
                out.samples.push_back(make_sample(t, hp, s, p, i1, i2, g));
            }
        }
        if (options.record_pass_traces) {
            pass.trace.values.push_back(trace_left(s.wave, g));
            out.passes.push_back(std::move(pass));
        }
        if (monitor) {
            const ErrorSample& last = out.samples.back();
            out.lyapunov_half_pass.push_back(lyapunov_value(last.w1, last.w2, last.z, gains, omega, g));
        }
        if (hp % 2 == 1) {
            out.estimates.push_back(extract_estimate(s, g));
            out.reports.push_back(report_for((hp + 1) / 2, out.estimates.back()));
        }
    }
    return out;
}

}  // namespace waveobs
