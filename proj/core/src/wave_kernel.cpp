#include "waveobs/wave_kernel.hpp"

#include <utility>

namespace waveobs {

namespace {

void check_forcing(std::span<const double> f, const Grid1D& g) {
    if (!f.empty() && f.size() != static_cast<std::size_t>(g.nodes()))
        throw ShapeMismatch("forcing: expected " + std::to_string(g.nodes()) + " nodes");
}

// Writes the homogeneous look-ahead level 2 curr - prev + cfl^2 D2 curr into `out`.
void look_ahead(const LeapfrogState& s, const Grid1D& g, std::vector<double>& out) {
    const auto& u = s.curr.values;
    const auto& up = s.prev.values;
    const double c2 = g.cfl * g.cfl;
    out.assign(u.size(), 0.0);
    for (int j = 1; j < g.nx; ++j) out[j] = (2.0 * u[j] + c2 * (u[j + 1] - 2.0 * u[j] + u[j - 1])) - up[j];
    out[0] = 2.0 * u[0] - up[0];
    out[g.nx] = 0.0;
}

}  // namespace

LeapfrogState init_leapfrog(const ScalarField& q0, const ScalarField& v0, const ScalarField& f0, const Grid1D& g,
                            Direction direction) {
    require_matches(q0, g, "init_leapfrog q0");
    require_matches(v0, g, "init_leapfrog v0");
    check_forcing(f0.view(), g);

    const double sigma = sign_of(direction);
    const double dt = g.dt;
    const double inv_dx2 = 1.0 / (g.dx * g.dx);

    LeapfrogState s;
    s.direction = direction;
    s.curr = q0;
    s.prev = ScalarField::zeros(g);
    for (int j = 0; j < g.nodes(); ++j) {
        double accel = 0.0;
        if (j > 0 && j < g.nx) accel = (q0[j + 1] - 2.0 * q0[j] + q0[j - 1]) * inv_dx2;
        if (!f0.values.empty()) accel += f0[j];
        s.prev[j] = q0[j] - sigma * dt * v0[j] + 0.5 * dt * dt * accel;
    }
    s.prev[g.nx] = 0.0;
    return s;
}

void advance(LeapfrogState& s, double left_bc_next, std::span<const double> forcing, const Grid1D& g) {
    require_matches(s.curr, g, "advance");
    check_forcing(forcing, g);
    auto& u = s.curr.values;
    auto& up = s.prev.values;  // overwritten with the new level
    const double c2 = g.cfl * g.cfl;
    const double dt2 = g.dt * g.dt;
    // The sum is formed before `prev` is subtracted so that a reversed step
    // reproduces the same intermediate value.
    if (forcing.empty()) {
        for (int j = 1; j < g.nx; ++j) up[j] = (2.0 * u[j] + c2 * (u[j + 1] - 2.0 * u[j] + u[j - 1])) - up[j];
    } else {
        for (int j = 1; j < g.nx; ++j)
            up[j] = (2.0 * u[j] + c2 * (u[j + 1] - 2.0 * u[j] + u[j - 1]) + dt2 * forcing[j]) - up[j];
    }
    up[0] = left_bc_next;
    up[g.nx] = 0.0;
    std::swap(s.prev.values, s.curr.values);
    s.t_index += s.direction == Direction::Forward ? 1 : -1;
}

LeapfrogState step(const LeapfrogState& s, double left_bc_next, std::span<const double> forcing, const Grid1D& g) {
    LeapfrogState next = s;
    advance(next, left_bc_next, forcing, g);
    return next;
}

double left_trace(std::span<const double> u, double dx) {
    return (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
}

double trace_left(const LeapfrogState& s, const Grid1D& g) { return left_trace(s.curr.view(), g.dx); }

ScalarField velocity(const LeapfrogState& s, const LeapfrogState& s_next, const Grid1D& g) {
    const long expected = s.t_index + (s.direction == Direction::Forward ? 1 : -1);
    if (s_next.t_index != expected || s_next.direction != s.direction)
        throw StateError("velocity: s_next is not the step after s");
    require_matches(s.prev, g, "velocity");
    require_matches(s_next.curr, g, "velocity");
    const double scale = sign_of(s.direction) / (2.0 * g.dt);
    ScalarField v = ScalarField::zeros(g);
    for (int j = 0; j < g.nodes(); ++j) v[j] = scale * (s_next.curr[j] - s.prev[j]);
    return v;
}

ScalarField current_velocity(const LeapfrogState& s, const Grid1D& g) {
    require_matches(s.curr, g, "current_velocity");
    std::vector<double> ahead;
    look_ahead(s, g, ahead);
    const double scale = sign_of(s.direction) / (2.0 * g.dt);
    ScalarField v = ScalarField::zeros(g);
    for (int j = 0; j < g.nodes(); ++j) v[j] = scale * (ahead[j] - s.prev[j]);
    return v;
}

void reverse(LeapfrogState& s, const Grid1D& g) {
    require_matches(s.curr, g, "reverse");
    std::vector<double> ahead;
    look_ahead(s, g, ahead);
    s.prev.values = std::move(ahead);
    s.direction = flipped(s.direction);
}

double discrete_energy(const LeapfrogState& s, const Grid1D& g) {
    require_matches(s.curr, g, "discrete_energy");
    const auto& u = s.curr.values;
    const auto& up = s.prev.values;
    double kinetic = 0.0;
    for (int j = 0; j < g.nodes(); ++j) {
        const double v = (u[j] - up[j]) / g.dt;
        kinetic += v * v;
    }
    double potential = 0.0;
    for (int j = 0; j < g.nx; ++j) potential += ((u[j + 1] - u[j]) / g.dx) * ((up[j + 1] - up[j]) / g.dx);
    return 0.5 * g.dx * (kinetic + potential);
}

HomogeneousRun run_homogeneous(const ScalarField& q0, const ScalarField& v0, const Grid1D& g, int n_steps,
                               Direction direction) {
    if (n_steps < 0) throw std::invalid_argument("run_homogeneous: negative step count");
    HomogeneousRun run;
    run.final_state = init_leapfrog(q0, v0, ScalarField{}, g, direction);
    run.traces.dt = g.dt;
    run.traces.values.reserve(static_cast<std::size_t>(n_steps) + 1);
    run.traces.values.push_back(trace_left(run.final_state, g));
    for (int n = 0; n < n_steps; ++n) {
        advance(run.final_state, 0.0, {}, g);
        run.traces.values.push_back(trace_left(run.final_state, g));
    }
    return run;
}

}  // namespace waveobs
