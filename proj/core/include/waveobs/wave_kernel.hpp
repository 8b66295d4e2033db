#pragma once

#include <span>
#include <stdexcept>

#include "waveobs/grid.hpp"

namespace waveobs {

enum class Direction { Forward, Backward };

constexpr double sign_of(Direction d) { return d == Direction::Forward ? 1.0 : -1.0; }
constexpr Direction flipped(Direction d) {
    return d == Direction::Forward ? Direction::Backward : Direction::Forward;
}

/// Raised when an operation is applied to a state in the wrong phase.
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Two consecutive time levels of the displacement u for the explicit
/// leapfrog scheme. `prev` sits one step behind `curr` in the state's own
/// direction of travel; `t_index` counts steps in that direction.
struct LeapfrogState {
    ScalarField prev;
    ScalarField curr;
    long t_index = 0;
    Direction direction = Direction::Forward;
};

/// Second-order start: prev = q0 - s dt v0 + dt^2/2 (D2 q0 + f0), s = +1 forward.
/// An empty `f0` means zero forcing.
LeapfrogState init_leapfrog(const ScalarField& q0, const ScalarField& v0, const ScalarField& f0, const Grid1D& g,
                            Direction direction = Direction::Forward);

/// In-place leapfrog step. `left_bc_next` is the Dirichlet value at x = 0 for
/// the new level, x = 1 is held at 0. `forcing` may be empty.
void advance(LeapfrogState& s, double left_bc_next, std::span<const double> forcing, const Grid1D& g);

/// Value-returning form of `advance`.
LeapfrogState step(const LeapfrogState& s, double left_bc_next, std::span<const double> forcing, const Grid1D& g);

/// (-3 u0 + 4 u1 - u2) / (2 dx).
double left_trace(std::span<const double> u, double dx);
double trace_left(const LeapfrogState& s, const Grid1D& g);

/// Centered du/dt at the time of `s.curr`; `s_next` must be the state one step later.
ScalarField velocity(const LeapfrogState& s, const LeapfrogState& s_next, const Grid1D& g);

/// Centered du/dt at `s.curr`, using a homogeneous look-ahead level whose
/// boundary value is extrapolated linearly.
ScalarField current_velocity(const LeapfrogState& s, const Grid1D& g);

/// Turns the direction of travel at the current level. Leapfrog is symmetric
/// under t -> -t, so the look-ahead level becomes the new `prev`.
void reverse(LeapfrogState& s, const Grid1D& g);

/// Leapfrog-conserved energy for homogeneous boundary data.
double discrete_energy(const LeapfrogState& s, const Grid1D& g);

struct HomogeneousRun {
    LeapfrogState final_state;
    TimeSeries traces;   // w_x(t_n, 0), n = 0..n_steps
};

/// Source-free run with homogeneous Dirichlet data on both ends.
HomogeneousRun run_homogeneous(const ScalarField& q0, const ScalarField& v0, const Grid1D& g, int n_steps,
                               Direction direction = Direction::Forward);

}  // namespace waveobs
