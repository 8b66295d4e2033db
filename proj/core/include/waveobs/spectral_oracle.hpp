#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "waveobs/grid.hpp"
#include "waveobs/oscillator.hpp"

namespace waveobs {

/// Closed-form sine-series solutions on (0,1) with Dirichlet ends. These
/// never touch the finite-difference code and serve as its ground truth.

/// coefficients[k-1] multiplies sin(k pi x).
struct ModeVector {
    std::vector<double> coefficients;

    ModeVector() = default;
    explicit ModeVector(std::vector<double> c) : coefficients(std::move(c)) {}
    static ModeVector unit(int k, int n_modes);

    std::size_t size() const { return coefficients.size(); }
    double operator[](std::size_t i) const { return coefficients[i]; }
};

inline constexpr int kDefaultModes = 64;
inline constexpr double kResonanceTolerance = 1e-8;

class ResonanceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// q_k = 2 * trapezoid(f sin(k pi x)), k = 1..n_modes. Requires n_modes <= nx.
ModeVector sine_coefficients(const ScalarField& f, const Grid1D& g, int n_modes);

/// Exact coefficients of a named profile (x - x^2 gives 8/(k pi)^3 for odd k).
ModeVector profile_coefficients(const SourceProfile& profile, int n_modes = kDefaultModes);

ScalarField synthesize(const ModeVector& a, const Grid1D& g);

/// Source-free evolution from (q, 0): q_k cos(k pi t).
ModeVector free_modal_solution(const ModeVector& q, double t);

struct ModalState {
    ModeVector position;
    ModeVector velocity;
};

/// Duhamel solution of a_k'' + (k pi)^2 a_k = q_k cos(omega t) from rest.
/// Throws ResonanceError when |omega| is within 1e-8 of some k pi.
ModalState forced_modal_solution(const ModeVector& q, double omega, double t);

/// sum_k a_k k pi, the x-derivative at 0 of the sine series.
double neumann_trace_series(const ModeVector& a);

/// y(t_n), n = 0..n_samples-1, of the forced problem.
TimeSeries oracle_measurement(const ModeVector& q, double omega, double dt, std::size_t n_samples);

/// Variation of constants for z1' = z2, z2' = -omega^2 z1 + g(s), z3' = z1,
/// with the convolution evaluated by composite Simpson on the samples of
/// `forcing`, which must cover [0, t] (forcing.duration() == t).
OscillatorState oscillator_closed_form(double omega, const TimeSeries& forcing, const OscillatorState& z0, double t);

/// Samples fn on [0, t] with n intervals.
TimeSeries sample_function(const std::function<double(double)>& fn, double t, int n);

}  // namespace waveobs
