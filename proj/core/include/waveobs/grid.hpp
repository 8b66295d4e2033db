#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace waveobs {

/// Raised when a field or series does not match the grid it is used with.
class ShapeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Uniform space-time discretization of (0,T) x (0,1).
///
/// The time step is adjusted at construction so that one pass of length T
/// holds an integer number of steps; pass boundaries t = kT always fall on
/// time nodes.
struct Grid1D {
    int nx = 0;        // spatial cells, nx + 1 nodes
    double dx = 0.0;
    double cfl = 0.0;  // dt / dx after adjustment
    double dt = 0.0;
    int n_steps = 0;   // steps per pass
    double T = 0.0;

    int nodes() const { return nx + 1; }
    double x(int j) const { return j * dx; }
    double t(int n) const { return n * dt; }
};

Grid1D build_grid(int nx, double cfl, double T);

/// Nodal samples on the owning grid, x_j = j * dx.
struct ScalarField {
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(std::size_t n, double v = 0.0) : values(n, v) {}
    explicit ScalarField(std::vector<double> v) : values(std::move(v)) {}

    static ScalarField zeros(const Grid1D& g) { return ScalarField(static_cast<std::size_t>(g.nodes())); }

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t j) { return values[j]; }
    double operator[](std::size_t j) const { return values[j]; }
    std::span<const double> view() const { return values; }
    std::span<double> view() { return values; }

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double c);
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator*(double c, ScalarField a) { return a *= c; }
};

/// Uniformly sampled signal, values[n] at t_n = n * dt.
struct TimeSeries {
    std::vector<double> values;
    double dt = 0.0;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t n) const { return values[n]; }
    double duration() const { return values.empty() ? 0.0 : dt * static_cast<double>(values.size() - 1); }
};

struct Gains {
    double gamma1 = 1.0;
    double gamma2 = 0.5;
};

/// Throws std::invalid_argument unless both gains are strictly positive.
void validate(const Gains& gains);

void require_matches(const ScalarField& f, const Grid1D& g, const char* what = "field");

/// Composite trapezoid approximation of (int_0^1 f^2)^{1/2}.
double l2_norm(const ScalarField& f, const Grid1D& g);

/// L2 norm of the forward-difference derivative (midpoint rule on cells).
double h1_seminorm(const ScalarField& f, const Grid1D& g);

double max_abs(std::span<const double> v);

/// Trapezoid of v^2 over a uniformly sampled interval.
double trapezoid_sq(std::span<const double> v, double h);

// --- source profiles -------------------------------------------------------

/// Descriptor for the spatial source q(x).
struct SourceProfile {
    enum class Kind { Polynomial, SineMode, Coefficients };

    Kind kind = Kind::Polynomial;
    int k = 1;                      // SineMode
    std::vector<double> coeffs;     // Coefficients: entry m-1 multiplies sin(m pi x)

    static SourceProfile poly_paper() { return {}; }
    static SourceProfile sine(int k) { return {Kind::SineMode, k, {}}; }
    static SourceProfile sine_series(std::vector<double> c) { return {Kind::Coefficients, 1, std::move(c)}; }

    /// Accepts "poly_paper" and "sine_k"; throws std::invalid_argument otherwise.
    static SourceProfile named(const std::string& name, int k = 1);

    std::string name() const;
};

/// Samples q at the grid nodes with q(0) = q(1) = 0 enforced.
ScalarField eval_source_profile(const SourceProfile& profile, const Grid1D& g);

/// Scenario parameters shared by the CLI and the acceptance runs.
struct ScenarioConfig {
    SourceProfile source;
    bool has_source = true;   // false: run without a known truth
    double omega = 1.0;
    double T = 3.0;
    int nx = 20;
    double cfl = 0.005;
    Gains gains{};
    int iterations = 50;
    double noise = 0.0;
    unsigned long long seed = 42;
    int snapshot_stride = 1;
    std::string out_dir;

    /// Throws std::invalid_argument on a violated invariant.
    void validate() const;
    Grid1D grid() const { return build_grid(nx, cfl, T); }
};

}  // namespace waveobs
