#include "waveobs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace waveobs {

Grid1D build_grid(int nx, double cfl, double T) {
    if (nx < 3) throw std::invalid_argument("build_grid: nx must be >= 3");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("build_grid: T must be positive");
    if (!(cfl > 0.0) || cfl > 1.0) throw std::invalid_argument("build_grid: cfl must lie in (0, 1]");

    Grid1D g;
    g.nx = nx;
    g.dx = 1.0 / nx;
    g.T = T;
    long n = std::lround(T / (cfl * g.dx));
    n = std::max(n, 1L);
    if (T / static_cast<double>(n) > g.dx) {
        // rounding down the step count would break the stability bound
        n = static_cast<long>(std::ceil(T / g.dx));
    }
    g.n_steps = static_cast<int>(n);
    g.dt = T / static_cast<double>(n);
    g.cfl = g.dt / g.dx;
    return g;
}

void validate(const Gains& gains) {
    if (!(gains.gamma1 > 0.0) || !(gains.gamma2 > 0.0))
        throw std::invalid_argument("observer gains must be strictly positive");
}

void require_matches(const ScalarField& f, const Grid1D& g, const char* what) {
    if (f.size() != static_cast<std::size_t>(g.nodes()))
        throw ShapeMismatch(std::string(what) + ": expected " + std::to_string(g.nodes()) + " nodes, got " +
                            std::to_string(f.size()));
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    if (o.size() != size()) throw ShapeMismatch("ScalarField +=: size mismatch");
    for (std::size_t j = 0; j < size(); ++j) values[j] += o.values[j];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    if (o.size() != size()) throw ShapeMismatch("ScalarField -=: size mismatch");
    for (std::size_t j = 0; j < size(); ++j) values[j] -= o.values[j];
    return *this;
}

ScalarField& ScalarField::operator*=(double c) {
    for (auto& v : values) v *= c;
    return *this;
}

double trapezoid_sq(std::span<const double> v, double h) {
    if (v.size() < 2) return 0.0;
    double s = 0.5 * (v.front() * v.front() + v.back() * v.back());
    for (std::size_t j = 1; j + 1 < v.size(); ++j) s += v[j] * v[j];
    return s * h;
}

double l2_norm(const ScalarField& f, const Grid1D& g) {
    require_matches(f, g, "l2_norm");
    return std::sqrt(trapezoid_sq(f.view(), g.dx));
}

double h1_seminorm(const ScalarField& f, const Grid1D& g) {
    require_matches(f, g, "h1_seminorm");
    double s = 0.0;
    for (int j = 0; j < g.nx; ++j) {
        const double d = (f[j + 1] - f[j]) / g.dx;
        s += d * d;
    }
    return std::sqrt(s * g.dx);
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

SourceProfile SourceProfile::named(const std::string& name, int k) {
    if (name == "poly_paper") return poly_paper();
    if (name == "sine_k") {
        if (k < 1) throw std::invalid_argument("sine_k profile needs k >= 1");
        return sine(k);
    }
    throw std::invalid_argument("unknown source profile '" + name + "'");
}

std::string SourceProfile::name() const {
    switch (kind) {
        case Kind::Polynomial: return "poly_paper";
        case Kind::SineMode: return "sine_k";
        case Kind::Coefficients: return "coeffs";
    }
    return "?";
}

ScalarField eval_source_profile(const SourceProfile& profile, const Grid1D& g) {
    using std::numbers::pi;
    ScalarField q = ScalarField::zeros(g);
    for (int j = 0; j < g.nodes(); ++j) {
        const double x = g.x(j);
        switch (profile.kind) {
            case SourceProfile::Kind::Polynomial: q[j] = x - x * x; break;
            case SourceProfile::Kind::SineMode: q[j] = std::sin(profile.k * pi * x); break;
            case SourceProfile::Kind::Coefficients: {
                double s = 0.0;
                for (std::size_t m = 0; m < profile.coeffs.size(); ++m)
                    s += profile.coeffs[m] * std::sin(static_cast<double>(m + 1) * pi * x);
                q[j] = s;
                break;
            }
        }
    }
    q[0] = 0.0;
    q[g.nx] = 0.0;
    return q;
}

void ScenarioConfig::validate() const {
    if (!std::isfinite(omega)) throw std::invalid_argument("omega must be finite");
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (!(noise >= 0.0)) throw std::invalid_argument("noise level must be >= 0");
    if (snapshot_stride < 1) throw std::invalid_argument("snapshot_stride must be >= 1");
    waveobs::validate(gains);
    (void)build_grid(nx, cfl, T);
}

}  // namespace waveobs
