#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "waveobs/spectral_oracle.hpp"

using namespace waveobs;
using oracles::pi;

TEST_CASE("sine_coefficients") {
    const Grid1D g = build_grid(20, 0.5, 1.0);
    const auto s2 = eval_source_profile(SourceProfile::sine(2), g);
    const auto c = sine_coefficients(s2, g, 10);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c[i] - (i == 1 ? 1.0 : 0.0)) < 1e-12);

    const auto z = sine_coefficients(ScalarField::zeros(g), g, 10);
    CHECK(oracles::max_abs(z.coefficients) == 0.0);

    CHECK_THROWS_AS(sine_coefficients(s2, g, 21), std::invalid_argument);
    CHECK_THROWS_AS(sine_coefficients(s2, g, 0), std::invalid_argument);
}

TEST_CASE("profile coefficients of x - x^2") {
    const auto c = profile_coefficients(SourceProfile::poly_paper(), 64);
    CHECK(c.size() == 64);
    CHECK(c[0] == doctest::Approx(0.258012).epsilon(1e-6));
    for (int k = 1; k <= 64; ++k) CHECK(c[k - 1] == doctest::Approx(oracles::poly_coefficient(k)));

    // quadrature cross-check on a fine grid
    const Grid1D g = build_grid(2000, 0.5, 1.0);
    const auto q = sine_coefficients(eval_source_profile(SourceProfile::poly_paper(), g), g, 5);
    for (int k = 1; k <= 5; ++k) CHECK(std::abs(q[k - 1] - oracles::poly_coefficient(k)) < 1e-6);

    const auto s = profile_coefficients(SourceProfile::sine(3), 8);
    CHECK(s[2] == 1.0);
    CHECK(s[0] == 0.0);
}

TEST_CASE("property: analysis inverts synthesis for n_modes <= nx / 2") {
    const Grid1D g = build_grid(24, 0.5, 1.0);
    const ModeVector a({0.3, -1.2, 0.0, 0.8, 2.0, -0.1, 0.05, 0.7, -0.4, 0.9, 0.11, -0.6});
    const auto back = sine_coefficients(synthesize(a, g), g, 12);
    CHECK(oracles::max_abs_diff(back.coefficients, a.coefficients) <= 1e-12);
}

TEST_CASE("property: discrete Parseval") {
    const Grid1D g = build_grid(40, 0.5, 1.0);
    const ModeVector a({1.0, 0.5, -0.25, 0.125});
    double half_sum = 0.0;
    for (double c : a.coefficients) half_sum += c * c / 2;
    const double n = l2_norm(synthesize(a, g), g);
    CHECK(n * n == doctest::Approx(half_sum).epsilon(1e-12));
}

TEST_CASE("free_modal_solution") {
    const ModeVector q({1.0, 2.0, 3.0});
    CHECK(free_modal_solution(q, 0.0).coefficients == q.coefficients);
    CHECK(free_modal_solution(ModeVector::unit(1, 4), 1.0)[0] == doctest::Approx(-1.0));
    CHECK(std::abs(free_modal_solution(ModeVector::unit(2, 4), 0.25)[1]) < 1e-15);
}

TEST_CASE("forced_modal_solution") {
    const auto e1 = ModeVector::unit(1, 8);
    const auto at0 = forced_modal_solution(e1, 1.0, 0.0);
    CHECK(oracles::max_abs(at0.position.coefficients) == 0.0);
    CHECK(oracles::max_abs(at0.velocity.coefficients) == 0.0);

    CHECK(forced_modal_solution(e1, 0.0, 1.0).position[0] == doctest::Approx(2.0 / (pi * pi)));
    CHECK_THROWS_AS(forced_modal_solution(e1, pi - 1e-9, 1.0), ResonanceError);
    CHECK_NOTHROW(forced_modal_solution(e1, pi - 1e-3, 1.0));
}

TEST_CASE("property: forced modal solution satisfies its ODE") {
    const ModeVector q({0.7, -0.2, 0.4});
    const double omega = 1.7, h = 1e-4;
    for (double t : {0.1, 0.9, 2.3}) {
        const auto s = forced_modal_solution(q, omega, t);
        const auto sp = forced_modal_solution(q, omega, t + h);
        const auto sm = forced_modal_solution(q, omega, t - h);
        for (std::size_t k = 0; k < q.size(); ++k) {
            const double lam = (k + 1) * pi;
            // analytic acceleration through the ODE compared against a velocity difference
            const double acc = -lam * lam * s.position[k] + q[k] * std::cos(omega * t);
            const double acc_fd = (sp.velocity[k] - sm.velocity[k]) / (2 * h);
            CHECK(std::abs(acc - acc_fd) < 1e-6 * std::max(1.0, std::abs(acc)));
            const double vel_fd = (sp.position[k] - sm.position[k]) / (2 * h);
            CHECK(std::abs(s.velocity[k] - vel_fd) < 1e-6);
        }
    }
}

TEST_CASE("neumann_trace_series") {
    CHECK(neumann_trace_series(ModeVector({0.0, 0.0})) == 0.0);
    CHECK(neumann_trace_series(ModeVector::unit(1, 3)) == doctest::Approx(pi));
    CHECK(neumann_trace_series(ModeVector::unit(2, 3)) == doctest::Approx(2 * pi));
}

TEST_CASE("oracle_measurement") {
    const double dt = 1e-3;
    const auto y = oracle_measurement(ModeVector::unit(1, 4), 0.0, dt, 1001);
    CHECK(y.size() == 1001);
    CHECK(y.values.back() == doctest::Approx(2.0 / pi));
    for (std::size_t n = 0; n < y.size(); n += 50)
        CHECK(y[n] == doctest::Approx(oracles::sine_measurement(1, 0.0, n * dt)).epsilon(1e-12));

    const auto z = oracle_measurement(ModeVector({0.0, 0.0}), 1.0, dt, 10);
    CHECK(oracles::max_abs(z.values) == 0.0);

    const auto p = oracle_measurement(profile_coefficients(SourceProfile::poly_paper(), 64), 1.0, 0.01, 301);
    for (std::size_t n = 0; n < p.size(); n += 10)
        CHECK(std::abs(p[n] - oracles::poly_measurement(1.0, n * 0.01)) < 1e-4);
    CHECK_THROWS_AS(oracle_measurement(ModeVector::unit(2, 4), 2 * pi, dt, 10), ResonanceError);
}

TEST_CASE("oscillator_closed_form") {
    const auto zero = sample_function([](double) { return 0.0; }, pi / 2, 200);
    const auto r = oscillator_closed_form(1.0, zero, {1.0, 0.0, 0.0}, pi / 2);
    CHECK(std::abs(r.z1) < 1e-12);
    CHECK(r.z2 == doctest::Approx(-1.0));
    CHECK(r.z3 == doctest::Approx(1.0).epsilon(1e-8));

    const auto one = sample_function([](double) { return 1.0; }, 1.0, 200);
    CHECK(oscillator_closed_form(1.0, one, {}, 1.0).z1 == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-9));

    const auto tr = sample_function([](double s) { return pi * std::cos(pi * s); }, 1.0, 400);
    CHECK(oscillator_closed_form(0.0, tr, {}, 1.0).z1 == doctest::Approx(2.0 / pi).epsilon(1e-8));

    CHECK_THROWS_AS(oscillator_closed_form(1.0, one, {}, 2.0), std::invalid_argument);
}
