#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "strongdrive/errors.hpp"
#include "strongdrive/phase_integral.hpp"

using namespace strongdrive;
using std::numbers::pi;

TEST_CASE("trivial values") {
    const DriveParams p(0.3, 1.7, 0.8);
    CHECK(phase_integral_quadrature(0.0, 1, p).value == cplx{});
    CHECK(phase_integral_bessel(0.0, 1, p, 5).value == cplx{});
    CHECK(phase_integral_bessel(0.0, -1, p, 40).value == cplx{});

    const DriveParams free(0.3, 0.0, 0.8);
    CHECK(phase_integral_quadrature(4.25, 1, free).value == cplx{4.25});
    CHECK(phase_integral_bessel(4.25, -1, free, 10).value == cplx{4.25});
}

TEST_CASE("one drive period gives T J0(2g/omega)") {
    const DriveParams p(0.0, 1.0, 1.0);
    const double t = p.period();
    const double expect = t * oracle::j0_series(2.0);
    CHECK(expect == doctest::Approx(1.4067472539132013).epsilon(1e-15));
    // Brute-force Simpson on a fine grid agrees with the series.
    CHECK(std::abs(oracle::phase_integral_simpson(1.0, 1.0, 1, t, 4000) - expect) < 1e-12);

    const auto q = phase_integral_quadrature(t, 1, p, 1e-12);
    CHECK(std::abs(q.value - expect) < 1e-12);
    CHECK(q.err_estimate <= 1e-12);
    const auto b = phase_integral_bessel(t, 1, p, default_bessel_terms(p));
    CHECK(std::abs(b.value - expect) < 1e-10);
    CHECK(b.method == PhaseMethod::bessel_series);
    CHECK(q.method == PhaseMethod::quadrature);
}

TEST_CASE("quadrature error estimate bounds the true error") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ur(0.0, 6.0), ut(0.0, 15.0);
    for (int i = 0; i < 20; ++i) {
        const DriveParams p(0.0, ur(rng), 1.0);
        const double t = ut(rng);
        const auto q = phase_integral_quadrature(t, 1, p, 1e-8);
        const cplx ref = oracle::phase_integral_simpson(p.g(), 1.0, 1, t, 20000);
        CHECK(q.err_estimate <= 1e-8);
        CHECK(std::abs(q.value - ref) <= q.err_estimate + 1e-11);
    }
}

TEST_CASE("conjugation symmetry") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ug(0.0, 8.0), uw(0.3, 3.0), ut(0.0, 30.0);
    for (int i = 0; i < 50; ++i) {
        const DriveParams p(0.1, ug(rng), uw(rng));
        const double t = ut(rng);
        const auto plus = phase_integral_quadrature(t, 1, p, 1e-11);
        const auto minus = phase_integral_quadrature(t, -1, p, 1e-11);
        CHECK(std::abs(minus.value - std::conj(plus.value)) < 1e-12);
        const int n = default_bessel_terms(p);
        CHECK(std::abs(phase_integral_bessel(t, -1, p, n).value - std::conj(phase_integral_bessel(t, 1, p, n).value)) <
              1e-12);
    }
}

TEST_CASE("quadrature and Bessel routes agree") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ur(0.0, 10.0), uw(0.5, 2.0), uperiods(0.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double omega = uw(rng);
        const DriveParams p(0.0, ur(rng) * omega, omega);
        const double t = uperiods(rng) * p.period();
        const int sign = i % 2 ? 1 : -1;
        const auto q = phase_integral_quadrature(t, sign, p, 1e-11);
        const auto b = phase_integral_bessel(t, sign, p, default_bessel_terms(p));
        CHECK(std::abs(q.value - b.value) <= 1e-9);
        CHECK(b.err_estimate < 1e-12);
    }
}

TEST_CASE("truncated series reports its tail") {
    const DriveParams p(0.0, 5.0, 1.0);
    const auto crude = phase_integral_bessel(7.0, 1, p, 3);
    const auto full = phase_integral_bessel(7.0, 1, p, default_bessel_terms(p));
    CHECK(crude.err_estimate > 1e-3);
    CHECK(std::abs(crude.value - full.value) <= crude.err_estimate);
}

TEST_CASE("argument validation") {
    const DriveParams p(0.1, 1.0, 1.0);
    CHECK_THROWS_AS(phase_integral_quadrature(-1.0, 1, p), DomainError);
    CHECK_THROWS_AS(phase_integral_quadrature(1.0, 0, p), DomainError);
    CHECK_THROWS_AS(phase_integral_quadrature(1.0, 1, p, 0.0), DomainError);
    CHECK_THROWS_AS(phase_integral_bessel(1.0, 1, p, 0), DomainError);
    CHECK_THROWS_AS(phase_integral_bessel(1.0, 2, p, 5), DomainError);
    CHECK(default_bessel_terms(DriveParams(0.0, 2.2, 1.0)) == 5 + 25);
}

TEST_CASE("checked evaluation returns the quadrature value") {
    const DriveParams p(0.1, 3.0, 1.2);
    const auto c = phase_integral_checked(9.0, 1, p);
    CHECK(c.method == PhaseMethod::quadrature);
    CHECK(c.value == phase_integral_quadrature(9.0, 1, p).value);
}
