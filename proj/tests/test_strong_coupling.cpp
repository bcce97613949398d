#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "strongdrive/analysis.hpp"
#include "strongdrive/errors.hpp"
#include "strongdrive/propagator.hpp"
#include "strongdrive/strong_coupling.hpp"

using namespace strongdrive;
using std::numbers::pi;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double max_residual(const PicardSolution& sol, double fd_step) {
    double worst = 0.0;
    for (double t = 0.5; t <= 5.0; t += 0.5)
        worst = std::max(worst, picard_residual(sol, t, fd_step));
    return worst;
}

} // namespace

TEST_CASE("drive frame propagator") {
    const DriveParams p(0.2, 2.5, 1.4);
    CHECK(max_abs(drive_frame_propagator(0.0, p) - Mat2::identity()) == 0.0);
    CHECK(max_abs(drive_frame_propagator(pi / p.omega(), p) - Mat2::identity()) < 1e-15);

    const auto [plus, minus] = sigma_one_eigenbasis();
    const Mat2 w = hadamard();
    for (double t = 0.0; t < 12.0; t += 0.37) {
        const Mat2 u = drive_frame_propagator(t, p);
        const double phase = p.drive_phase(t);
        CHECK(max_abs(u * u.adjoint() - Mat2::identity()) <= 1e-14);
        CHECK((u * plus - std::polar(1.0, -phase) * plus).norm() < 1e-15);
        CHECK((u * minus - std::polar(1.0, phase) * minus).norm() < 1e-15);
        CHECK(max_abs(u - w * Mat2::diag(std::polar(1.0, -phase), std::polar(1.0, phase)) * w) < 1e-15);
    }
}

TEST_CASE("drive frame propagator solves the drive-only equation") {
    // i dU/dt = H₀(t) U, checked by central differences.
    const DriveParams p(0.0, 3.0, 0.9);
    const double h = 1e-5;
    for (double t = 0.3; t < 8.0; t += 0.7) {
        const Mat2 du = (1.0 / (2.0 * h)) * (drive_frame_propagator(t + h, p) - drive_frame_propagator(t - h, p));
        const Mat2 lhs = I * du;
        const Mat2 rhs = hamiltonian_drive_only(t, p) * drive_frame_propagator(t, p);
        CHECK(max_abs(lhs - rhs) < 1e-8);
    }
}

TEST_CASE("rotated frame generator") {
    CHECK(rotated_frame_rhs(1.3, DriveParams(0.0, 2.0, 1.0)) == Mat2::zero());
    const DriveParams p(0.4, 2.0, 1.0);
    CHECK(max_abs(rotated_frame_rhs(0.0, p) - (-0.2) * pauli(1)) < 1e-16);
    for (double t = 0.0; t < 10.0; t += 0.61) {
        const Mat2 r = rotated_frame_rhs(t, p);
        CHECK(is_hermitian(r, 1e-15));
        CHECK(r.m00 == cplx{});
        CHECK(r.m11 == cplx{});
        const cplx chi_phase = std::polar(1.0, 2.0 * p.drive_phase(t));
        CHECK(std::abs(r.m01 + 0.2 * chi_phase) < 1e-15);
    }
}

TEST_CASE("reconstruct_full") {
    const DriveParams p(0.3, 1.5, 2.0);
    const cplx alpha{0.6, 0.0}, beta{0.0, 0.8};
    const Vec2 at0 = reconstruct_full(0.0, {alpha, beta}, p);
    CHECK((at0 - Vec2{kInvSqrt2 * (alpha + beta), kInvSqrt2 * (alpha - beta)}).norm() < 1e-15);

    const DriveParams free(0.0, 1.5, 2.0);
    for (double t : {0.3, 1.1, 4.0}) {
        const cplx e = std::polar(kInvSqrt2, -free.drive_phase(t));
        CHECK((reconstruct_full(t, {1.0, 0.0}, free) - Vec2{e, e}).norm() < 1e-15);
    }

    std::mt19937_64 rng(8);
    std::normal_distribution<double> n;
    for (int i = 0; i < 50; ++i) {
        const Vec2 phi{{n(rng), n(rng)}, {n(rng), n(rng)}};
        const double t = 10.0 * std::abs(n(rng));
        CHECK(reconstruct_full(t, phi, p).norm() == doctest::Approx(phi.norm()).epsilon(1e-15));
    }
}

TEST_CASE("frame change reproduces the full dynamics") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ud(0.01, 1.0), ug(0.1, 10.0), uw(0.3, 3.0), uphase(0.0, 2 * pi);
    for (int i = 0; i < 8; ++i) {
        const double delta = ud(rng);
        const DriveParams p(delta, i == 0 ? 100.0 * delta : ug(rng), uw(rng));
        const cplx alpha = std::polar(0.6, uphase(rng));
        const cplx beta = std::polar(0.8, uphase(rng));
        const auto grid = uniform_grid(15.0, 16);
        const auto cfg = IntegratorConfig::defaults_for(p);

        const Generator rotated = [&p](double t) { return rotated_frame_rhs(t, p); };
        const auto phi = propagate(rotated, StateVector(alpha, beta), grid, cfg);
        const auto psi = propagate(p, StateVector(reconstruct_full(0.0, {alpha, beta}, p)), grid, cfg);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const Vec2 rebuilt = reconstruct_full(grid[k], phi.states[k], p);
            CHECK(fidelity(StateVector::normalized(psi.states[k]), rebuilt) >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("picard order 0 and 1") {
    const DriveParams p(0.3, 1.2, 0.8);
    const cplx alpha{0.6, 0.0}, beta{0.0, 0.8};

    const auto zero = picard_iterate(p, alpha, beta, 0);
    for (double t : {0.0, 1.0, 7.5}) {
        CHECK(zero.a(t) == alpha);
        CHECK(zero.b(t) == beta);
    }

    const auto first = picard_iterate(p, alpha, beta, 1, 1e-11);
    for (double t : {0.0, 0.7, 3.3, 12.0}) {
        const cplx ip = phase_integral_bessel(t, 1, p, default_bessel_terms(p)).value;
        const cplx im = phase_integral_bessel(t, -1, p, default_bessel_terms(p)).value;
        CHECK(std::abs(first.a(t) - (alpha + I * 0.15 * beta * ip)) < 1e-11);
        CHECK(std::abs(first.b(t) - (beta + I * 0.15 * alpha * im)) < 1e-11);
        if (t > 0.0) {
            CHECK((first.psi(t) - approx_solution(t, alpha, beta, p)).norm() < 1e-10);
        }
    }
}

TEST_CASE("picard order 2 matches the Dyson hierarchy oracle") {
    // Frozen from oracle::dyson_hierarchy(Δ=0.2, g=1, ω=1, α=1, β=0, k=2, t=5) with 20000 RK4 steps;
    // 5000 and 10000 steps agree to 1e-15.
    const cplx a_ref{0.99077827242481542, 0.025623650561591407};
    const cplx b_ref{0.097764635459135718, 0.094263095662679222};
    const oracle::Amp check = oracle::dyson_hierarchy(0.2, 1.0, 1.0, 1.0, 0.0, 2, 5.0, 10000);
    CHECK(std::abs(check.c0 - a_ref) < 1e-13);
    CHECK(std::abs(check.c1 - b_ref) < 1e-13);

    const auto sol = picard_iterate(DriveParams(0.2, 1.0, 1.0), 1.0, 0.0, 2, 1e-10);
    CHECK(std::abs(sol.a(5.0) - a_ref) < 1e-10);
    CHECK(std::abs(sol.b(5.0) - b_ref) < 1e-10);
}

TEST_CASE("picard order 3 matches the Dyson hierarchy oracle") {
    const DriveParams p(0.5, 2.0, 1.5);
    const cplx alpha = kInvSqrt2, beta = kInvSqrt2 * I;
    const oracle::Amp ref = oracle::dyson_hierarchy(0.5, 2.0, 1.5, alpha, beta, 3, 3.0, 20000);
    const auto sol = picard_iterate(p, alpha, beta, 3, 1e-9);
    CHECK(std::abs(sol.a(3.0) - ref.c0) < 1e-8);
    CHECK(std::abs(sol.b(3.0) - ref.c1) < 1e-8);
}

TEST_CASE("picard residual scales as delta^(k+1)") {
    for (int k = 0; k <= 2; ++k) {
        const auto coarse = picard_iterate(DriveParams(0.2, 1.0, 1.0), 1.0, 0.0, k, 1e-12);
        const auto fine = picard_iterate(DriveParams(0.1, 1.0, 1.0), 1.0, 0.0, k, 1e-12);
        const double r_coarse = max_residual(coarse, 1e-5);
        const double r_fine = max_residual(fine, 1e-5);
        // The finite difference itself is stable against a 100x smaller step.
        CHECK(std::abs(max_residual(fine, 1e-7) - r_fine) <= 1e-3 * r_fine);
        const double expected = std::pow(2.0, k + 1);
        CHECK(r_coarse / r_fine >= expected / 1.5);
        CHECK(r_coarse / r_fine <= expected * 1.5);
    }
}

TEST_CASE("picard argument validation") {
    const DriveParams p(0.2, 1.0, 1.0);
    CHECK_THROWS_AS(picard_iterate(p, 1.0, 1.0, 1), DomainError);
    CHECK_THROWS_AS(picard_iterate(p, 1.0, 0.0, -1), DomainError);
    CHECK_THROWS_AS(picard_iterate(p, 1.0, 0.0, 1, 0.0), DomainError);
    const auto sol = picard_iterate(p, 1.0, 0.0, 1);
    CHECK_THROWS_AS(picard_residual(sol, 0.0, 1e-5), DomainError);
}

TEST_CASE("nested quadrature failure carries its level") {
    // A budget this tight cannot resolve 30 drive periods.
    const auto sol = picard_iterate(DriveParams(0.5, 20.0, 1.0), 1.0, 0.0, 2, 1e-300);
    try {
        (void)sol.a(200.0);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.level() >= 0);
        CHECK(e.level() <= 1);
    }
}

TEST_CASE("approx_solution") {
    const DriveParams p(0.3, 2.0, 1.0);
    const cplx alpha{0.6, 0.0}, beta{0.0, 0.8};
    CHECK((approx_solution(0.0, alpha, beta, p) - Vec2{kInvSqrt2 * (alpha + beta), kInvSqrt2 * (alpha - beta)}).norm() <
          1e-15);
    CHECK_THROWS_AS(approx_solution(1.0, 1.0, 1.0, p), DomainError);

    SUBCASE("delta = 0 is exact") {
        const DriveParams free(0.0, 2.0, 1.0);
        const auto grid = uniform_grid(10.0, 41);
        const auto exact = propagate(free, StateVector(reconstruct_full(0.0, {alpha, beta}, free)), grid,
                                     IntegratorConfig::defaults_for(free));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Vec2 a = approx_solution(grid[i], alpha, beta, free);
            CHECK(std::abs(a.norm() - 1.0) < 1e-15);
            CHECK(fidelity(StateVector::normalized(exact.states[i]), a) >= 1.0 - 1e-12);
        }
    }

    SUBCASE("weak splitting over 20 time units") {
        const DriveParams weak(0.05, 1.0, 1.0);
        const std::vector<double> grid{0.0, 20.0};
        const auto exact = propagate(weak, StateVector(reconstruct_full(0.0, {1.0, 0.0}, weak)), grid,
                                     IntegratorConfig::defaults_for(weak));
        const Vec2 a = approx_solution(20.0, 1.0, 0.0, weak);
        CHECK(fidelity(StateVector::normalized(exact.final_state()), a) >= 0.999);
    }

    SUBCASE("norm is not renormalized and deviates at second order") {
        double dev_coarse = 0.0, dev_fine = 0.0;
        for (double t = 1.0; t <= 10.0; t += 1.0) {
            dev_coarse = std::max(dev_coarse, std::abs(approx_solution(t, alpha, beta, p).norm() - 1.0));
            dev_fine = std::max(dev_fine, std::abs(approx_solution(t, alpha, beta, p.with_delta(0.15)).norm() - 1.0));
        }
        CHECK(dev_coarse > 1e-6);
        CHECK(dev_coarse / dev_fine == doctest::Approx(4.0).epsilon(0.05));
    }
}

TEST_CASE("lowest-order error: amplitude O(delta^2), infidelity O(delta^4)") {
    const DriveParams base(0.0, 1.0, 1.0);
    const double deltas[] = {0.2, 0.1, 0.05, 0.025};
    double infid[4];
    for (int i = 0; i < 4; ++i)
        infid[i] = max_infidelity(base.with_delta(deltas[i]), kInvSqrt2, kInvSqrt2, 10.0, 161);
    for (int i = 0; i + 1 < 4; ++i) {
        CHECK(infid[i + 1] < infid[i]);
        const double ratio = infid[i] / infid[i + 1];
        CHECK(ratio > 12.0);
        CHECK(ratio < 20.0);
        // √(1 − F) tracks the amplitude error, which halves twice per halving of Δ.
        const double amp_ratio = std::sqrt(ratio);
        CHECK(amp_ratio >= 2.5);
        CHECK(amp_ratio <= 6.0);
    }
}
