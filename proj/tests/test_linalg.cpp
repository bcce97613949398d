#include <doctest.h>

#include <cmath>
#include <random>

#include "strongdrive/errors.hpp"
#include "strongdrive/linalg.hpp"

using namespace strongdrive;

namespace {

bool near(const Mat2& a, const Mat2& b, double tol) { return max_abs(a - b) <= tol; }
bool near(const Vec2& a, const Vec2& b, double tol) { return (a - b).norm() <= tol; }

Vec2 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    return StateVector::normalized({{n(rng), n(rng)}, {n(rng), n(rng)}}).vec();
}

} // namespace

TEST_CASE("pauli matrices") {
    CHECK(pauli(1) == Mat2{0.0, 1.0, 1.0, 0.0});
    CHECK(pauli(2) == Mat2{0.0, -I, I, 0.0});
    CHECK(pauli(3) == Mat2{1.0, 0.0, 0.0, -1.0});

    for (int k = 1; k <= 3; ++k) {
        CHECK(pauli(k) * pauli(k) == Mat2::identity());
        CHECK(is_hermitian(pauli(k)));
        CHECK(is_unitary(pauli(k)));
        CHECK(pauli(k).trace() == cplx{0.0});
    }
    // [σ₁, σ₂] = 2iσ₃
    CHECK(near(pauli(1) * pauli(2) - pauli(2) * pauli(1), 2.0 * I * pauli(3), 0.0));

    CHECK_THROWS_AS(pauli(0), DomainError);
    CHECK_THROWS_AS(pauli(4), DomainError);
}

TEST_CASE("sigma plus/minus are the raising/lowering matrices") {
    CHECK(near(sigma_plus(), 0.5 * (pauli(1) + I * pauli(2)), 0.0));
    CHECK(near(sigma_minus(), 0.5 * (pauli(1) - I * pauli(2)), 0.0));
    CHECK(sigma_plus() == outer(basis0(), basis1()));
    CHECK(sigma_minus() == outer(basis1(), basis0()));
}

TEST_CASE("hadamard frame") {
    const Mat2 w = hadamard();
    CHECK(near(w * w, Mat2::identity(), 1e-15));
    CHECK(is_hermitian(w, 0.0));
    CHECK(is_unitary(w, 1e-15));
    CHECK(near(w * pauli(3) * w, pauli(1), 1e-15));
    CHECK(near(w * pauli(1) * w, pauli(3), 1e-15));
    CHECK(near(w * basis0(), Vec2{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}, 1e-15));
}

TEST_CASE("sigma one eigenbasis") {
    const auto [plus, minus] = sigma_one_eigenbasis();
    CHECK(near(pauli(1) * plus, plus, 1e-15));
    CHECK(near(pauli(1) * minus, -1.0 * minus, 1e-15));
    CHECK(near(pauli(3) * plus, minus, 1e-15));
    CHECK(near(pauli(3) * minus, plus, 1e-15));
    // |±1⟩⟨±1| = W |0)(0| W and W |1)(1| W
    const Mat2 w = hadamard();
    CHECK(near(projector(plus), w * projector(basis0()) * w, 1e-15));
    CHECK(near(projector(minus), w * projector(basis1()) * w, 1e-15));
}

TEST_CASE("projector") {
    const Vec2 v{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    CHECK(near(projector(v), Mat2{0.5, 0.5, 0.5, 0.5}, 1e-15));
    CHECK(projector(basis0()) == Mat2{1.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(projector(Vec2{1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(projector(Vec2{NAN, 0.0}), DomainError);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const Vec2 u = random_unit(rng);
        const Mat2 p = projector(u);
        CHECK(near(p * p, p, 1e-12));
        CHECK(is_hermitian(p, 1e-12));
        CHECK(std::abs(p.trace() - 1.0) < 1e-12);
        CHECK(near(p * u, u, 1e-12));
    }
}

TEST_CASE("state vector validation") {
    CHECK_NOTHROW(StateVector(1.0, 0.0));
    CHECK_THROWS_AS(StateVector(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(StateVector(Vec2{INFINITY, 0.0}), DomainError);
    CHECK_THROWS_AS(StateVector::normalized(Vec2{}), DomainError);
    const StateVector s = StateVector::normalized({3.0, 4.0 * I});
    CHECK(std::abs(s.c0() - 0.6) < 4e-16);
    CHECK(std::abs(s.c1() - 0.8 * I) < 4e-16);
}
