#include "strongdrive/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "strongdrive/errors.hpp"

namespace strongdrive {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr double kInvSqrt2 = 0.70710678118654752440;

} // namespace

double Vec2::norm() const { return std::sqrt(norm_squared()); }

bool Vec2::is_finite() const { return finite(c0) && finite(c1); }

cplx inner(const Vec2& a, const Vec2& b) { return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1; }

Mat2& Mat2::operator+=(const Mat2& o) {
    m00 += o.m00; m01 += o.m01;
    m10 += o.m10; m11 += o.m11;
    return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
    m00 -= o.m00; m01 -= o.m01;
    m10 -= o.m10; m11 -= o.m11;
    return *this;
}

Mat2& Mat2::operator*=(cplx s) {
    m00 *= s; m01 *= s;
    m10 *= s; m11 *= s;
    return *this;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.m00 * v.c0 + m.m01 * v.c1, m.m10 * v.c0 + m.m11 * v.c1};
}

Mat2 Mat2::adjoint() const { return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)}; }

bool Mat2::is_finite() const { return finite(m00) && finite(m01) && finite(m10) && finite(m11); }

double max_abs(const Mat2& m) {
    return std::max({std::abs(m.m00), std::abs(m.m01), std::abs(m.m10), std::abs(m.m11)});
}

bool is_hermitian(const Mat2& m, double tol) { return max_abs(m - m.adjoint()) <= tol; }

double unitarity_defect(const Mat2& u) { return max_abs(u.adjoint() * u - Mat2::identity()); }

bool is_unitary(const Mat2& m, double tol) { return unitarity_defect(m) <= tol; }

Mat2 outer(const Vec2& a, const Vec2& b) {
    return {a.c0 * std::conj(b.c0), a.c0 * std::conj(b.c1),
            a.c1 * std::conj(b.c0), a.c1 * std::conj(b.c1)};
}

Mat2 pauli(int index) {
    switch (index) {
    case 1: return {0.0, 1.0, 1.0, 0.0};
    case 2: return {0.0, -I, I, 0.0};
    case 3: return {1.0, 0.0, 0.0, -1.0};
    default: throw DomainError("pauli: index must be 1, 2 or 3, got " + std::to_string(index));
    }
}

// Exact entries rather than (σ₁ ± iσ₂)/2 evaluated in floating point; the two agree bitwise anyway.
Mat2 sigma_plus() { return {0.0, 1.0, 0.0, 0.0}; }
Mat2 sigma_minus() { return {0.0, 0.0, 1.0, 0.0}; }

Mat2 hadamard() { return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}; }

Mat2 projector(const Vec2& v, double tol) {
    if (!v.is_finite() || std::abs(v.norm() - 1.0) > tol)
        throw DomainError("projector: input vector is not normalized");
    return outer(v, v);
}

SigmaOneEigenbasis sigma_one_eigenbasis() {
    return {Vec2{kInvSqrt2, kInvSqrt2}, Vec2{kInvSqrt2, -kInvSqrt2}};
}

StateVector::StateVector(const Vec2& v, double tol) : v_(v) {
    if (!v.is_finite())
        throw DomainError("StateVector: non-finite amplitude");
    if (std::abs(v.norm_squared() - 1.0) > tol)
        throw DomainError("StateVector: |c0|^2 + |c1|^2 = " + std::to_string(v.norm_squared()) + ", expected 1");
}

StateVector StateVector::normalized(const Vec2& v) {
    const double n = v.norm();
    if (!v.is_finite() || !(n > 0.0))
        throw DomainError("StateVector::normalized: vector is zero or non-finite");
    return StateVector((1.0 / n) * v, Unchecked{});
}

} // namespace strongdrive
