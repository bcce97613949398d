#pragma once

#include <complex>

namespace strongdrive {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

/// Pair of complex amplitudes in the σ₃ basis, (c0, c1) = c0|0) + c1|1).
struct Vec2 {
    cplx c0{};
    cplx c1{};

    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;

    Vec2& operator+=(const Vec2& o) { c0 += o.c0; c1 += o.c1; return *this; }
    Vec2& operator-=(const Vec2& o) { c0 -= o.c0; c1 -= o.c1; return *this; }
    Vec2& operator*=(cplx s) { c0 *= s; c1 *= s; return *this; }

    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend Vec2 operator*(cplx s, Vec2 v) { return v *= s; }
    friend Vec2 operator*(Vec2 v, cplx s) { return v *= s; }

    double norm_squared() const { return std::norm(c0) + std::norm(c1); }
    double norm() const;
    bool is_finite() const;
};

/// ⟨a|b⟩, antilinear in the first argument.
cplx inner(const Vec2& a, const Vec2& b);

/// 2×2 complex matrix, entries in row-major order: [[m00, m01], [m10, m11]].
struct Mat2 {
    cplx m00{}, m01{};
    cplx m10{}, m11{};

    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }
    static Mat2 diag(cplx d0, cplx d1) { return {d0, 0.0, 0.0, d1}; }

    Mat2& operator+=(const Mat2& o);
    Mat2& operator-=(const Mat2& o);
    Mat2& operator*=(cplx s);

    friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
    friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
    friend Mat2 operator*(cplx s, Mat2 m) { return m *= s; }
    friend Mat2 operator*(Mat2 m, cplx s) { return m *= s; }
    friend Mat2 operator*(const Mat2& a, const Mat2& b);
    friend Vec2 operator*(const Mat2& m, const Vec2& v);

    Mat2 adjoint() const;
    cplx trace() const { return m00 + m11; }
    cplx det() const { return m00 * m11 - m01 * m10; }
    bool is_finite() const;
};

/// Largest entry modulus.
double max_abs(const Mat2& m);

bool is_hermitian(const Mat2& m, double tol = 1e-12);
bool is_unitary(const Mat2& m, double tol = 1e-10);

/// ‖U†U − I‖_max.
double unitarity_defect(const Mat2& u);

/// Outer product |a⟩⟨b|.
Mat2 outer(const Vec2& a, const Vec2& b);

// Pauli algebra ------------------------------------------------------------

/// Standard Pauli matrix σ_index, index ∈ {1, 2, 3}. Throws DomainError otherwise.
Mat2 pauli(int index);

/// σ₊ = (σ₁ + iσ₂)/2 = |0)(1|.
Mat2 sigma_plus();
/// σ₋ = (σ₁ − iσ₂)/2 = |1)(0|.
Mat2 sigma_minus();

/// Walsh–Hadamard matrix W = [[1,1],[1,−1]]/√2. W = W⁻¹ = W†, and W σ₃ W = σ₁.
Mat2 hadamard();

/// Rank-one projector |v⟩⟨v| for a unit vector. Throws DomainError if |‖v‖ − 1| > tol.
Mat2 projector(const Vec2& v, double tol = 1e-12);

/// Computational basis kets |0) = (1,0)ᵗ and |1) = (0,1)ᵗ.
inline Vec2 basis0() { return {1.0, 0.0}; }
inline Vec2 basis1() { return {0.0, 1.0}; }

/// Eigenvectors of σ₁: ket_plus = (1,1)/√2 (eigenvalue +1), ket_minus = (1,−1)/√2 (eigenvalue −1).
/// σ₃ swaps them.
struct SigmaOneEigenbasis {
    Vec2 ket_plus;
    Vec2 ket_minus;
};

SigmaOneEigenbasis sigma_one_eigenbasis();

/// Normalized state vector. Construction checks finiteness and unit norm.
class StateVector {
public:
    explicit StateVector(const Vec2& v, double tol = 1e-12);
    StateVector(cplx c0, cplx c1, double tol = 1e-12) : StateVector(Vec2{c0, c1}, tol) {}

    /// Rescales a finite non-zero vector to unit norm.
    static StateVector normalized(const Vec2& v);

    const Vec2& vec() const noexcept { return v_; }
    operator const Vec2&() const noexcept { return v_; }
    cplx c0() const noexcept { return v_.c0; }
    cplx c1() const noexcept { return v_.c1; }

    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    struct Unchecked {};
    StateVector(const Vec2& v, Unchecked) : v_(v) {}
    Vec2 v_;
};

} // namespace strongdrive
