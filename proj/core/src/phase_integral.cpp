#include "strongdrive/phase_integral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "strongdrive/errors.hpp"
#include "strongdrive/quadrature.hpp"

namespace strongdrive {

namespace {

void check_sign(int sign) {
    if (sign != 1 && sign != -1)
        throw DomainError("phase integral: sign must be +1 or -1");
}

/// Jₙ(z) for any integer n and real z.
double bessel_j(int n, double z) {
    const int m = n < 0 ? -n : n;
    double value = std::cyl_bessel_j(static_cast<double>(m), std::abs(z));
    // J₋ₙ = (−1)ⁿ Jₙ and Jₙ(−z) = (−1)ⁿ Jₙ(z).
    const bool odd = (m % 2) == 1;
    if (odd && n < 0)
        value = -value;
    if (odd && z < 0.0)
        value = -value;
    return value;
}

} // namespace

cplx phase_factor(double s, int sign, const DriveParams& p) {
    return std::polar(1.0, sign * 2.0 * p.drive_ratio() * std::sin(p.omega() * s));
}

PhaseIntegralResult phase_integral_quadrature(double t, int sign, const DriveParams& p, double tol) {
    check_sign(sign);
    if (!(t >= 0.0) || !std::isfinite(t))
        throw DomainError("phase_integral_quadrature: t must be finite and >= 0");
    if (!(tol > 0.0))
        throw DomainError("phase_integral_quadrature: tol must be > 0");

    PhaseIntegralResult r{cplx{}, t, sign, PhaseMethod::quadrature, 0.0};
    if (t == 0.0)
        return r;
    if (p.g() == 0.0) {
        r.value = t;
        return r;
    }

    quad::Options opts;
    opts.abs_tol = tol;
    opts.max_panel = 0.5 * p.period();
    opts.max_intervals = 200000;
    const auto q = quad::integrate([&](double s) { return phase_factor(s, sign, p); }, 0.0, t, opts);
    if (!q.converged)
        throw QuadratureError("phase_integral_quadrature: tolerance not reached within the node budget", 0);
    r.value = q.value;
    r.err_estimate = q.error;
    return r;
}

PhaseIntegralResult phase_integral_bessel(double t, int sign, const DriveParams& p, int n_terms) {
    check_sign(sign);
    if (n_terms < 1)
        throw DomainError("phase_integral_bessel: n_terms must be >= 1");
    if (!std::isfinite(t))
        throw DomainError("phase_integral_bessel: t must be finite");

    const double z = sign * 2.0 * p.drive_ratio();
    const double w = p.omega();
    PhaseIntegralResult r{cplx{}, t, sign, PhaseMethod::bessel_series, 0.0};

    cplx sum = bessel_j(0, z) * t;
    for (int n = 1; n <= n_terms; ++n) {
        const double nw = n * w;
        // (e^{inωt} − 1)/(inω) for ±n, written without cancellation in the real part.
        const double sn = std::sin(nw * t);
        const double half = std::sin(0.5 * nw * t);
        const cplx pos{sn / nw, 2.0 * half * half / nw};  // n > 0
        const cplx neg = std::conj(pos);                    // n < 0
        sum += bessel_j(n, z) * pos + bessel_j(-n, z) * neg;
    }
    r.value = sum;

    double tail = 0.0;
    for (int n = n_terms + 1; n <= n_terms + 40; ++n)
        tail += 4.0 * std::abs(bessel_j(n, z)) / (n * w);
    r.err_estimate = tail;
    return r;
}

int default_bessel_terms(const DriveParams& p) {
    return static_cast<int>(std::ceil(2.0 * p.drive_ratio())) + 25;
}

PhaseIntegralResult phase_integral_checked(double t, int sign, const DriveParams& p, double tol) {
    const PhaseIntegralResult q = phase_integral_quadrature(t, sign, p, tol);
    const PhaseIntegralResult b = phase_integral_bessel(t, sign, p, default_bessel_terms(p));
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t);
    const double budget = 10.0 * (tol + b.err_estimate) + rounding;
    if (std::abs(q.value - b.value) > budget)
        throw QuadratureError("phase integral: quadrature and Bessel series disagree at t = " + std::to_string(t), 0);
    return q;
}

} // namespace strongdrive
