#include "strongdrive/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "strongdrive/errors.hpp"
#include "strongdrive/strong_coupling.hpp"

namespace strongdrive {

namespace {

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                fn(i);
        });
}

void require_strictly_monotone(std::span<const double> axis, const char* what) {
    if (axis.empty())
        throw DomainError(std::string(what) + ": axis is empty");
    if (axis.size() < 2)
        return;
    const bool up = axis[1] > axis[0];
    for (std::size_t i = 1; i < axis.size(); ++i) {
        const bool ok = up ? axis[i] > axis[i - 1] : axis[i] < axis[i - 1];
        if (!ok)
            throw DomainError(std::string(what) + ": axis must be strictly monotone");
    }
}

/// Runs `point(i)` for each axis entry, turning numerical failures into NaN + message.
template <class Point>
void fill_scan(ScanResult& r, unsigned threads, Point&& point) {
    const std::size_t n = r.axis.size();
    r.metric.assign(n, std::numeric_limits<double>::quiet_NaN());
    r.errors.assign(n, std::string{});
    parallel_for(n, threads, [&](std::size_t i) {
        try {
            r.metric[i] = point(r.axis[i]);
        } catch (const IntegrationError& e) {
            r.errors[i] = e.what();
        } catch (const QuadratureError& e) {
            r.errors[i] = e.what();
        } catch (const DomainError& e) {
            r.errors[i] = e.what();
        }
    });
}

IntegratorConfig exact_config(const DriveParams& p, double quad_tol) {
    IntegratorConfig cfg = IntegratorConfig::defaults_for(p);
    cfg.rel_tol = std::min(1e-3, quad_tol / 10.0);
    cfg.abs_tol = std::min(1e-6, cfg.rel_tol / 100.0);
    return cfg;
}

} // namespace

double population_excited_closed_form(double t, const DriveParams& p) {
    return 0.5 * (1.0 - std::cos(2.0 * p.drive_phase(t)));
}

double fidelity(const StateVector& a, const Vec2& b) {
    const double nb = b.norm_squared();
    if (!b.is_finite() || !(nb > 0.0))
        throw DomainError("fidelity: second argument is zero or non-finite");
    return std::clamp(std::norm(inner(a.vec(), b)) / nb, 0.0, 1.0);
}

double trace_distance(const StateVector& a, const Vec2& b) { return std::sqrt(std::max(0.0, 1.0 - fidelity(a, b))); }

StateVector rwa_solution(double t, const StateVector& psi0, const DriveParams& p) {
    // Constant generator H̄ = x·σ₁ + z·σ₃ in the frame co-rotating with the drive.
    const double x = 0.5 * p.g();
    const double z = -0.5 * (p.delta() - p.omega());
    const double r = std::hypot(x, z);
    const double c = std::cos(r * t);
    const double s_over_r = r > 0.0 ? std::sin(r * t) / r : t;
    // e^{−iH̄t} = cos(rt)·I − i·sin(rt)/r·H̄
    const Mat2 u{cplx{c, -s_over_r * z}, cplx{0.0, -s_over_r * x}, cplx{0.0, -s_over_r * x},
                 cplx{c, s_over_r * z}};
    const double half_phase = 0.5 * p.omega() * t;
    const Vec2 chi = u * psi0.vec();
    const Vec2 psi{std::polar(1.0, half_phase) * chi.c0, std::polar(1.0, -half_phase) * chi.c1};
    return StateVector(psi, 1e-12);
}

bool ScanResult::all_ok() const {
    return std::all_of(errors.begin(), errors.end(), [](const std::string& e) { return e.empty(); });
}

double max_infidelity(const DriveParams& p, cplx alpha, cplx beta, double horizon, std::size_t samples,
                      double quad_tol) {
    require_normalized_constants(alpha, beta);
    const auto grid = uniform_grid(horizon, samples);
    const StateVector psi0(reconstruct_full(0.0, Vec2{alpha, beta}, p), 1e-12);
    const Trajectory exact = propagate(p, psi0, grid, exact_config(p, quad_tol));
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const StateVector ref = StateVector::normalized(exact.states[i]);
        const Vec2 approx = approx_solution(grid[i], alpha, beta, p, quad_tol);
        worst = std::max(worst, 1.0 - fidelity(ref, approx));
    }
    return worst;
}

ScanResult infidelity_scan(const DriveParams& p_base, std::span<const double> delta_values, double horizon,
                           std::size_t samples, double quad_tol, const ScanOptions& opts) {
    require_strictly_monotone(delta_values, "infidelity_scan");
    if (!(horizon > 0.0) || samples < 2 || !(quad_tol > 0.0))
        throw DomainError("infidelity_scan: need horizon > 0, samples >= 2, quad_tol > 0");
    for (double d : delta_values)
        if (!(d >= 0.0))
            throw DomainError("infidelity_scan: delta values must be >= 0");
    require_normalized_constants(opts.alpha, opts.beta);

    ScanResult r{"delta", "max_infidelity", {delta_values.begin(), delta_values.end()}, {}, {}, p_base, horizon,
                 samples, quad_tol, exact_config(p_base, quad_tol).rel_tol};
    fill_scan(r, opts.threads, [&](double delta) {
        return max_infidelity(p_base.with_delta(delta), opts.alpha, opts.beta, horizon, samples, quad_tol);
    });
    return r;
}

ScanResult bloch_siegert_proxy_scan(const DriveParams& p_base, std::span<const double> omega_values, double horizon,
                                    std::size_t samples, const ScanOptions& opts) {
    require_strictly_monotone(omega_values, "bloch_siegert_proxy_scan");
    if (!(horizon > 0.0))
        throw DomainError("bloch_siegert_proxy_scan: horizon must be > 0");
    for (double w : omega_values)
        if (!(w > 0.0))
            throw DomainError("bloch_siegert_proxy_scan: omega values must be > 0");

    const IntegratorConfig base_cfg = IntegratorConfig::defaults_for(p_base);
    ScanResult r{"omega", "max_trace_distance", {omega_values.begin(), omega_values.end()}, {}, {}, p_base, horizon,
                 samples, 0.0, base_cfg.rel_tol};
    fill_scan(r, opts.threads, [&](double omega) {
        const DriveParams p = p_base.with_omega(omega);
        const auto per_period = static_cast<std::size_t>(std::ceil(32.0 * horizon / p.period())) + 1;
        const auto grid = uniform_grid(horizon, std::max(samples, per_period));
        const StateVector psi0(basis0());
        const Trajectory full = propagate(p, psi0, grid, IntegratorConfig::defaults_for(p));
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const StateVector rwa = rwa_solution(grid[i], psi0, p);
            worst = std::max(worst, trace_distance(rwa, full.states[i]));
        }
        return worst;
    });
    return r;
}

} // namespace strongdrive
