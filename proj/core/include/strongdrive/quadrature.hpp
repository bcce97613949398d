#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "strongdrive/linalg.hpp"

namespace strongdrive::quad {

/// Settings for globally adaptive Gauss–Kronrod (7, 15) integration.
struct Options {
    double abs_tol = 1e-10;
    /// Initial panels are at most this long (≤ 0: one panel over [a, b]).
    double max_panel = 0.0;
    /// Node budget, counted in subintervals.
    std::size_t max_intervals = 20000;
};

struct Result {
    cplx value{};
    double error = 0.0;  ///< Σ |K15 − G7| over the final partition
    std::size_t intervals = 0;
    bool converged = false;
};

namespace detail {

// Kronrod abscissae on [−1, 1] (non-negative half); odd indices are the Gauss points.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    cplx value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const cplx fc = f(center);
    cplx kronrod = fc * kWgk[7];
    cplx gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const cplx fsum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1)
            gauss += kWg[j / 2] * fsum;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace detail

/// ∫ₐᵇ f(x) dx for complex-valued f; a > b integrates backwards (sign flip).
///
/// The interval is first cut into equal panels no longer than opts.max_panel, then the panel
/// with the largest error is bisected until the summed error drops below opts.abs_tol. The
/// partition depends only on (a, b) and f, so results are deterministic.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opts) {
    if (a == b)
        return {cplx{}, 0.0, 0, true};
    if (a > b) {
        Result r = integrate(f, b, a, opts);
        r.value = -r.value;
        return r;
    }

    const double length = b - a;
    std::size_t panels = 1;
    if (opts.max_panel > 0.0)
        panels = static_cast<std::size_t>(std::max(1.0, std::ceil(length / opts.max_panel)));

    std::priority_queue<detail::Panel> heap;
    double total_error = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double lo = a + length * (static_cast<double>(i) / static_cast<double>(panels));
        const double hi = i + 1 == panels ? b : a + length * (static_cast<double>(i + 1) / static_cast<double>(panels));
        const detail::Panel panel = detail::gauss_kronrod_15(f, lo, hi);
        total_error += panel.error;
        heap.push(panel);
    }

    std::size_t intervals = panels;
    auto resum = [&heap] {
        // The incremental total drifts by rounding; recount before trusting it.
        auto copy = heap;
        double sum = 0.0;
        while (!copy.empty()) {
            sum += copy.top().error;
            copy.pop();
        }
        return sum;
    };
    while (intervals < opts.max_intervals) {
        if (total_error <= opts.abs_tol) {
            total_error = resum();
            if (total_error <= opts.abs_tol)
                break;
        }
        const detail::Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            break;  // cannot split further in double precision
        heap.pop();
        const detail::Panel left = detail::gauss_kronrod_15(f, worst.a, mid);
        const detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }

    // Sum in left-to-right order so the result does not depend on heap layout.
    std::vector<detail::Panel> parts;
    parts.reserve(heap.size());
    while (!heap.empty()) {
        parts.push_back(heap.top());
        heap.pop();
    }
    std::sort(parts.begin(), parts.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
    Result out;
    for (const auto& p : parts) {
        out.value += p.value;
        out.error += p.error;
    }
    out.intervals = intervals;
    out.converged = out.error <= opts.abs_tol;
    return out;
}

} // namespace strongdrive::quad
