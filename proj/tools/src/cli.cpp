#include "strongdrive/cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "strongdrive/analysis.hpp"
#include "strongdrive/errors.hpp"
#include "strongdrive/phase_integral.hpp"
#include "strongdrive/propagator.hpp"
#include "strongdrive/strong_coupling.hpp"

namespace strongdrive::cli {

namespace {

using json = nlohmann::json;

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kNormalizationTol = 1e-9;

constexpr std::pair<Command, std::string_view> kCommandNames[] = {
    {Command::simulate, "simulate"},     {Command::approx, "approx"},     {Command::compare, "compare"},
    {Command::scan_delta, "scan-delta"}, {Command::scan_rwa, "scan-rwa"}, {Command::phase_integral, "phase-integral"},
};

// Keys shared by flags (with a leading "--") and the config file.
constexpr std::string_view kKeys[] = {
    "command", "delta",   "g",        "omega",    "alpha", "beta", "psi0",   "psi1",   "theta",
    "equal-superposition", "t-max",   "samples",  "rel-tol", "abs-tol", "quad-tol", "order", "sign",
    "deltas",  "omegas",  "out",
};

double parse_number(std::string_view text, std::string_view key) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw UsageError("--" + std::string(key) + ": expected a number, got '" + std::string(text) + "'");
    return value;
}

long long parse_integer(std::string_view text, std::string_view key) {
    long long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last)
        throw UsageError("--" + std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
    return value;
}

std::vector<double> parse_list(std::string_view text, std::string_view key) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
        values.push_back(parse_number(text.substr(start, end - start), key));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return values;
}

/// Merge state before validation; every field is optional until finalize().
struct Draft {
    std::optional<Command> command;
    double delta = 0.1;
    double g = 1.0;
    double omega = 1.0;
    std::optional<cplx> alpha, beta, psi0, psi1;
    std::optional<double> theta;
    bool equal_superposition = false;
    double t_max = 10.0;
    long long samples = 0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double quad_tol = 1e-10;
    long long order = 1;
    long long sign = 1;
    std::vector<double> deltas{0.2, 0.1, 0.05, 0.025};
    std::vector<double> omegas{0.5, 1.0, 1.5, 2.0};
    std::string out;
};

Draft draft_from(const RunConfig& c) {
    Draft d;
    d.command = c.command;
    d.delta = c.params.delta();
    d.g = c.params.g();
    d.omega = c.params.omega();
    d.alpha = c.alpha;
    d.beta = c.beta;
    d.t_max = c.t_max;
    d.samples = static_cast<long long>(c.samples);
    d.rel_tol = c.rel_tol;
    d.abs_tol = c.abs_tol;
    d.quad_tol = c.quad_tol;
    d.order = c.order;
    d.sign = c.sign;
    d.deltas = c.deltas;
    d.omegas = c.omegas;
    d.out = c.out;
    return d;
}

std::string as_text(const json& v, std::string_view key) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number() || v.is_boolean())
        return v.dump();
    throw UsageError("config key '" + std::string(key) + "': unsupported value " + v.dump());
}

/// Applies one key. Values arrive either as flag strings or as JSON values from a config file.
void apply(Draft& d, std::string_view key, const json& v) {
    auto number = [&] {
        if (v.is_number())
            return v.get<double>();
        return parse_number(as_text(v, key), key);
    };
    auto integer = [&] {
        if (v.is_number_integer())
            return v.get<long long>();
        return parse_integer(as_text(v, key), key);
    };
    auto complex = [&] {
        if (v.is_number())
            return cplx{v.get<double>(), 0.0};
        try {
            return parse_complex(as_text(v, key));
        } catch (const UsageError& e) {
            throw UsageError("--" + std::string(key) + ": " + e.what());
        }
    };
    auto list = [&] {
        if (v.is_array()) {
            std::vector<double> values;
            for (const auto& item : v) {
                if (!item.is_number())
                    throw UsageError("config key '" + std::string(key) + "': list entries must be numbers");
                values.push_back(item.get<double>());
            }
            return values;
        }
        return parse_list(as_text(v, key), key);
    };

    if (key == "command") {
        const auto c = command_from_string(as_text(v, key));
        if (!c)
            throw UsageError("unknown command '" + as_text(v, key) + "'");
        d.command = *c;
    } else if (key == "delta") d.delta = number();
    else if (key == "g") d.g = number();
    else if (key == "omega") d.omega = number();
    else if (key == "alpha") d.alpha = complex();
    else if (key == "beta") d.beta = complex();
    else if (key == "psi0") d.psi0 = complex();
    else if (key == "psi1") d.psi1 = complex();
    else if (key == "theta") d.theta = number();
    else if (key == "equal-superposition") {
        if (v.is_boolean())
            d.equal_superposition = v.get<bool>();
        else {
            const std::string s = as_text(v, key);
            if (s != "true" && s != "false")
                throw UsageError("--equal-superposition: expected true or false");
            d.equal_superposition = s == "true";
        }
    } else if (key == "t-max") d.t_max = number();
    else if (key == "samples") d.samples = integer();
    else if (key == "rel-tol") d.rel_tol = number();
    else if (key == "abs-tol") d.abs_tol = number();
    else if (key == "quad-tol") d.quad_tol = number();
    else if (key == "order") d.order = integer();
    else if (key == "sign") d.sign = integer();
    else if (key == "deltas") d.deltas = list();
    else if (key == "omegas") d.omegas = list();
    else if (key == "out") d.out = as_text(v, key);
    else
        throw UsageError("unknown option '" + std::string(key) + "'");
}

void apply_text(Draft& d, std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw UsageError("config file must contain a flat JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (value.is_object() || value.is_null())
            throw UsageError("config key '" + key + "': nested values are not supported");
        apply(d, key, value);
    }
}

/// Returns (α, β)/‖(α, β)‖ after checking the norm is 1 within kNormalizationTol.
std::pair<cplx, cplx> normalized_pair(cplx a, cplx b, std::string_view what) {
    const double n = std::norm(a) + std::norm(b);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormalizationTol)
        throw UsageError(std::string(what) + " must satisfy |.|^2 + |.|^2 = 1 (got " + format_double(n) + ")");
    if (std::abs(n - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
        const double s = 1.0 / std::sqrt(n);
        a *= s;
        b *= s;
    }
    return {a, b};
}

void require_monotone(const std::vector<double>& v, std::string_view key) {
    if (v.empty())
        throw UsageError("--" + std::string(key) + ": list is empty");
    for (std::size_t i = 1; i < v.size(); ++i) {
        const bool up = v[1] > v[0];
        if (up ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1]))
            throw UsageError("--" + std::string(key) + ": values must be strictly monotone");
    }
}

RunConfig finalize(const Draft& d) {
    RunConfig c;
    if (!d.command)
        throw UsageError("missing command (simulate, approx, compare, scan-delta, scan-rwa, phase-integral)");
    c.command = *d.command;
    try {
        c.params = DriveParams(d.delta, d.g, d.omega);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }

    const bool has_constants = d.alpha || d.beta;
    const bool has_lab_state = d.psi0 || d.psi1;
    const bool equal_mode = d.equal_superposition || d.theta.has_value();
    if (int(has_constants) + int(has_lab_state) + int(equal_mode) > 1)
        throw UsageError("specify the initial state once: --alpha/--beta, --psi0/--psi1, or "
                         "--equal-superposition/--theta");
    if (equal_mode) {
        const cplx v = std::polar(kInvSqrt2, d.theta.value_or(0.0));
        c.alpha = v;
        c.beta = v;
    } else if (has_lab_state) {
        const auto [p0, p1] = normalized_pair(d.psi0.value_or(0.0), d.psi1.value_or(0.0), "(psi0, psi1)");
        // φ(0) = W·ψ(0)
        c.alpha = kInvSqrt2 * (p0 + p1);
        c.beta = kInvSqrt2 * (p0 - p1);
        std::tie(c.alpha, c.beta) = normalized_pair(c.alpha, c.beta, "(alpha, beta)");
    } else if (has_constants) {
        std::tie(c.alpha, c.beta) = normalized_pair(d.alpha.value_or(0.0), d.beta.value_or(0.0), "(alpha, beta)");
    } else {
        c.alpha = kInvSqrt2;
        c.beta = kInvSqrt2;
    }

    if (!(d.t_max > 0.0))
        throw UsageError("--t-max must be > 0");
    c.t_max = d.t_max;
    if (d.samples == 0) {
        const double per_period = std::ceil(32.0 * d.t_max / c.params.period()) + 1.0;
        c.samples = static_cast<std::size_t>(std::max(201.0, per_period));
    } else if (d.samples < 2) {
        throw UsageError("--samples must be >= 2");
    } else {
        c.samples = static_cast<std::size_t>(d.samples);
    }

    c.rel_tol = d.rel_tol;
    c.abs_tol = d.abs_tol;
    try {
        IntegratorConfig probe{c.rel_tol, c.abs_tol, 1.0, 0.0};
        probe.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (!(d.quad_tol > 0.0))
        throw UsageError("--quad-tol must be > 0");
    c.quad_tol = d.quad_tol;
    if (d.order < 0 || d.order > 8)
        throw UsageError("--order must lie in [0, 8]");
    c.order = static_cast<int>(d.order);
    if (d.sign != 1 && d.sign != -1)
        throw UsageError("--sign must be 1 or -1");
    c.sign = static_cast<int>(d.sign);

    require_monotone(d.deltas, "deltas");
    for (double x : d.deltas)
        if (!(x >= 0.0))
            throw UsageError("--deltas: values must be >= 0");
    c.deltas = d.deltas;
    require_monotone(d.omegas, "omegas");
    for (double x : d.omegas)
        if (!(x > 0.0))
            throw UsageError("--omegas: values must be > 0");
    c.omegas = d.omegas;

    c.out = d.out.empty() ? std::string(to_string(c.command)) + ".csv" : d.out;
    return c;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// CSV -----------------------------------------------------------------------

class Csv {
public:
    explicit Csv(std::initializer_list<std::string_view> header) {
        bool first = true;
        for (auto h : header) {
            if (!first)
                text_ += ',';
            text_ += h;
            first = false;
        }
        text_ += '\n';
    }

    template <class... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        ((text_ += (first ? "" : ","), text_ += cell(cells), first = false), ...);
        text_ += '\n';
    }

    const std::string& text() const { return text_; }

private:
    static std::string cell(double x) { return format_double(x); }
    static std::string cell(std::size_t x) { return std::to_string(x); }
    static std::string cell(const std::string& s) { return s; }

    std::string text_;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes the CSV; returns the stream that should receive the summary line.
std::ostream& emit(const RunConfig& cfg, const Csv& csv, std::ostream& out, std::ostream& err) {
    if (cfg.out == "-") {
        out << csv.text();
        return err;
    }
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file)
        throw IoError("cannot open '" + cfg.out + "' for writing");
    file << csv.text();
    file.flush();
    if (!file)
        throw IoError("failed writing '" + cfg.out + "'");
    return out;
}

IntegratorConfig integrator(const RunConfig& cfg) {
    IntegratorConfig ic = IntegratorConfig::defaults_for(cfg.params);
    ic.rel_tol = cfg.rel_tol;
    ic.abs_tol = cfg.abs_tol;
    return ic;
}

/// Approximate lab-frame state at order cfg.order (order 1 is approx_solution).
class Approximant {
public:
    explicit Approximant(const RunConfig& cfg)
        : cfg_(cfg), picard_(cfg.params, cfg.alpha, cfg.beta, cfg.order, cfg.quad_tol) {}

    Vec2 operator()(double t) const {
        if (cfg_.order == 1)
            return approx_solution(t, cfg_.alpha, cfg_.beta, cfg_.params, cfg_.quad_tol);
        return picard_.psi(t);
    }

private:
    const RunConfig& cfg_;
    PicardSolution picard_;
};

int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto grid = uniform_grid(cfg.t_max, cfg.samples);
    const StateVector psi0(cfg.initial_state(), 1e-12);
    const Trajectory traj = propagate(cfg.params, psi0, grid, integrator(cfg));
    Csv csv{"t", "re_psi0", "im_psi0", "re_psi1", "im_psi1", "pop_excited", "norm"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec2& s = traj.states[i];
        csv.row(grid[i], s.c0.real(), s.c0.imag(), s.c1.real(), s.c1.imag(), std::norm(s.c1), s.norm());
    }
    std::ostream& summary = emit(cfg, csv, out, err);
    summary << "simulate: rows=" << grid.size()
            << " final_norm_drift=" << format_double(std::abs(traj.final_state().norm() - 1.0))
            << " max_norm_drift=" << format_double(traj.max_norm_drift) << '\n';
    return 0;
}

int run_approx(const RunConfig& cfg, std::ostream& out, std::ostream& err, bool compare) {
    const auto grid = uniform_grid(cfg.t_max, cfg.samples);
    const Approximant approx(cfg);
    std::optional<Trajectory> exact;
    if (compare) {
        const StateVector psi0(cfg.initial_state(), 1e-12);
        exact = propagate(cfg.params, psi0, grid, integrator(cfg));
    }

    Csv csv = compare ? Csv{"t", "re_psi0", "im_psi0", "re_psi1", "im_psi1", "pop_excited", "fidelity_vs_exact", "norm"}
                      : Csv{"t", "re_psi0", "im_psi0", "re_psi1", "im_psi1", "pop_excited", "norm"};
    double max_infidelity = 0.0;
    double max_norm_dev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec2 s = approx(grid[i]);
        const double norm = s.norm();
        max_norm_dev = std::max(max_norm_dev, std::abs(norm - 1.0));
        if (compare) {
            const double f = fidelity(StateVector::normalized(exact->states[i]), s);
            max_infidelity = std::max(max_infidelity, 1.0 - f);
            csv.row(grid[i], s.c0.real(), s.c0.imag(), s.c1.real(), s.c1.imag(), std::norm(s.c1), f, norm);
        } else {
            csv.row(grid[i], s.c0.real(), s.c0.imag(), s.c1.real(), s.c1.imag(), std::norm(s.c1), norm);
        }
    }
    std::ostream& summary = emit(cfg, csv, out, err);
    summary << to_string(cfg.command) << ": order=" << cfg.order << " rows=" << grid.size();
    if (compare)
        summary << " max_infidelity=" << format_double(max_infidelity);
    summary << " max_norm_deviation=" << format_double(max_norm_dev) << '\n';
    return 0;
}

int run_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    ScanOptions opts;
    opts.alpha = cfg.alpha;
    opts.beta = cfg.beta;
    opts.threads = worker_threads();
    const bool delta_scan = cfg.command == Command::scan_delta;
    const ScanResult r = delta_scan ? infidelity_scan(cfg.params, cfg.deltas, cfg.t_max, cfg.samples, cfg.quad_tol, opts)
                                    : bloch_siegert_proxy_scan(cfg.params, cfg.omegas, cfg.t_max, cfg.samples, opts);

    Csv csv{"axis", "metric", "delta", "g", "omega", "t_max", "samples", "status"};
    std::size_t failures = 0;
    for (std::size_t i = 0; i < r.axis.size(); ++i) {
        const DriveParams p = delta_scan ? cfg.params.with_delta(r.axis[i]) : cfg.params.with_omega(r.axis[i]);
        const bool ok = r.errors[i].empty();
        if (!ok) {
            ++failures;
            err << to_string(cfg.command) << ": point " << format_double(r.axis[i]) << " failed: " << r.errors[i]
                << '\n';
        }
        csv.row(r.axis[i], r.metric[i], p.delta(), p.g(), p.omega(), cfg.t_max, cfg.samples,
                std::string(ok ? "ok" : "failed"));
    }
    std::ostream& summary = emit(cfg, csv, out, err);
    summary << to_string(cfg.command) << ": points=" << r.axis.size() << " metric=" << r.metric_name << " values=";
    for (std::size_t i = 0; i < r.metric.size(); ++i)
        summary << (i ? ";" : "") << format_double(r.metric[i]);
    summary << " failures=" << failures << '\n';
    return failures == 0 ? 0 : 1;
}

int run_phase_integral(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto grid = uniform_grid(cfg.t_max, cfg.samples);
    const int terms = default_bessel_terms(cfg.params);
    Csv csv{"t", "re_quad", "im_quad", "err_quad", "re_bessel", "im_bessel", "err_bessel", "discrepancy"};
    double max_disc = 0.0;
    for (double t : grid) {
        const auto q = phase_integral_quadrature(t, cfg.sign, cfg.params, cfg.quad_tol);
        const auto b = phase_integral_bessel(t, cfg.sign, cfg.params, terms);
        const double disc = std::abs(q.value - b.value);
        max_disc = std::max(max_disc, disc);
        csv.row(t, q.value.real(), q.value.imag(), q.err_estimate, b.value.real(), b.value.imag(), b.err_estimate,
                disc);
    }
    std::ostream& summary = emit(cfg, csv, out, err);
    summary << "phase-integral: sign=" << cfg.sign << " rows=" << grid.size() << " bessel_terms=" << terms
            << " max_discrepancy=" << format_double(max_disc) << '\n';
    return 0;
}

} // namespace

std::string_view to_string(Command c) {
    for (const auto& [cmd, name] : kCommandNames)
        if (cmd == c)
            return name;
    return "unknown";
}

std::optional<Command> command_from_string(std::string_view name) {
    for (const auto& [cmd, n] : kCommandNames)
        if (n == name)
            return cmd;
    return std::nullopt;
}

Vec2 RunConfig::initial_state() const {
    return {kInvSqrt2 * (alpha + beta), kInvSqrt2 * (alpha - beta)};
}

std::string format_double(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::string format_complex(cplx z) {
    std::string s = format_double(z.real());
    const double im = z.imag();
    s += (std::signbit(im) ? "-" : "+");
    s += format_double(std::abs(im));
    s += 'i';
    return s;
}

cplx parse_complex(std::string_view text) {
    if (text.empty())
        throw UsageError("empty complex value");
    if (text.back() != 'i')
        return {parse_number(text, "complex"), 0.0};

    const std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not a leading sign and not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);

    double im = 0.0;
    if (im_part.empty() || im_part == "+")
        im = 1.0;
    else if (im_part == "-")
        im = -1.0;
    else
        im = parse_number(im_part, "complex");
    const double re = re_part.empty() ? 0.0 : parse_number(re_part, "complex");
    return {re, im};
}

RunConfig apply_config_text(const RunConfig& base, std::string_view text) {
    Draft d = draft_from(base);
    apply_text(d, text);
    return finalize(d);
}

std::string to_config_text(const RunConfig& cfg) {
    json doc = json::object();
    doc["command"] = std::string(to_string(cfg.command));
    doc["delta"] = cfg.params.delta();
    doc["g"] = cfg.params.g();
    doc["omega"] = cfg.params.omega();
    doc["alpha"] = format_complex(cfg.alpha);
    doc["beta"] = format_complex(cfg.beta);
    doc["t-max"] = cfg.t_max;
    doc["samples"] = cfg.samples;
    doc["rel-tol"] = cfg.rel_tol;
    doc["abs-tol"] = cfg.abs_tol;
    doc["quad-tol"] = cfg.quad_tol;
    doc["order"] = cfg.order;
    doc["sign"] = cfg.sign;
    doc["deltas"] = cfg.deltas;
    doc["omegas"] = cfg.omegas;
    doc["out"] = cfg.out;
    return doc.dump(2) + "\n";
}

RunConfig parse_args(std::span<const std::string> args) {
    CLI::App app{"strongdrive: driven two-level system beyond the rotating-wave approximation", "strongdrive"};
    app.allow_extras(false);

    std::string command;
    app.add_option("command", command,
                   "simulate | approx | compare | scan-delta | scan-rwa | phase-integral");

    std::map<std::string, std::string, std::less<>> raw;
    std::map<std::string, CLI::Option*, std::less<>> opts;
    const std::map<std::string_view, std::string_view> help{
        {"delta", "level splitting (angular frequency)"},
        {"g", "drive coupling"},
        {"omega", "drive frequency (> 0)"},
        {"alpha", "drive-frame constant alpha, e.g. 0.6+0.8i"},
        {"beta", "drive-frame constant beta"},
        {"psi0", "lab-frame initial amplitude of |0)"},
        {"psi1", "lab-frame initial amplitude of |1)"},
        {"theta", "phase for alpha = beta = exp(i theta)/sqrt(2)"},
        {"t-max", "time horizon"},
        {"samples", "grid points on [0, t-max] (0: 32 per period, at least 201)"},
        {"rel-tol", "propagator relative tolerance"},
        {"abs-tol", "propagator absolute tolerance"},
        {"quad-tol", "quadrature tolerance"},
        {"order", "Picard order for approx/compare (1 = lowest-order solution)"},
        {"sign", "phase-integral sign, +1 or -1"},
        {"deltas", "comma-separated delta values for scan-delta"},
        {"omegas", "comma-separated omega values for scan-rwa"},
        {"out", "CSV output path ('-' for stdout)"},
    };
    for (std::string_view key : kKeys) {
        if (key == "command" || key == "equal-superposition")
            continue;
        const std::string k(key);
        opts[k] = app.add_option("--" + k, raw[k], std::string(help.at(key)));
    }
    bool equal_superposition = false;
    auto* eq_flag =
        app.add_flag("--equal-superposition", equal_superposition, "use alpha = beta = exp(i theta)/sqrt(2)");
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override it)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    Draft d;
    if (!config_path.empty())
        apply_text(d, read_file(config_path));
    if (!command.empty())
        apply(d, "command", json(command));
    for (const auto& [key, opt] : opts)
        if (opt->count() > 0)
            apply(d, key, json(raw[key]));
    if (eq_flag->count() > 0)
        d.equal_superposition = equal_superposition;
    return finalize(d);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
        case Command::simulate: return run_simulate(cfg, out, err);
        case Command::approx: return run_approx(cfg, out, err, false);
        case Command::compare: return run_approx(cfg, out, err, true);
        case Command::scan_delta:
        case Command::scan_rwa: return run_scan(cfg, out, err);
        case Command::phase_integral: return run_phase_integral(cfg, out, err);
        }
    } catch (const IntegrationError& e) {
        err << "strongdrive: integration failed at t = " << format_double(e.time()) << ": " << e.what() << '\n';
    } catch (const QuadratureError& e) {
        err << "strongdrive: quadrature failed (nesting level " << e.level() << "): " << e.what() << '\n';
    } catch (const IoError& e) {
        err << "strongdrive: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "strongdrive: " << e.what() << '\n';
    }
    return 1;
}

int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const UsageError& e) {
        err << "strongdrive: " << e.what() << "\nRun 'strongdrive --help' for usage.\n";
        return 2;
    }
    return run(cfg, out, err);
}

unsigned worker_threads() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("STRONGDRIVE_THREADS")) {
        unsigned cap = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
        if (ec == std::errc{} && ptr == s.data() + s.size() && cap > 0)
            n = std::min(n, cap);
    }
    return n;
}

} // namespace strongdrive::cli
