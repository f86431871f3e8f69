// Acceptance checks: one PASS/FAIL line per criterion.
//
//   nematic_acceptance            run every criterion
//   nematic_acceptance NAME...    run the named criteria only
//
// Exit status is the number of failed criteria.

#include <nematic/diagnostics.hpp>
#include <nematic/director.hpp>
#include <nematic/evolution.hpp>
#include <nematic/standing_wave.hpp>
#include <nematic/sweeps.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

using namespace nematic;

namespace {

struct Verdict
{
    bool pass = true;
    std::string detail;
};

__attribute__((format(printf, 3, 4))) void note(Verdict& v, bool ok, char const* fmt, ...)
{
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    if (!v.detail.empty())
        v.detail += "; ";
    v.detail += buf;
    if (!ok) {
        v.detail += " [x]";
        v.pass = false;
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Grid half_grid(double length, double dx)
{
    return Grid::half_line(std::size_t(std::lround(length / dx)) + 1, dx);
}

std::size_t support_end(RealProfile const& f)
{
    std::size_t i = 0;
    while (i < f.size() && f[i] > 0)
        ++i;
    return i;
}

bool strictly_decreasing(RealProfile const& f)
{
    auto const end = support_end(f);
    if (end < 2)
        return false;
    for (std::size_t i = 0; i + 1 < end; ++i)
        if (!(f[i + 1] < f[i]))
            return false;
    return true;
}

double rel_l2(RealProfile const& a, RealProfile const& b)
{
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

/// Sup of |a - b| over nodes with x <= x_max.
double sup_diff(RealProfile const& a, RealProfile const& b, double x_max)
{
    double m = 0;
    for (std::size_t i = 0; i < a.size() && a.grid.x(i) <= x_max; ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Params reference_params()
{
    return Params{};  // H = 1, mu = -0.8, lambda = 0.1, b = 1
}

StandingWave const& reference_wave()
{
    static StandingWave const sw = picard_fixed_point(reference_params(), default_standing_grid());
    return sw;
}

Verdict fig1()
{
    Verdict v;
    PicardConfig pcfg;
    pcfg.max_iters = 15;
    auto const t0 = std::chrono::steady_clock::now();
    auto const out = picard_iterate(reference_params(), default_standing_grid(), pcfg);
    double const secs = seconds_since(t0);
    auto const& sw = out.wave;

    note(v, sw.converged && sw.picard_iters_used <= 15, "converged=%s in %d iterations",
         sw.converged ? "yes" : "no", sw.picard_iters_used);
    note(v, !sw.deltas.empty() && sw.deltas.back() <= 1e-4, "final delta %.2e (<= 1e-4)",
         sw.deltas.empty() ? NAN : sw.deltas.back());
    note(v, strictly_decreasing(sw.u) && strictly_decreasing(sw.rho),
         "u, rho positive and strictly decreasing on support");

    double const p1 = pohozaev_residual(sw.u, sw.rho, sw.params.H);
    double const m1 = multiplier_residual(sw.u, sw.rho, sw.params);
    auto const fine = picard_fixed_point(reference_params(), half_grid(6.0, 0.001), pcfg);
    double const p2 = pohozaev_residual(fine.u, fine.rho, fine.params.H);
    double const m2 = multiplier_residual(fine.u, fine.rho, fine.params);
    note(v, p1 <= 2e-2 && m1 <= 2e-2, "Pohozaev %.3e, multiplier %.3e (<= 2e-2)", p1, m1);
    note(v, fine.converged && p1 / p2 >= 2 && m1 / m2 >= 2,
         "at dx/2: Pohozaev %.3e (ratio %.2f), multiplier %.3e (ratio %.2f) (ratio >= 2)", p2,
         p1 / p2, m2, m1 / m2);
    note(v, secs <= 10, "solve time %.2f s (<= 10 s)", secs);
    return v;
}

Verdict director_equivalence()
{
    Verdict v;
    double const dx = 0.002;
    auto const g = half_grid(12.0, dx);
    std::vector<std::function<double(double)>> corpus{
        [](double x) { return 0.5 * std::exp(-x * x); },
        [](double x) { return std::exp(-x * x); },
        [](double x) { return 2.0 * std::exp(-4 * x * x); },
        [](double x) { return 0.3 * std::exp(-x * x / 4); },
        [](double x) { return 1.5 * std::exp(-x * x / 2.25); },
        [](double x) { return 1.0 / std::cosh(x); },
        [](double x) { return 0.8 / std::cosh(2 * x); },
        [](double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); },
        [](double x) { return std::exp(-x * x) * (1 + 0.5 * x * x); },
        [](double x) { return 0.7 * std::exp(-x * x * x * x); },
    };
    Params p0 = reference_params();
    p0.lambda = 0.0;
    double worst_lin = 0, worst_spec = 0;
    for (auto const& f : corpus) {
        auto const phi = RealProfile::sample(g, f);
        auto const shot = shoot_director(phi, p0).rho;
        worst_lin = std::max(worst_lin, rel_l2(shot, oracle_linear_director(phi, p0.b)));
        worst_spec = std::max(worst_spec, rel_l2(shot, oracle_spectral_director(phi, p0.b)));
    }
    note(v, worst_lin <= 1e-4 && worst_spec <= 1e-4,
         "lambda=0, 10 cases: max rel L2 vs tridiagonal %.2e, vs Fourier %.2e (<= 1e-4)",
         worst_lin, worst_spec);

    // Compared on x <= 4 of a [0, 12] grid, where the oracle's Dirichlet end
    // is invisible. The source 2 e^{-x^2/2} makes the flux term large enough
    // for the two discretizations to differ measurably; for the steady-state
    // profile they agree to round-off at every dx (reported as info).
    Params p1 = reference_params();
    std::vector<double> errs;
    for (double h : {4e-3, 2e-3, 1e-3}) {
        auto const gh = half_grid(12.0, h);
        auto const phi = RealProfile::sample(gh, [](double x) { return 2.0 * std::exp(-x * x / 2); });
        errs.push_back(
            sup_diff(shoot_director(phi, p1).rho, oracle_newton_director(phi, p1), 4.0));
    }
    double const o1 = std::log2(errs[0] / errs[1]);
    double const o2 = std::log2(errs[1] / errs[2]);
    double const C = std::max({errs[0] / 4e-3, errs[1] / 2e-3, errs[2] / 1e-3});
    note(v, o1 >= 0.9 && o2 >= 0.9,
         "lambda=0.1 vs Newton sup error %.2e, %.2e, %.2e at dx = 4e-3, 2e-3, 1e-3; observed "
         "orders %.2f, %.2f (>= 0.9); error <= C dx with C = %.2e",
         errs[0], errs[1], errs[2], o1, o2, C);

    auto const& sw = reference_wave();
    auto const wide = half_grid(12.0, sw.u.grid.dx());
    auto const u_wide = RealProfile::sample(wide, [&](double x) { return interpolate(sw.u, x); });
    double const d_ref =
        sup_diff(shoot_director(u_wide, p1).rho, oracle_newton_director(u_wide, p1), 4.0);
    note(v, true, "info: steady-state source, shooting vs Newton on x <= 4: %.2e", d_ref);
    return v;
}

Verdict prop3()
{
    Verdict v;
    Params base = reference_params();
    base.H = 2.0;
    double const l0 = base.lambda0();
    auto const t0 = std::chrono::steady_clock::now();
    auto const res = mu_sweep(base, log_spaced_mu(l0, -1.9, -1.9999153, 60));
    double const secs = seconds_since(t0);

    std::vector<SweepRow> rows;
    for (auto const& r : res.rows)
        if (r.converged)
            rows.push_back(r);
    note(v, rows.size() == 60, "%zu/60 rows converged", rows.size());
    if (rows.size() < 6) {
        v.pass = false;
        return v;
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
        decreasing = decreasing && rows[i].mass < rows[i - 1].mass;
    note(v, decreasing, "mass strictly decreasing %.4e -> %.4e", rows.front().mass,
         rows.back().mass);
    note(v, rows.back().mass <= 0.2 * rows.front().mass, "final/initial mass %.2e (<= 0.2)",
         rows.back().mass / rows.front().mass);
    double shape = 0;
    for (std::size_t i = rows.size() - 5; i < rows.size(); ++i)
        shape = std::max(shape, rows[i].gaussian_shape_error);
    note(v, shape <= 5e-2, "gaussian shape error on last 5 rows <= %.2e (<= 5e-2)", shape);

    double k = 0;
    for (auto const& r : rows)
        k = std::max(k, (l0 + r.varied_param_value) / (r.mass * r.mass));
    bool bracket = k > 0;
    for (auto const& r : rows) {
        double const m = -r.varied_param_value;
        bracket = bracket && l0 - k * r.mass * r.mass <= m && m <= l0 + 1e-2;
    }
    double const slope = (std::log(l0 + rows.back().varied_param_value) -
                          std::log(l0 + rows.front().varied_param_value)) /
                         (std::log(rows.back().mass) - std::log(rows.front().mass));
    note(v, bracket, "lambda0 - k mass^2 <= -mu <= lambda0 + 1e-2 with k = %.4e (log-log slope %.3f)",
         k, slope);
    note(v, secs <= 600, "sweep time %.1f s (<= 600 s)", secs);
    return v;
}

Verdict fig4()
{
    Verdict v;
    Params base = reference_params();
    base.mu = 0.2;
    base.b = 2.0;
    SweepOptions opts;
    opts.keep_waves = true;
    std::vector<double> const hs{0.5, 1.0, 1.5, 2.0};
    auto const res = h_sweep(base, hs, opts);
    bool all = res.rows.size() == hs.size();
    for (auto const& r : res.rows)
        all = all && r.converged;
    note(v, all, "%zu/%zu rows converged", res.rows.size(), hs.size());
    if (!all)
        return v;
    std::string radii;
    bool decreasing = true;
    double prev = INFINITY;
    for (auto const& w : res.waves) {
        double const r = half_height_radius(w.rho);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s%.4f", radii.empty() ? "" : ", ", r);
        radii += buf;
        decreasing = decreasing && r < prev;
        prev = r;
    }
    note(v, decreasing, "rho half-height radius %s strictly decreasing in H", radii.c_str());
    return v;
}

Verdict conservation()
{
    Verdict v;
    Params p = reference_params();
    p.lambda = 0.0;
    auto const s0 = standing_wave_state(reference_wave(), DirectorInit::linear_resolve);
    auto const coarse = evolve_coupled(s0, 5.0, 1e-3, p, 100, false).log;
    auto const fine = evolve_coupled(s0, 5.0, 5e-4, p, 200, false).log;
    double const mc = coarse.mass_drift(), mf = fine.mass_drift();
    double const ec = coarse.energy_drift(), ef = fine.energy_drift();
    note(v, mf <= 1e-8, "dt=5e-4: mass drift %.2e (<= 1e-8)", mf);
    note(v, ef <= 1e-3, "energy drift %.2e (<= 1e-3)", ef);
    // Second order means a ratio near 4 under halving; drifts already at the
    // round-off floor cannot improve further.
    double const floor = 1e-11;
    auto improves = [&](double c, double f) { return (c < floor && f < floor) || c / f >= 3; };
    note(v, improves(mc, mf) && improves(ec, ef),
         "dt=1e-3 -> 5e-4: mass %.2e -> %.2e, energy %.2e -> %.2e (ratio >= 3 or both < %.0e)",
         mc, mf, ec, ef, floor);
    return v;
}

Verdict orbital_stability()
{
    Verdict v;
    auto const& sw = reference_wave();
    StabilityOptions opts;
    opts.stride = 50;
    auto const r = stability_experiment(sw, 1e-2, 10.0, 1e-3, opts);
    double const ratio = r.sup_distance / r.initial_distance;
    note(v, ratio <= 10, "sup distance / initial = %.3f (%.3e / %.3e) (<= 10)", ratio,
         r.sup_distance, r.initial_distance);
    double const mu = sw.params.mu;
    note(v, std::abs(r.phase_rate - mu) <= 1e-3, "phase rate %.6f vs mu %.3f: |diff| %.2e (<= 1e-3)",
         r.phase_rate, mu, std::abs(r.phase_rate - mu));

    auto const ref = stability_experiment(sw, 0.0, 10.0, 1e-3, opts);
    StabilityOptions ctrl = opts;
    ctrl.drop_interaction = true;
    auto const c = stability_experiment(sw, 1e-2, 10.0, 1e-3, ctrl);
    note(v, true, "info: unperturbed phase rate %.7f; control without interaction: ratio %.2f",
         ref.phase_rate, c.sup_distance / c.initial_distance);
    return v;
}

Verdict compact_support()
{
    Verdict v;
    double const theta = 1.0;
    Params p = reference_params();
    p.lambda = 0.0;
    auto const g = Grid::symmetric_span(10.0, 0.005);
    EvolutionState s0{g};
    for (std::size_t j = 0; j < g.n_points(); ++j) {
        s0.u[j] = 2.0 * compact_bump(g.x(j), theta);
        s0.rho[j] = compact_bump(g.x(j), theta);
    }
    std::vector<double> const deltas{0.5, 1.0, 2.0};
    double zero = 0;
    for (double d : deltas)
        zero = std::max(zero, exterior_mass(s0, {theta, d}));
    note(v, zero == 0.0, "t=0 exterior mass %.1e (== 0)", zero);

    double const dt = 0.0025;
    std::vector<double> const times{0.05, 0.1, 0.15};
    auto const run = evolve_coupled(s0, times.back(), dt, p, std::size_t(std::lround(0.05 / dt)));
    std::vector<double> env;
    bool decreasing = true;
    double touch = 0;
    for (auto const& s : run.samples) {
        if (s.t < 0.5 * times.front())
            continue;
        double prev = INFINITY;
        for (double d : deltas) {
            double const e = exterior_mass(s, {theta, d});
            decreasing = decreasing && e < prev;
            prev = e;
        }
        env.push_back(exterior_mass(s, {theta, 1.0}));
        touch = std::max(touch, boundary_touch(s));
    }
    auto const& last = run.samples.back();
    note(v, decreasing, "strictly decreasing in delta, at t=0.15: %.3e, %.3e, %.3e",
         exterior_mass(last, {theta, 0.5}), exterior_mass(last, {theta, 1.0}),
         exterior_mass(last, {theta, 2.0}));
    if (env.size() != times.size()) {
        note(v, false, "expected %zu samples, got %zu", times.size(), env.size());
        return v;
    }
    auto const fit = fit_cubic_envelope(times, env);
    note(v, fit.c2 > 0 && fit.c3 > 0, "envelope c2 t^2 + c3 t^3 at delta=1: c2 = %.4e, c3 = %.4e",
         fit.c2, fit.c3);
    note(v, touch <= 1e-10, "boundary touch %.1e (<= 1e-10)", touch);
    return v;
}

Verdict uniqueness()
{
    Verdict v;
    auto const& sw = reference_wave();
    std::vector<double> betas(200);
    for (std::size_t i = 0; i < betas.size(); ++i)
        betas[i] = 0.1 + (3.0 - 0.1) * double(i) / double(betas.size() - 1);
    auto const scan = uniqueness_scan(sw.params, betas, sw.rho);
    double at = NAN;
    for (std::size_t i = 1; i < scan.rows.size(); ++i)
        if (scan.rows[i].classification != scan.rows[i - 1].classification)
            at = 0.5 * (scan.rows[i].beta + scan.rows[i - 1].beta);
    note(v, scan.transitions == 1, "%d transition(s) over 200 betas in [0.1, 3], at beta ~ %.4f (u0 = %.5f)",
         scan.transitions, at, sw.u0);
    return v;
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<std::pair<std::string, std::function<Verdict()>>> const criteria{
        {"fig1", fig1},
        {"director", director_equivalence},
        {"prop3", prop3},
        {"fig4", fig4},
        {"conservation", conservation},
        {"orbital", orbital_stability},
        {"support", compact_support},
        {"uniqueness", uniqueness},
    };
    std::map<std::string, std::string> const titles{
        {"fig1", "steady-state reproduction (H=1, mu=-0.8)"},
        {"director", "director oracle equivalence"},
        {"prop3", "small-mass limit of the mu-sweep"},
        {"fig4", "H-sweep director concentration"},
        {"conservation", "mass and energy conservation"},
        {"orbital", "orbital stability"},
        {"support", "compact support"},
        {"uniqueness", "uniqueness scan"},
    };

    std::vector<std::string> wanted(argv + 1, argv + argc);
    int failures = 0;
    for (auto const& [name, check] : criteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end())
            continue;
        auto const t0 = std::chrono::steady_clock::now();
        Verdict verdict;
        try {
            verdict = check();
        } catch (std::exception const& e) {
            verdict = {false, std::string("exception: ") + e.what()};
        }
        failures += verdict.pass ? 0 : 1;
        std::printf("%s %s: %s: %s (%.1f s)\n", verdict.pass ? "PASS" : "FAIL", name.c_str(),
                    titles.at(name).c_str(), verdict.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    return failures;
}
