#include "nematic/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace nematic {

using cplx = std::complex<double>;

EvolutionState::EvolutionState(double t0, ComplexProfile u0, RealProfile rho0, RealProfile rho1)
    : t{t0}, u{std::move(u0)}, rho{std::move(rho0)}, rho_t{std::move(rho1)}
{
    validate();
}

void EvolutionState::validate() const
{
    if (!(u.grid == rho.grid) || !(u.grid == rho_t.grid))
        throw std::invalid_argument("EvolutionState: u, rho and rho_t must share one grid");
    if (u.grid.is_half_line())
        throw std::invalid_argument("EvolutionState: evolution needs a symmetric grid");
    if (!std::isfinite(t) || !u.all_finite() || !rho.all_finite() || !rho_t.all_finite())
        throw std::invalid_argument("EvolutionState: non-finite values");
}

EvolutionState standing_wave_state(StandingWave const& sw, DirectorInit init)
{
    RealProfile const u = sw.u.grid.is_half_line() ? mirror_to_symmetric(sw.u) : sw.u;
    RealProfile rho = init == DirectorInit::linear_resolve
                          ? oracle_linear_director(u, sw.params.b)
                          : (sw.rho.grid.is_half_line() ? mirror_to_symmetric(sw.rho) : sw.rho);
    rho.values.front() = 0;
    rho.values.back() = 0;
    return EvolutionState{0.0, ComplexProfile::from_real(u), std::move(rho), RealProfile{u.grid}};
}

namespace {

double series_drift(std::vector<double> const& q)
{
    if (q.empty())
        return 0;
    double worst = 0;
    for (double v : q)
        worst = std::max(worst, std::abs(v - q.front()));
    return q.front() != 0 ? worst / std::abs(q.front()) : worst;
}

}  // namespace

double ConservedLog::mass_drift() const { return series_drift(mass_series); }
double ConservedLog::energy_drift() const { return series_drift(energy_series); }

void write_conserved_log(ConservedLog const& log, std::ostream& os)
{
    os << "t,mass,energy\n";
    char buf[96];
    for (std::size_t i = 0; i < log.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", log.times[i], log.mass_series[i],
                      log.energy_series[i]);
        os << buf;
    }
}

void write_conserved_log(ConservedLog const& log, std::filesystem::path const& path)
{
    std::ofstream os{path};
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_conserved_log(log, os);
}

double discrete_mass(ComplexProfile const& u)
{
    double s = 0;
    for (auto const& v : u.values)
        s += std::norm(v);
    return s * u.grid.dx();
}

double coupled_energy(EvolutionState const& s, Params const& p)
{
    auto const n = s.u.size();
    double const dx = s.grid().dx();
    double const H2 = p.H * p.H;
    auto const& u = s.u.values;
    auto const& r = s.rho.values;
    double grad_u = 0;
    double grad_r = 0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        grad_u += std::norm(u[j + 1] - u[j]);
        grad_r += (r[j + 1] - r[j]) * (r[j + 1] - r[j]);
    }
    double local = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double const x = s.grid().x(j);
        double const m = std::norm(u[j]);
        double const rt = s.rho_t.values[j];
        local += 0.5 * rt * rt + 0.5 * p.b * r[j] * r[j] - r[j] * m + 0.5 * p.a * m * m +
                 H2 * x * x * m;
    }
    return (0.5 * p.alpha * grad_r + grad_u) / dx + local * dx;
}

namespace {

TridiagonalSolver<cplx> assemble_cn(Grid const& g, double h, double H)
{
    auto const n = g.n_points();
    double const inv = 1.0 / (g.dx() * g.dx());
    cplx const off{0, -0.5 * h * inv};
    std::vector<cplx> lower(n, off), diag(n), upper(n, off);
    for (std::size_t j = 0; j < n; ++j) {
        double const x = g.x(j);
        diag[j] = cplx{1, 0.5 * h * (2 * inv + H * H * x * x)};
    }
    diag.front() = diag.back() = 1;
    upper.front() = lower.back() = 0;
    lower.front() = upper.back() = 0;
    return {std::move(lower), std::move(diag), std::move(upper)};
}

}  // namespace

NlsPropagator::NlsPropagator(Grid const& grid, double dt, Params const& params, NlsOptions opts)
    : grid_{grid}, dt_{dt}, params_{params}, opts_{opts}, cn_{[&] {
          if (!(dt > 0))
              throw std::invalid_argument("nls_step: dt must be positive");
          if (grid.is_half_line())
              throw std::invalid_argument("nls_step: evolution needs a symmetric grid");
          return assemble_cn(grid, 0.5 * dt, params.H);
      }()}
{
    x2_.resize(grid.n_points());
    for (std::size_t j = 0; j < x2_.size(); ++j)
        x2_[j] = grid.x(j) * grid.x(j);
    if (opts_.mode == PotentialMode::quasistatic && params_.lambda == 0)
        linear_director_.emplace(grid, params_.b);
}

void NlsPropagator::linear_half(std::vector<cplx>& u) const
{
    auto const n = u.size();
    double const h = 0.5 * dt_;
    double const inv = 1.0 / (grid_.dx() * grid_.dx());
    double const H2 = params_.H * params_.H;
    std::vector<cplx> rhs(n);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        cplx const Au = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * inv - H2 * x2_[j] * u[j];
        rhs[j] = u[j] + cplx{0, 0.5 * h} * Au;
    }
    cn_.solve_in_place(rhs);
    u = std::move(rhs);
}

void NlsPropagator::resolve_director(EvolutionState& s)
{
    RealProfile const amp = s.u.modulus();
    if (linear_director_) {
        s.rho = linear_director_->solve(amp);
    } else {
        bool const warm = s.rho.sup_norm() > 0;
        s.rho = solve_newton_director(amp, params_, warm ? &s.rho : nullptr).rho;
    }
}

void NlsPropagator::step(EvolutionState& s)
{
    if (!(s.grid() == grid_))
        throw std::invalid_argument("NlsPropagator: state grid differs from propagator grid");
    auto& u = s.u.values;
    linear_half(u);
    if (opts_.mode == PotentialMode::quasistatic)
        resolve_director(s);
    double const coupling = opts_.drop_interaction ? 0.0 : 1.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        double const phase = dt_ * (coupling * s.rho.values[j] - params_.a * std::norm(u[j]));
        u[j] *= std::polar(1.0, phase);
    }
    linear_half(u);
    s.t += dt_;
}

EvolutionState nls_step(EvolutionState state, double dt, Params const& params, PotentialMode mode)
{
    state.validate();
    NlsPropagator{state.grid(), dt, params, {mode, false}}.step(state);
    return state;
}

double cfl_limit(Grid const& grid, Params const& params)
{
    return 0.9 * grid.dx() / std::sqrt(params.alpha);
}

namespace {

void require_semilinear(Params const& p)
{
    if (p.lambda != 0)
        throw std::invalid_argument("wave channel is restricted to lambda = 0");
}

void wave_kick(EvolutionState& s, double h, Params const& p)
{
    auto const n = s.rho.size();
    double const inv = p.alpha / (s.grid().dx() * s.grid().dx());
    auto const& r = s.rho.values;
    auto& v = s.rho_t.values;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        double const f = (r[j + 1] - 2 * r[j] + r[j - 1]) * inv - p.b * r[j] + std::norm(s.u[j]);
        v[j] += h * f;
    }
    v.front() = v.back() = 0;
}

}  // namespace

void wave_advance(EvolutionState& s, double dt, Params const& params)
{
    require_semilinear(params);
    if (!(dt > 0))
        throw std::invalid_argument("wave_step: dt must be positive");
    if (dt > cfl_limit(s.grid(), params))
        throw CflViolation("wave_step: dt = " + std::to_string(dt) + " exceeds 0.9 dx / sqrt(alpha) = " +
                           std::to_string(cfl_limit(s.grid(), params)));
    wave_kick(s, 0.5 * dt, params);
    auto& r = s.rho.values;
    for (std::size_t j = 1; j + 1 < r.size(); ++j)
        r[j] += dt * s.rho_t.values[j];
    r.front() = r.back() = 0;
    wave_kick(s, 0.5 * dt, params);
}

EvolutionState wave_step(EvolutionState state, double dt, Params const& params)
{
    state.validate();
    wave_advance(state, dt, params);
    state.t += dt;
    return state;
}

namespace {

std::size_t step_count(double T, double dt)
{
    if (!(dt > 0) || !(T >= 0))
        throw std::invalid_argument("evolution: need dt > 0 and T >= 0");
    return static_cast<std::size_t>(std::llround(T / dt));
}

bool sample_due(std::size_t k, std::size_t steps, std::size_t stride)
{
    return k == 0 || k == steps || (stride > 0 && k % stride == 0);
}

}  // namespace

EvolveResult evolve_coupled(EvolutionState const& state0, double T, double dt,
                            Params const& params, std::size_t stride, bool keep_samples)
{
    state0.validate();
    require_semilinear(params);
    if (dt > cfl_limit(state0.grid(), params))
        throw CflViolation("evolve_coupled: dt = " + std::to_string(dt) +
                           " exceeds 0.9 dx / sqrt(alpha)");
    auto const steps = step_count(T, dt);
    NlsPropagator nls{state0.grid(), dt, params, {PotentialMode::coupled, false}};

    EvolveResult out;
    EvolutionState s = state0;
    double const t0 = s.t;
    auto record = [&](std::size_t k) {
        s.t = t0 + static_cast<double>(k) * dt;
        out.log.times.push_back(s.t);
        out.log.mass_series.push_back(discrete_mass(s.u));
        out.log.energy_series.push_back(coupled_energy(s, params));
        if (keep_samples)
            out.samples.push_back(s);
    };
    record(0);
    for (std::size_t k = 1; k <= steps; ++k) {
        wave_advance(s, 0.5 * dt, params);
        nls.step(s);
        wave_advance(s, 0.5 * dt, params);
        if (sample_due(k, steps, stride))
            record(k);
    }
    if (!keep_samples) {
        s.t = t0 + static_cast<double>(steps) * dt;
        out.samples.push_back(std::move(s));
    }
    return out;
}

EvolutionState evolve_quasistatic(EvolutionState state, double T, double dt, Params const& params,
                                  std::size_t stride,
                                  std::function<void(EvolutionState const&)> const& observe,
                                  bool drop_interaction)
{
    state.validate();
    auto const steps = step_count(T, dt);
    NlsPropagator nls{state.grid(), dt, params, {PotentialMode::quasistatic, drop_interaction}};
    double const t0 = state.t;
    if (observe)
        observe(state);
    for (std::size_t k = 1; k <= steps; ++k) {
        nls.step(state);
        state.t = t0 + static_cast<double>(k) * dt;
        if (observe && sample_due(k, steps, stride))
            observe(state);
    }
    return state;
}

double xa_norm(ComplexProfile const& f, double H) { return std::sqrt(norms(f, H).xa_sq); }

namespace {

double distance_at(ComplexProfile const& psi, RealProfile const& u, double H, double theta)
{
    ComplexProfile w{psi.grid};
    cplx const rot = std::polar(1.0, theta);
    for (std::size_t j = 0; j < w.size(); ++j)
        w.values[j] = psi.values[j] - rot * u.values[j];
    return xa_norm(w, H);
}

RealProfile on_grid_of(RealProfile const& u, ComplexProfile const& psi)
{
    RealProfile v = (u.grid.is_half_line() && !psi.grid.is_half_line()) ? mirror_to_symmetric(u) : u;
    if (!(v.grid == psi.grid))
        throw std::invalid_argument("orbital_distance: grids do not match");
    return v;
}

}  // namespace

OrbitalFit orbital_fit(ComplexProfile const& psi, RealProfile const& u_in, double H)
{
    RealProfile const u = on_grid_of(u_in, psi);
    cplx inner = 0;
    for (std::size_t j = 0; j < u.size(); ++j)
        inner += psi.values[j] * u.values[j];
    OrbitalFit fit;
    fit.theta = std::arg(inner);
    fit.distance = distance_at(psi, u, H, fit.theta);
    fit.scan_distance = fit.distance;
    constexpr int samples = 64;
    constexpr double window = 0.05;
    for (int k = 0; k < samples; ++k) {
        double const th = fit.theta - window + 2 * window * k / (samples - 1);
        fit.scan_distance = std::min(fit.scan_distance, distance_at(psi, u, H, th));
    }
    return fit;
}

double orbital_distance(ComplexProfile const& psi, RealProfile const& u, double H)
{
    auto const fit = orbital_fit(psi, u, H);
    return std::min(fit.distance, fit.scan_distance);
}

double orbital_distance(ComplexProfile const& psi, StandingWave const& sw, double H)
{
    return orbital_distance(psi, sw.u, H);
}

RealProfile xa_normalized_bump(Grid const& grid, double width, double H)
{
    auto g = RealProfile::sample(grid, [&](double x) { return std::exp(-0.5 * x * x / (width * width)); });
    double const scale = std::sqrt(norms(g, H).xa_sq);
    for (double& v : g.values)
        v /= scale;
    return g;
}

StabilityResult stability_experiment(StandingWave const& sw, double delta, double T, double dt,
                                     StabilityOptions const& opts)
{
    double const H = sw.params.H;
    RealProfile const u = sw.u.grid.is_half_line() ? mirror_to_symmetric(sw.u) : sw.u;
    RealProfile const rho_sw = sw.rho.grid.is_half_line() ? mirror_to_symmetric(sw.rho) : sw.rho;
    double const u_norm = std::sqrt(norms(u, H).xa_sq);
    if (!(std::abs(delta) <= 0.1 * u_norm))
        throw std::invalid_argument("stability_experiment: perturbation larger than 0.1 ||u||_XA");

    RealProfile const bump = xa_normalized_bump(u.grid, opts.bump_width, H);
    ComplexProfile psi{u.grid};
    for (std::size_t j = 0; j < u.size(); ++j)
        psi.values[j] = u.values[j] * (1 + delta * bump.values[j]);
    psi.values.front() = psi.values.back() = 0;

    EvolutionState s0{0.0, std::move(psi), rho_sw, RealProfile{u.grid}};
    s0.rho.values.front() = s0.rho.values.back() = 0;

    StabilityResult out;
    double last_theta = 0;
    double unwrapped = 0;
    auto observe = [&](EvolutionState const& s) {
        auto const fit = orbital_fit(s.u, u, H);
        double const d = std::min(fit.distance, fit.scan_distance);
        if (out.times.empty()) {
            unwrapped = fit.theta;
        } else {
            double step = fit.theta - last_theta;
            step -= 2 * std::numbers::pi * std::round(step / (2 * std::numbers::pi));
            unwrapped += step;
        }
        last_theta = fit.theta;
        RealProfile const dev = s.rho - rho_sw;
        double const h1 = std::sqrt(norms(dev, 1.0).l2_sq + norms(derivative(dev), 1.0).l2_sq);
        out.times.push_back(s.t);
        out.distances.push_back(d);
        out.phases.push_back(unwrapped);
        out.rho_deviation.push_back(h1);
    };
    evolve_quasistatic(std::move(s0), T, dt, sw.params, opts.stride, observe, opts.drop_interaction);

    out.initial_distance = out.distances.front();
    out.sup_distance = *std::max_element(out.distances.begin(), out.distances.end());
    auto const m = static_cast<double>(out.times.size());
    double st = 0, sp = 0, stt = 0, stp = 0;
    for (std::size_t i = 0; i < out.times.size(); ++i) {
        st += out.times[i];
        sp += out.phases[i];
        stt += out.times[i] * out.times[i];
        stp += out.times[i] * out.phases[i];
    }
    double const den = m * stt - st * st;
    out.phase_rate = den > 0 ? (m * stp - st * sp) / den : 0.0;
    return out;
}

void SupportSpec::validate() const
{
    if (!(theta > 0) || !(delta > 0))
        throw std::invalid_argument("SupportSpec: theta and delta must be positive");
}

double exterior_mass(EvolutionState const& s, SupportSpec const& spec)
{
    spec.validate();
    auto const& g = s.grid();
    double const c = spec.theta + spec.delta;
    if (g.max_abs_x() <= c)
        throw DomainTooSmall("exterior_mass: truncation " + std::to_string(g.max_abs_x()) +
                             " <= theta + delta = " + std::to_string(c));
    auto const rho_x = derivative(s.rho);
    auto const n = g.n_points();
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j)
        d[j] = std::norm(s.u.values[j]) + s.rho.values[j] * s.rho.values[j] +
               rho_x.values[j] * rho_x.values[j] + s.rho_t.values[j] * s.rho_t.values[j];

    double const dx = g.dx();
    auto side = [&](auto node) {
        // node(k) maps k = 0, 1, ... outward from the centre to grid indices.
        std::size_t const half = n / 2;
        std::size_t k = 0;
        while (k <= half && std::abs(g.x(node(k))) < c)
            ++k;
        double total = 0;
        for (std::size_t m = k; m < half; ++m)
            total += 0.5 * dx * (d[node(m)] + d[node(m + 1)]);
        if (k > 0) {
            double const x_in = std::abs(g.x(node(k - 1)));
            double const frac = (c - x_in) / dx;
            double const dc = d[node(k - 1)] + frac * (d[node(k)] - d[node(k - 1)]);
            total += 0.5 * (std::abs(g.x(node(k))) - c) * (dc + d[node(k)]);
        }
        return total;
    };
    std::size_t const o = g.origin_index();
    return side([&](std::size_t k) { return o + k; }) + side([&](std::size_t k) { return o - k; });
}

double boundary_touch(EvolutionState const& s)
{
    auto const n = s.u.size();
    auto const edge = std::max<std::size_t>(1, n / 40);
    double total = 0;
    double outer = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double const v = std::norm(s.u.values[j]) + s.rho.values[j] * s.rho.values[j];
        total += v;
        if (j < edge || j >= n - edge)
            outer += v;
    }
    return total > 0 ? outer / total : 0.0;
}

double compact_bump(double x, double theta)
{
    double const s = x / theta;
    if (std::abs(s) >= 1)
        return 0;
    return std::exp(-1 / (1 - s * s));
}

EnvelopeFit fit_cubic_envelope(std::vector<double> const& t, std::vector<double> const& f)
{
    if (t.size() != f.size() || t.size() < 2)
        throw std::invalid_argument("fit_cubic_envelope: need at least two samples");
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double const p2 = t[i] * t[i];
        double const p3 = p2 * t[i];
        a11 += p2 * p2;
        a12 += p2 * p3;
        a22 += p3 * p3;
        b1 += p2 * f[i];
        b2 += p3 * f[i];
    }
    double const det = a11 * a22 - a12 * a12;
    if (det == 0)
        throw SingularSystem("fit_cubic_envelope: degenerate sample times");
    EnvelopeFit fit{(b1 * a22 - b2 * a12) / det, (a11 * b2 - a12 * b1) / det, 0};
    for (std::size_t i = 0; i < t.size(); ++i) {
        double const model = fit.c2 * t[i] * t[i] + fit.c3 * t[i] * t[i] * t[i];
        double const scale = std::max(std::abs(f[i]), std::numeric_limits<double>::min());
        fit.max_rel_misfit = std::max(fit.max_rel_misfit, std::abs(model - f[i]) / scale);
    }
    return fit;
}

}  // namespace nematic
