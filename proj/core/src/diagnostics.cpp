#include "nematic/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <stdexcept>

namespace nematic {

namespace {

struct Moments
{
    double grad_sq = 0;    // int u_x^2
    double xu_sq = 0;      // int x^2 u^2
    double quartic = 0;    // int u^4
    double mass = 0;       // int u^2
    double interaction = 0;  // int rho u^2
    double virial = 0;     // int u^2 x rho_x
};

Moments moments(RealProfile const& u, RealProfile const* rho)
{
    if (rho && !(rho->grid == u.grid))
        throw std::invalid_argument("diagnostics: u and rho on different grids");
    auto const n = u.size();
    auto const ux = derivative(u);
    RealProfile rx{u.grid};
    if (rho)
        rx = derivative(*rho);
    std::vector<double> g(n), xs(n), q(n), m(n), in(n), vir(n);
    for (std::size_t i = 0; i < n; ++i) {
        double const x = u.grid.x(i);
        double const s = u.values[i] * u.values[i];
        g[i] = ux.values[i] * ux.values[i];
        xs[i] = x * x * s;
        q[i] = s * s;
        m[i] = s;
        in[i] = rho ? rho->values[i] * s : 0.0;
        vir[i] = rho ? s * x * rx.values[i] : 0.0;
    }
    double const dx = u.grid.dx();
    double const w = full_line_weight(u.grid);
    return {w * integrate_trapezoid(g, dx),  w * integrate_trapezoid(xs, dx),
            w * integrate_trapezoid(q, dx),  w * integrate_trapezoid(m, dx),
            w * integrate_trapezoid(in, dx), w * integrate_trapezoid(vir, dx)};
}

double normalised(std::initializer_list<double> terms)
{
    double sum = 0;
    double largest = 0;
    for (double t : terms) {
        sum += t;
        largest = std::max(largest, std::abs(t));
    }
    return largest > 0 ? std::abs(sum) / largest : 0.0;
}

}  // namespace

double mass(RealProfile const& u) { return moments(u, nullptr).mass; }

double energy(RealProfile const& u, RealProfile const& rho, double H)
{
    auto const m = moments(u, &rho);
    return 0.5 * m.grad_sq + 0.5 * H * H * m.xu_sq - 0.25 * m.quartic - 0.5 * m.interaction;
}

double pohozaev_residual(RealProfile const& u, RealProfile const& rho, double H)
{
    auto const m = moments(u, &rho);
    return normalised({2 * m.grad_sq, -2 * H * H * m.xu_sq, -0.5 * m.quartic, m.virial});
}

double multiplier_residual(RealProfile const& u, RealProfile const& rho, Params const& params)
{
    auto const m = moments(u, &rho);
    double const H2 = params.H * params.H;
    return normalised({m.grad_sq, H2 * m.xu_sq, -m.interaction, -m.quartic, params.mu * m.mass});
}

double gaussian_shape_error(RealProfile const& u, double H)
{
    double const nu = std::sqrt(mass(u));
    if (nu == 0)
        throw ZeroProfile("gaussian_shape_error: u has zero L2 norm");
    auto const g = RealProfile::sample(u.grid, [H](double x) { return std::exp(-0.5 * H * x * x); });
    double const ng = std::sqrt(mass(g));
    RealProfile diff{u.grid};
    for (std::size_t i = 0; i < u.size(); ++i)
        diff.values[i] = u.values[i] / nu - g.values[i] / ng;
    return std::sqrt(mass(diff));
}

DiagnosticsReport compute_diagnostics(RealProfile const& u, RealProfile const& rho,
                                      Params const& params)
{
    DiagnosticsReport r;
    r.mass = mass(u);
    r.energy = energy(u, rho, params.H);
    r.pohozaev_residual = pohozaev_residual(u, rho, params.H);
    r.multiplier_residual = multiplier_residual(u, rho, params);
    r.lambda0 = params.lambda0();
    r.gaussian_shape_error = r.mass > 0 ? gaussian_shape_error(u, params.H) : 0.0;
    return r;
}

DiagnosticsReport diagnose(StandingWave& sw)
{
    sw.diagnostics = compute_diagnostics(sw.u, sw.rho, sw.params);
    return sw.diagnostics;
}

double half_height_radius(RealProfile const& f)
{
    auto const c = f.grid.origin_index();
    double const target = 0.5 * f.values[c];
    for (std::size_t i = c + 1; i < f.size(); ++i) {
        if (f.values[i] <= target) {
            double const f0 = f.values[i - 1];
            double const f1 = f.values[i];
            double const t = f0 == f1 ? 0.0 : (f0 - target) / (f0 - f1);
            return f.grid.x(i - 1) + t * f.grid.dx();
        }
    }
    return f.grid.x(f.size() - 1);
}

double scalar_equation_residual(RealProfile const& u, RealProfile const& rho, Params const& params)
{
    if (!(rho.grid == u.grid))
        throw std::invalid_argument("scalar_equation_residual: grids differ");
    double const dx = u.grid.dx();
    double const H2 = params.H * params.H;
    double const scale = u.sup_norm();
    if (scale == 0)
        return 0.0;
    double worst = 0;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        if (u.values[i + 1] == 0 || u.values[i - 1] == 0)
            continue;
        double const x = u.grid.x(i);
        double const ui = u.values[i];
        double const d2 = (u.values[i + 1] - 2 * ui + u.values[i - 1]) / (dx * dx);
        double const r = d2 - H2 * x * x * ui + ui * ui * ui + rho.values[i] * ui - params.mu * ui;
        worst = std::max(worst, std::abs(r));
    }
    return worst / scale;
}

double gagliardo_nirenberg_ratio(RealProfile const& u)
{
    auto const m = moments(u, nullptr);
    double const den = std::sqrt(m.grad_sq) * std::pow(m.mass, 1.5);
    return den > 0 ? m.quartic / den : 0.0;
}

HolderBound holder_interaction_bound(RealProfile const& u, RealProfile const& rho)
{
    auto const m = moments(u, &rho);
    auto const r = moments(rho, nullptr);
    return {m.interaction, std::sqrt(r.mass) * std::sqrt(m.quartic)};
}

}  // namespace nematic
