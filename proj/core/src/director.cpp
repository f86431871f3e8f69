#include "nematic/director.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nematic {

namespace {

void require_half_line(RealProfile const& phi, char const* who)
{
    if (!phi.grid.is_half_line())
        throw std::invalid_argument(std::string(who) + ": phi must live on a half-line grid");
}

double max_square(RealProfile const& phi)
{
    double m = 0;
    for (double v : phi.values)
        m = std::max(m, v * v);
    return m;
}

}  // namespace

double newton_v_step(double v, double rho, double phi, Params const& params, double dx)
{
    double const lam = params.lambda;
    double const rhs = v + lam * v * v * v + dx * (params.b * rho - phi * phi);
    if (lam == 0)
        return rhs;
    double const tol = 1e-13 * std::max(1.0, std::abs(rhs));
    double x = v;
    for (int it = 0; it < 50; ++it) {
        double const g = x + lam * x * x * x - rhs;
        if (std::abs(g) <= tol)
            return x;
        x -= g / (1.0 + 3.0 * lam * x * x);
    }
    throw NewtonDivergence("newton_v_step: no convergence in 50 iterations");
}

MarchOutcome march_director(double rho0, RealProfile const& phi, Params const& params,
                            ShootConfig const& cfg)
{
    require_half_line(phi, "march_director");
    auto const n = phi.size();
    double const dx = phi.grid.dx();
    auto const tail = static_cast<std::size_t>(std::ceil(cfg.tail_extension * static_cast<double>(n - 1)));
    double const ceiling = cfg.blowup_factor * rho0;

    MarchOutcome out{RealProfile{phi.grid}, Classification::survived, 0};
    auto& rho = out.profile.values;
    rho[0] = rho0;

    double r = rho0;
    double v = newton_v_step(0.0, r, phi.values[0], params, 0.5 * dx);
    for (std::size_t idx = 1; idx < n + tail; ++idx) {
        double const next = r + dx * v;
        if (next < 0) {
            out.classification = Classification::went_negative;
            out.index = idx;
            return out;
        }
        if (next > r + cfg.monotonicity_tol || (rho0 > 0 && next > ceiling)) {
            out.classification = Classification::became_increasing;
            out.index = idx;
            return out;
        }
        if (idx < n)
            rho[idx] = next;
        r = next;
        v = newton_v_step(v, r, idx < n ? phi.values[idx] : 0.0, params, dx);
    }
    out.index = n + tail;
    return out;
}

ShootConfig default_director_config(RealProfile const& phi, double b)
{
    ShootConfig cfg;
    cfg.bracket_lo = 0.0;
    cfg.bracket_hi = 10.0 * max_square(phi) / b;
    return cfg;
}

DirectorShot shoot_director(RealProfile const& phi, Params const& params, ShootConfig const& cfg)
{
    require_half_line(phi, "shoot_director");
    if (max_square(phi) == 0)
        return {RealProfile{phi.grid}, 0.0, {}};
    auto shot = bisect_initial_value(
        [&](double rho0) { return march_director(rho0, phi, params, cfg); }, cfg);
    return {std::move(shot.outcome.profile), shot.initial_value, shot.telemetry};
}

DirectorShot shoot_director(RealProfile const& phi, Params const& params)
{
    return shoot_director(phi, params, default_director_config(phi, params.b));
}

namespace {

struct Tridiag
{
    std::vector<double> lower, diag, upper;
};

Tridiag assemble_linear(Grid const& grid, double b)
{
    if (!(b > 0))
        throw SingularSystem("director operator needs b > 0");
    auto const n = grid.n_points();
    double const inv = 1.0 / (grid.dx() * grid.dx());
    Tridiag t{std::vector<double>(n, -inv), std::vector<double>(n, 2 * inv + b),
              std::vector<double>(n, -inv)};
    if (grid.is_half_line()) {
        t.upper[0] = -2 * inv;
    } else {
        t.diag[0] = 1;
        t.upper[0] = 0;
    }
    t.lower[n - 1] = 0;
    t.diag[n - 1] = 1;
    return t;
}

}  // namespace

LinearDirectorSolver::LinearDirectorSolver(Grid const& grid, double b)
    : grid_{grid}, solver_{[&] {
          auto t = assemble_linear(grid, b);
          return TridiagonalSolver<double>{std::move(t.lower), std::move(t.diag),
                                           std::move(t.upper)};
      }()}
{}

RealProfile LinearDirectorSolver::solve_source(std::vector<double> source) const
{
    if (source.size() != grid_.n_points())
        throw std::invalid_argument("LinearDirectorSolver: source size mismatch");
    source.back() = 0;
    if (!grid_.is_half_line())
        source.front() = 0;
    solver_.solve_in_place(source);
    return RealProfile{grid_, std::move(source)};
}

RealProfile LinearDirectorSolver::solve(RealProfile const& phi) const
{
    std::vector<double> src(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        src[i] = phi.values[i] * phi.values[i];
    return solve_source(std::move(src));
}

RealProfile oracle_linear_director(RealProfile const& phi, double b)
{
    return LinearDirectorSolver{phi.grid, b}.solve(phi);
}

RealProfile oracle_spectral_director(RealProfile const& phi, double b)
{
    if (!(b > 0))
        throw SingularSystem("director operator needs b > 0");
    RealProfile const sym = phi.grid.is_half_line() ? mirror_to_symmetric(phi) : phi;
    auto const n = sym.size();
    auto const m = static_cast<int>(n - 2);
    double const box = static_cast<double>(n - 1) * sym.grid.dx();

    std::vector<double> data(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        double const p = sym.values[static_cast<std::size_t>(j) + 1];
        data[static_cast<std::size_t>(j)] = p * p;
    }
    fftw_plan plan = fftw_plan_r2r_1d(m, data.data(), data.data(), FFTW_RODFT00, FFTW_ESTIMATE);
    fftw_execute(plan);
    for (int k = 0; k < m; ++k) {
        double const kappa = std::numbers::pi * (k + 1) / box;
        data[static_cast<std::size_t>(k)] /= (b + kappa * kappa) * 2.0 * (m + 1);
    }
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    RealProfile rho{sym.grid};
    for (int j = 0; j < m; ++j)
        rho.values[static_cast<std::size_t>(j) + 1] = data[static_cast<std::size_t>(j)];
    return phi.grid.is_half_line() ? restrict_to_half_line(rho) : rho;
}

namespace {

// Residual rows and (optionally) Jacobian of the quasilinear operator.
double assemble_newton(RealProfile const& rho, RealProfile const& phi, Params const& p,
                       std::vector<double>& res, Tridiag* jac)
{
    auto const n = rho.size();
    auto const& r = rho.values;
    double const dx = rho.grid.dx();
    double const inv2 = 1.0 / (dx * dx);
    double const lam = p.lambda;
    res.assign(n, 0.0);
    if (jac)
        *jac = Tridiag{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                       std::vector<double>(n, 0.0)};
    double sup = 0;
    std::size_t first = 1;
    if (rho.grid.is_half_line()) {
        double const d2 = 2.0 * (r[1] - r[0]) * inv2;
        res[0] = -d2 + p.b * r[0] - phi.values[0] * phi.values[0];
        if (jac) {
            jac->diag[0] = 2 * inv2 + p.b;
            jac->upper[0] = -2 * inv2;
        }
        sup = std::abs(res[0]);
    } else {
        res[0] = r[0];
        if (jac)
            jac->diag[0] = 1;
    }
    for (std::size_t j = first; j + 1 < n; ++j) {
        double const q = 0.5 * (r[j + 1] - r[j - 1]) / dx;
        double const d2 = (r[j + 1] - 2 * r[j] + r[j - 1]) * inv2;
        double const c = 1 + 3 * lam * q * q;
        res[j] = -c * d2 + p.b * r[j] - phi.values[j] * phi.values[j];
        sup = std::max(sup, std::abs(res[j]));
        if (jac) {
            double const cross = 3 * lam * q * d2 / dx;
            jac->lower[j] = -c * inv2 + cross;
            jac->diag[j] = 2 * c * inv2 + p.b;
            jac->upper[j] = -c * inv2 - cross;
        }
    }
    res[n - 1] = r[n - 1];
    if (jac)
        jac->diag[n - 1] = 1;
    return std::max(sup, std::abs(res[n - 1]));
}

}  // namespace

RealProfile director_residual(RealProfile const& rho, RealProfile const& phi, Params const& params)
{
    std::vector<double> res;
    assemble_newton(rho, phi, params, res, nullptr);
    return RealProfile{rho.grid, std::move(res)};
}

NewtonDirectorResult solve_newton_director(RealProfile const& phi, Params const& params,
                                           RealProfile const* initial,
                                           NewtonDirectorOptions const& opts)
{
    if (params.lambda < 0)
        throw std::invalid_argument("solve_newton_director: lambda must be >= 0");
    NewtonDirectorResult result{initial ? *initial : oracle_linear_director(phi, params.b), 0, 0};
    if (!(result.rho.grid == phi.grid))
        throw std::invalid_argument("solve_newton_director: initial iterate on a different grid");

    double const dx = phi.grid.dx();
    double const scale = std::max(1.0, max_square(phi));
    std::vector<double> res, trial_res;
    Tridiag jac;
    double sup = assemble_newton(result.rho, phi, params, res, &jac);

    for (int it = 0; it <= opts.max_iterations; ++it) {
        // Stencil roundoff sets a floor of order eps * |rho| / dx^2 on the residual.
        double const floor = 16 * std::numeric_limits<double>::epsilon() * result.rho.sup_norm() *
                             4.0 / (dx * dx) * (1 + 3 * params.lambda);
        double const tol = std::max(opts.residual_tol * scale, floor);
        if (sup <= tol) {
            result.iterations = it;
            result.residual_sup = sup;
            return result;
        }
        if (it == opts.max_iterations)
            break;

        std::vector<double> step(res.size());
        for (std::size_t i = 0; i < res.size(); ++i)
            step[i] = -res[i];
        TridiagonalSolver<double>{jac.lower, jac.diag, jac.upper}.solve_in_place(step);

        double t = 1.0;
        RealProfile trial = result.rho;
        double trial_sup = 0;
        for (int ls = 0; ls < 30; ++ls) {
            for (std::size_t i = 0; i < step.size(); ++i)
                trial.values[i] = result.rho.values[i] + t * step[i];
            trial_sup = assemble_newton(trial, phi, params, trial_res, nullptr);
            if (trial_sup < sup || ls == 29)
                break;
            t *= 0.5;
        }
        result.rho = std::move(trial);
        sup = assemble_newton(result.rho, phi, params, res, &jac);
    }
    throw NewtonDivergence("oracle_newton_director: residual " + std::to_string(sup) +
                           " after " + std::to_string(opts.max_iterations) + " iterations");
}

RealProfile oracle_newton_director(RealProfile const& phi, Params const& params)
{
    return solve_newton_director(phi, params).rho;
}

}  // namespace nematic
