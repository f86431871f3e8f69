#include "nematic/standing_wave.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace nematic {

Grid default_standing_grid() { return Grid::half_line(3001, 0.002); }

char const* to_string(PicardStatus s) noexcept
{
    switch (s) {
    case PicardStatus::converged: return "converged";
    case PicardStatus::max_iterations: return "max_iterations";
    case PicardStatus::stalled: return "stalled";
    case PicardStatus::shot_failed: return "shot_failed";
    }
    return "unknown";
}

MarchOutcome march_u(double beta, RealProfile const& rho, Params const& params,
                     ShootConfig const& cfg)
{
    if (!rho.grid.is_half_line())
        throw std::invalid_argument("march_u: rho must live on a half-line grid");
    auto const& grid = rho.grid;
    auto const n = grid.n_points();
    double const dx = grid.dx();
    double const H2 = params.H * params.H;
    auto const tail = static_cast<std::size_t>(std::ceil(cfg.tail_extension * static_cast<double>(n - 1)));
    double const ceiling = cfg.blowup_factor * beta;

    auto force = [&](double x, double u, double r) {
        return (H2 * x * x + params.mu - r + params.a * u * u) * u;
    };

    MarchOutcome out{RealProfile{grid}, Classification::survived, 0};
    auto& u = out.profile.values;
    u[0] = beta;

    double cur = beta;
    double w = 0.5 * dx * force(0.0, cur, rho.values[0]);
    for (std::size_t idx = 1; idx < n + tail; ++idx) {
        double const next = cur + dx * w;
        if (next < 0) {
            out.classification = Classification::went_negative;
            out.index = idx;
            return out;
        }
        if (next > cur + cfg.monotonicity_tol || next > ceiling) {
            out.classification = Classification::became_increasing;
            out.index = idx;
            return out;
        }
        if (idx < n)
            u[idx] = next;
        cur = next;
        double const x = static_cast<double>(idx) * dx;
        w += dx * force(x, cur, idx < n ? rho.values[idx] : 0.0);
    }
    out.index = n + tail;
    return out;
}

UShot shoot_u(RealProfile const& rho, Params const& params, ShootConfig const& cfg)
{
    auto shot = bisect_initial_value(
        [&](double beta) { return march_u(beta, rho, params, cfg); }, cfg);
    return {shot.initial_value, std::move(shot.outcome.profile), shot.telemetry};
}

namespace {

ShootConfig around(ShootConfig cfg, double centre)
{
    cfg.bracket_lo = 0.8 * centre;
    cfg.bracket_hi = 1.2 * centre;
    cfg.max_widenings = 0;
    return cfg;
}

UShot shoot_u_warm(RealProfile const& rho, Params const& params, ShootConfig const& scfg,
                   double previous, bool warm)
{
    if (warm && previous > 0) {
        try {
            return shoot_u(rho, params, around(scfg, previous));
        } catch (BracketError const&) {
        }
    }
    return shoot_u(rho, params, scfg);
}

DirectorShot shoot_director_warm(RealProfile const& phi, Params const& params,
                                 ShootConfig const& scfg, double previous, bool warm)
{
    auto cfg = default_director_config(phi, params.b);
    cfg.max_bisections = scfg.max_bisections;
    cfg.blowup_factor = scfg.blowup_factor;
    cfg.monotonicity_tol = scfg.monotonicity_tol;
    cfg.tail_extension = scfg.tail_extension;
    cfg.rel_width_tol = scfg.rel_width_tol;
    if (warm && previous > 0) {
        try {
            return shoot_director(phi, params, around(cfg, previous));
        } catch (BracketError const&) {
        }
    }
    return shoot_director(phi, params, cfg);
}

double relative_sup_delta(RealProfile const& next, RealProfile const& prev)
{
    double num = 0;
    double den = 0;
    for (std::size_t i = 0; i < next.size(); ++i) {
        num = std::max(num, std::abs(next.values[i] - prev.values[i]));
        den = std::max(den, std::abs(next.values[i]));
    }
    return den > 0 ? num / den : num;
}

void check_standing_params(Params const& p)
{
    p.validate();
    if (p.a != -1.0 || p.alpha != 1.0)
        throw std::invalid_argument("standing waves require a = -1 and alpha = 1");
    if (p.H == 0)
        throw std::invalid_argument("standing waves require H != 0");
}

}  // namespace

PicardOutcome picard_iterate(Params const& params, Grid const& grid, PicardConfig const& pcfg,
                             ShootConfig const& scfg)
{
    check_standing_params(params);
    if (pcfg.max_iters < 1)
        throw std::invalid_argument("PicardConfig: max_iters must be >= 1");
    if (!(pcfg.relaxation > 0 && pcfg.relaxation <= 1))
        throw std::invalid_argument("PicardConfig: relaxation must lie in (0, 1]");

    StandingWave sw{grid};
    sw.params = params;

    auto first = shoot_u(RealProfile{grid}, params, scfg);
    RealProfile u = std::move(first.u);
    double u0 = first.u0;
    double rho0 = 0;
    sw.u0_history.push_back(u0);
    if (pcfg.keep_iterates)
        sw.u_iterates.push_back(u);

    PicardStatus status = PicardStatus::max_iterations;
    int growth_streak = 0;
    double theta = pcfg.relaxation;
    std::vector<double> previous_residual;
    for (int it = 1; it <= pcfg.max_iters; ++it) {
        std::optional<DirectorShot> director;
        std::optional<UShot> shot;
        try {
            director = shoot_director_warm(u, params, scfg, rho0, pcfg.warm_brackets);
            shot = shoot_u_warm(director->rho, params, scfg, u0, pcfg.warm_brackets);
        } catch (BracketError const&) {
            status = PicardStatus::shot_failed;
            break;
        }
        rho0 = director->rho0;

        double const delta = relative_sup_delta(shot->u, u);
        RealProfile residual = shot->u - u;
        if (pcfg.mode == RelaxationMode::aitken && !previous_residual.empty()) {
            double num = 0;
            double den = 0;
            for (std::size_t i = 0; i < residual.size(); ++i) {
                double const d = residual.values[i] - previous_residual[i];
                num += previous_residual[i] * d;
                den += d * d;
            }
            if (den > 0)
                theta = std::clamp(-theta * num / den, 0.05, 1.0);
        }
        bool const done = delta <= pcfg.rel_tol;
        // A converged iterate is reported as Phi(u) itself, i.e. a genuine shot.
        RealProfile next = (theta < 1 && !done) ? u + theta * residual : std::move(shot->u);
        previous_residual = std::move(residual.values);
        sw.relaxations.push_back(theta);
        if (!sw.deltas.empty() && delta > sw.deltas.back())
            ++growth_streak;
        else
            growth_streak = 0;

        u = std::move(next);
        u0 = u.values[0];
        sw.deltas.push_back(delta);
        sw.u0_history.push_back(u0);
        sw.rho0_history.push_back(rho0);
        sw.picard_iters_used = it;
        if (pcfg.keep_iterates) {
            sw.u_iterates.push_back(u);
            sw.rho_iterates.push_back(director->rho);
        }

        if (done) {
            status = PicardStatus::converged;
            break;
        }
        if (growth_streak >= 3) {
            status = PicardStatus::stalled;
            break;
        }
    }

    DirectorShot final_rho{RealProfile{grid}, 0.0, {}};
    try {
        final_rho = shoot_director_warm(u, params, scfg, rho0, pcfg.warm_brackets);
    } catch (BracketError const&) {
        status = PicardStatus::shot_failed;
    }
    sw.u = std::move(u);
    sw.rho = std::move(final_rho.rho);
    sw.u0 = sw.u.values[0];
    sw.rho0 = final_rho.rho0;
    sw.converged = status == PicardStatus::converged;
    return {std::move(sw), status};
}

StandingWave picard_fixed_point(Params const& params, Grid const& grid, PicardConfig const& pcfg,
                                ShootConfig const& scfg)
{
    auto out = picard_iterate(params, grid, pcfg, scfg);
    if (out.status == PicardStatus::stalled)
        throw PicardStall("Picard u-delta grew for 3 consecutive iterations (last delta " +
                          std::to_string(out.wave.deltas.back()) + ")");
    return std::move(out.wave);
}

StandingWave picard_fixed_point(Params const& params, PicardConfig const& pcfg,
                                ShootConfig const& scfg)
{
    return picard_fixed_point(params, default_standing_grid(), pcfg, scfg);
}

ScanResult uniqueness_scan(Params const& params, std::vector<double> const& betas,
                           RealProfile const& rho, ShootConfig const& cfg)
{
    if (!std::is_sorted(betas.begin(), betas.end()))
        throw std::invalid_argument("uniqueness_scan: betas must be ascending");
    ScanResult scan;
    scan.rows.reserve(betas.size());
    for (double beta : betas)
        scan.rows.push_back({beta, march_u(beta, rho, params, cfg).classification});

    Classification last = Classification::survived;
    for (auto const& row : scan.rows) {
        if (row.classification == Classification::survived)
            continue;
        if (last != Classification::survived && row.classification != last)
            ++scan.transitions;
        last = row.classification;
    }
    return scan;
}

void require_monotone(ScanResult const& scan)
{
    if (!scan.monotone())
        throw NonMonotoneScan("shooting scan shows " + std::to_string(scan.transitions) +
                              " classification transitions");
}

}  // namespace nematic
