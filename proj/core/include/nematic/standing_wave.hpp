#pragma once

#include "nematic/diagnostics_report.hpp"
#include "nematic/director.hpp"
#include "nematic/grid.hpp"
#include "nematic/shooting.hpp"

#include <string>
#include <vector>

namespace nematic {

/// Default steady-state mesh: half line [0, 6], dx = 0.002, 3001 nodes.
Grid default_standing_grid();

/// March u'' = (H^2 x^2 + mu - rho + a u^2) u from u(0) = beta, u'(0) = 0
/// with the staggered explicit scheme (slope at j + 1/2, first update dx / 2).
/// Past the grid the march continues with rho = 0 until it classifies.
MarchOutcome march_u(double beta, RealProfile const& rho, Params const& params,
                     ShootConfig const& cfg = {});

struct UShot
{
    double u0 = 0;
    RealProfile u;
    ShootTelemetry telemetry;
};

/// Bisection for u0 = sup{beta : u(.; beta) stays positive}.
UShot shoot_u(RealProfile const& rho, Params const& params, ShootConfig const& cfg = {});

enum class RelaxationMode
{
    /// u <- theta Phi(u) + (1 - theta) u with theta fixed.
    fixed,
    /// Aitken dynamic relaxation: theta re-estimated every iteration from
    /// the last two fixed-point residuals, starting at `relaxation`.
    aitken,
};

struct PicardConfig
{
    int max_iters = 15;
    /// Stop once sup|Phi(u) - u| / sup|Phi(u)| <= rel_tol.
    double rel_tol = 1e-6;
    RelaxationMode mode = RelaxationMode::aitken;
    /// Fixed (or initial Aitken) relaxation factor; fixed mode with 1 is the
    /// plain Picard iteration.
    double relaxation = 1.0;
    /// Bracket the next shot within +-20% of the previous initial value.
    bool warm_brackets = true;
    bool keep_iterates = false;
};

struct StandingWave
{
    RealProfile u;
    RealProfile rho;
    Params params;
    double u0 = 0;
    double rho0 = 0;
    int picard_iters_used = 0;
    bool converged = false;
    /// Fixed-point residual sup|Phi(u) - u| / sup|Phi(u)| per iteration.
    std::vector<double> deltas;
    std::vector<double> relaxations;
    std::vector<double> u0_history;
    std::vector<double> rho0_history;
    /// Intermediate Picard iterates (only with PicardConfig::keep_iterates).
    std::vector<RealProfile> u_iterates;
    std::vector<RealProfile> rho_iterates;
    DiagnosticsReport diagnostics;

    explicit StandingWave(Grid const& g) : u{g}, rho{g} {}
};

enum class PicardStatus
{
    converged,
    max_iterations,
    stalled,
    /// A shot inside the iteration found no valid bracket; the wave holds
    /// the last good iterate.
    shot_failed,
};

char const* to_string(PicardStatus s) noexcept;

struct PicardOutcome
{
    StandingWave wave;
    PicardStatus status;
};

/// Picard iteration phi -> Phi(phi): u^(0) is the rho = 0 shot, then
/// rho = director(u^(n-1)) and u^(n) = shot against that rho. Never throws
/// on non-convergence; the status says what happened.
PicardOutcome picard_iterate(Params const& params, Grid const& grid, PicardConfig const& pcfg = {},
                             ShootConfig const& scfg = {});

/// As picard_iterate, but throws PicardStall when the u-delta grew three
/// iterations in a row.
StandingWave picard_fixed_point(Params const& params, Grid const& grid,
                                PicardConfig const& pcfg = {}, ShootConfig const& scfg = {});
StandingWave picard_fixed_point(Params const& params, PicardConfig const& pcfg = {},
                                ShootConfig const& scfg = {});

struct ScanRow
{
    double beta = 0;
    Classification classification = Classification::survived;
};

struct ScanResult
{
    std::vector<ScanRow> rows;
    int transitions = 0;
    bool monotone() const noexcept { return transitions <= 1; }
};

/// Classifies march_u over an ascending list of betas and counts changes of
/// classification between consecutive rows.
ScanResult uniqueness_scan(Params const& params, std::vector<double> const& betas,
                           RealProfile const& rho, ShootConfig const& cfg = {});

/// Throws NonMonotoneScan when the scan has more than one transition.
void require_monotone(ScanResult const& scan);

}  // namespace nematic
