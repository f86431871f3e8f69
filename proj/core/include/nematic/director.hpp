#pragma once

#include "nematic/grid.hpp"
#include "nematic/shooting.hpp"
#include "nematic/tridiagonal.hpp"

#include <optional>

namespace nematic {

// Director equation  -rho_xx - lambda (rho_x^3)_x + b rho = phi^2  with
// rho'(0) = 0 and rho -> 0 at the truncation boundary.

/// One flux update of the director march: returns v_next with
///   v_next + lambda v_next^3 = v + lambda v^3 + dx (b rho - phi^2).
/// g(v) = v + lambda v^3 is strictly increasing for lambda >= 0, so the
/// root is unique; Newton starts from v and stops at |g - rhs| <= 1e-13.
double newton_v_step(double v, double rho, double phi, Params const& params, double dx);

/// March rho' = v from rho(0) = rho0, v(0) = 0 over a half-line phi.
/// The flux is staggered (v lives at j + 1/2; the first update uses dx / 2),
/// which makes the march the even reflection of the symmetric three-point
/// scheme.
MarchOutcome march_director(double rho0, RealProfile const& phi, Params const& params,
                            ShootConfig const& cfg = {});

/// Default bracket [0, 10 max(phi^2) / b].
ShootConfig default_director_config(RealProfile const& phi, double b);

struct DirectorShot
{
    RealProfile rho;
    double rho0 = 0;
    ShootTelemetry telemetry;
};

/// Bisection on rho(0). phi == 0 returns rho == 0 without shooting.
DirectorShot shoot_director(RealProfile const& phi, Params const& params, ShootConfig const& cfg);
DirectorShot shoot_director(RealProfile const& phi, Params const& params);

/// lambda = 0 director by the three-point finite-difference system:
/// Dirichlet 0 at truncation ends, reflection at x = 0 on half-line grids.
RealProfile oracle_linear_director(RealProfile const& phi, double b);

/// lambda = 0 director by the sine-series realisation of
/// rho = F^-1( F(phi^2) / (b + 4 pi^2 xi^2) ) on the Dirichlet box.
RealProfile oracle_spectral_director(RealProfile const& phi, double b);

/// Factored lambda = 0 operator for repeated solves on one grid.
class LinearDirectorSolver
{
  public:
    LinearDirectorSolver(Grid const& grid, double b);

    Grid const& grid() const noexcept { return grid_; }
    /// Solves with source phi^2 (phi given on grid()).
    RealProfile solve(RealProfile const& phi) const;
    /// Solves with an explicit source f (already squared).
    RealProfile solve_source(std::vector<double> source) const;

  private:
    Grid grid_;
    TridiagonalSolver<double> solver_;
};

struct NewtonDirectorOptions
{
    int max_iterations = 100;
    double residual_tol = 1e-10;
};

struct NewtonDirectorResult
{
    RealProfile rho;
    int iterations = 0;
    double residual_sup = 0;
};

/// Damped Newton on the finite-difference residual of the quasilinear
/// equation written as -(1 + 3 lambda rho_x^2) rho_xx + b rho - phi^2, with
/// the same boundary conditions as oracle_linear_director. Starts from
/// `initial` when given, otherwise from the lambda = 0 solution.
NewtonDirectorResult solve_newton_director(RealProfile const& phi, Params const& params,
                                           RealProfile const* initial = nullptr,
                                           NewtonDirectorOptions const& opts = {});

RealProfile oracle_newton_director(RealProfile const& phi, Params const& params);

/// Finite-difference residual used by the Newton oracle (same BCs).
RealProfile director_residual(RealProfile const& rho, RealProfile const& phi, Params const& params);

}  // namespace nematic
