#pragma once

#include "nematic/director.hpp"
#include "nematic/grid.hpp"
#include "nematic/standing_wave.hpp"
#include "nematic/tridiagonal.hpp"

#include <complex>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace nematic {

// Time-dependent system on a symmetric grid with Dirichlet truncation:
//   i u_t + u_xx = -rho u + a |u|^2 u + H^2 x^2 u
//   rho_tt = alpha rho_xx - b rho + |u|^2          (lambda = 0)
// or, quasi-statically, -rho_xx - lambda (rho_x^3)_x + b rho = |u|^2.

struct EvolutionState
{
    double t = 0;
    ComplexProfile u;
    RealProfile rho;
    RealProfile rho_t;

    explicit EvolutionState(Grid const& g) : u{g}, rho{g}, rho_t{g} {}
    EvolutionState(double t0, ComplexProfile u0, RealProfile rho0, RealProfile rho1);

    Grid const& grid() const noexcept { return u.grid; }
    /// Throws std::invalid_argument on mismatched grids, a half-line grid or
    /// non-finite values.
    void validate() const;
};

/// State built from a standing wave: u mirrored onto the symmetric grid,
/// rho_t = 0 and rho either mirrored from sw.rho or re-solved from |u|^2
/// with the lambda = 0 operator.
enum class DirectorInit
{
    mirror,
    linear_resolve,
};
EvolutionState standing_wave_state(StandingWave const& sw, DirectorInit init);

struct ConservedLog
{
    std::vector<double> times;
    std::vector<double> mass_series;
    std::vector<double> energy_series;

    /// max_t |q(t) - q(0)| / |q(0)| (absolute drift when q(0) = 0).
    double mass_drift() const;
    double energy_drift() const;
};

void write_conserved_log(ConservedLog const& log, std::ostream& os);
void write_conserved_log(ConservedLog const& log, std::filesystem::path const& path);

/// Discrete mass dx sum |u_j|^2.
double discrete_mass(ComplexProfile const& u);

/// Coupled energy
///   1/2 |rho_t|^2 + alpha/2 |rho_x|^2 + b/2 |rho|^2 - <rho, |u|^2>
///   + |u_x|^2 + a/2 |u|_4^4 + H^2 |x u|^2
/// with forward-difference gradients, which is the quantity the
/// semi-discrete system conserves exactly.
double coupled_energy(EvolutionState const& s, Params const& params);

enum class PotentialMode
{
    /// Use the state's rho as is.
    coupled,
    /// Re-solve rho from |u|^2 at the midpoint of every step.
    quasistatic,
};

struct NlsOptions
{
    PotentialMode mode = PotentialMode::coupled;
    /// Drop the -rho u term (control runs).
    bool drop_interaction = false;
};

/// Strang step CN(dt/2) R(dt) CN(dt/2) where CN is Crank-Nicolson for
/// u_t = i (u_xx - H^2 x^2 u) and R is the exact rotation
/// u <- exp(i dt (rho - a |u|^2)) u.
class NlsPropagator
{
  public:
    NlsPropagator(Grid const& grid, double dt, Params const& params, NlsOptions opts = {});

    double dt() const noexcept { return dt_; }
    void step(EvolutionState& s);

  private:
    void linear_half(std::vector<std::complex<double>>& u) const;
    void resolve_director(EvolutionState& s);

    Grid grid_;
    double dt_;
    Params params_;
    NlsOptions opts_;
    std::vector<double> x2_;
    TridiagonalSolver<std::complex<double>> cn_;
    std::optional<LinearDirectorSolver> linear_director_;
};

EvolutionState nls_step(EvolutionState state, double dt, Params const& params,
                        PotentialMode mode);

/// Largest admissible wave time step, 0.9 dx / sqrt(alpha).
double cfl_limit(Grid const& grid, Params const& params);

/// Leapfrog (kick-drift-kick) for rho_tt = alpha rho_xx - b rho + |u|^2 with
/// u frozen. Requires lambda = 0; throws CflViolation when dt > cfl_limit.
void wave_advance(EvolutionState& s, double dt, Params const& params);
EvolutionState wave_step(EvolutionState state, double dt, Params const& params);

struct EvolveResult
{
    std::vector<EvolutionState> samples;
    ConservedLog log;
};

/// Strang coupling W(dt/2) N(dt) W(dt/2) up to t0 + T with T / dt steps
/// (rounded). Samples and log entries are taken every `stride` steps and at
/// the end; stride = 0 records the endpoints only.
EvolveResult evolve_coupled(EvolutionState const& state0, double T, double dt,
                            Params const& params, std::size_t stride = 0,
                            bool keep_samples = true);

/// Quasi-static evolution; the callback sees the state after every
/// `stride`-th step (and at t0 and the end).
EvolutionState evolve_quasistatic(EvolutionState state, double T, double dt, Params const& params,
                                  std::size_t stride,
                                  std::function<void(EvolutionState const&)> const& observe,
                                  bool drop_interaction = false);

struct OrbitalFit
{
    /// ||psi - e^{i theta} u||_{X_A} at theta below.
    double distance = 0;
    /// arg of the L2 inner product <psi, u>.
    double theta = 0;
    /// Minimum over a 64-point scan of theta within +-0.05 rad of theta.
    double scan_distance = 0;
};

double xa_norm(ComplexProfile const& f, double H);

OrbitalFit orbital_fit(ComplexProfile const& psi, RealProfile const& u, double H);
/// min over theta of ||psi - e^{i theta} u||_{X_A}; u may be a half-line
/// profile, in which case it is mirrored first.
double orbital_distance(ComplexProfile const& psi, RealProfile const& u, double H);
double orbital_distance(ComplexProfile const& psi, StandingWave const& sw, double H);

/// Gaussian of standard deviation `width` centred at 0, scaled to unit X_A norm.
RealProfile xa_normalized_bump(Grid const& grid, double width, double H);

struct StabilityOptions
{
    std::size_t stride = 10;
    double bump_width = 0.5;
    bool drop_interaction = false;
};

struct StabilityResult
{
    std::vector<double> times;
    std::vector<double> distances;
    /// Unwrapped arg <psi(t), u>.
    std::vector<double> phases;
    /// ||rho(t) - rho_sw||_{H^1}.
    std::vector<double> rho_deviation;
    double initial_distance = 0;
    double sup_distance = 0;
    /// Least-squares slope of phases against times.
    double phase_rate = 0;
};

/// Quasi-static evolution of sw.u (1 + delta bump) on the mirrored grid.
StabilityResult stability_experiment(StandingWave const& sw, double delta, double T, double dt,
                                     StabilityOptions const& opts = {});

struct SupportSpec
{
    double theta = 1;
    double delta = 1;

    void validate() const;
};

/// Quadrature of |u|^2 + rho^2 + rho_x^2 + rho_t^2 over |x| >= theta + delta,
/// with the cell cut by the boundary integrated by linear interpolation.
/// Throws DomainTooSmall when the grid does not reach past theta + delta.
double exterior_mass(EvolutionState const& s, SupportSpec const& spec);

/// Fraction of the mass of |u|^2 + rho^2 in the outermost 5% of nodes.
double boundary_touch(EvolutionState const& s);

/// exp(-1 / (1 - (x / theta)^2)) inside (-theta, theta), 0 elsewhere.
double compact_bump(double x, double theta);

/// Least-squares fit f(t) ~ c2 t^2 + c3 t^3.
struct EnvelopeFit
{
    double c2 = 0;
    double c3 = 0;
    double max_rel_misfit = 0;
};
EnvelopeFit fit_cubic_envelope(std::vector<double> const& t, std::vector<double> const& f);

}  // namespace nematic
