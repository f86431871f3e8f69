#pragma once

#include "nematic/diagnostics_report.hpp"
#include "nematic/grid.hpp"
#include "nematic/standing_wave.hpp"

namespace nematic {

// All integrals below are over the whole line: half-line profiles are
// treated as even and their integrals doubled.

/// E(u) = 1/2 int u_x^2 + 1/2 H^2 int x^2 u^2 - 1/4 int u^4 - 1/2 int rho u^2.
double energy(RealProfile const& u, RealProfile const& rho, double H);

/// Normalised |2 |u_x|^2 - 2 H^2 |xu|^2 - 1/2 |u|_4^4 + int u^2 x rho_x|,
/// with rho_x by central differences of the given rho.
double pohozaev_residual(RealProfile const& u, RealProfile const& rho, double H);

/// Normalised ||u_x|^2 + H^2 |xu|^2 - int rho u^2 - |u|_4^4 + mu |u|^2|.
double multiplier_residual(RealProfile const& u, RealProfile const& rho, Params const& params);

/// Relative L2 distance between u / |u| and the normalised e^{-H x^2 / 2}.
/// Throws ZeroProfile when |u| = 0.
double gaussian_shape_error(RealProfile const& u, double H);

DiagnosticsReport compute_diagnostics(RealProfile const& u, RealProfile const& rho,
                                      Params const& params);
/// Fills sw.diagnostics and returns it.
DiagnosticsReport diagnose(StandingWave& sw);

/// Full-line |u|_2^2.
double mass(RealProfile const& u);

/// Smallest x >= 0 with f(x) = f(0) / 2, by linear interpolation.
double half_height_radius(RealProfile const& f);

/// Sup over interior nodes of the centred finite-difference residual of
/// u'' - H^2 x^2 u + u^3 + rho u - mu u, divided by sup|u|. Nodes where u
/// was clamped to zero are skipped.
double scalar_equation_residual(RealProfile const& u, RealProfile const& rho,
                                Params const& params);

/// |u|_4^4 / (|u_x|_2 |u|_2^3); bounded by 1 in one dimension.
double gagliardo_nirenberg_ratio(RealProfile const& u);

struct HolderBound
{
    double interaction = 0;  ///< int rho u^2
    double bound = 0;        ///< (int rho^2)^{1/2} (int u^4)^{1/2}
};
HolderBound holder_interaction_bound(RealProfile const& u, RealProfile const& rho);

}  // namespace nematic
