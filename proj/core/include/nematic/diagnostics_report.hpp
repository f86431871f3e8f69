#pragma once

namespace nematic {

/// Identity residuals and integral quantities of a standing wave. Residuals
/// are absolute values normalised by the largest constituent term.
struct DiagnosticsReport
{
    double mass = 0;
    double energy = 0;
    double pohozaev_residual = 0;
    double multiplier_residual = 0;
    double lambda0 = 0;
    double gaussian_shape_error = 0;
};

}  // namespace nematic
