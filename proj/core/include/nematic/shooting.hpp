#pragma once

#include "nematic/errors.hpp"
#include "nematic/grid.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

namespace nematic {

enum class Classification
{
    went_negative,
    became_increasing,
    survived,
};

inline char const* to_string(Classification c) noexcept
{
    switch (c) {
    case Classification::went_negative: return "went_negative";
    case Classification::became_increasing: return "became_increasing";
    case Classification::survived: return "survived";
    }
    return "unknown";
}

/// Bracket and termination settings shared by the u- and rho-shooting.
struct ShootConfig
{
    double bracket_lo = 1e-6;
    double bracket_hi = 10.0;
    int max_bisections = 200;
    double blowup_factor = 2.0;
    double monotonicity_tol = 0.0;
    /// On-grid survivors keep marching over a virtual tail this many grid
    /// lengths long (forcing switched off) until they classify.
    double tail_extension = 4.0;
    /// Bisection stops once hi - lo <= rel_width_tol * mid.
    double rel_width_tol = 1e-15;
    /// Number of x2 widenings tried when both ends classify alike.
    int max_widenings = 10;
};

/// Result of one march. `index` is the first offending node; indices at or
/// past n_points lie in the virtual tail. Samples from the offending node
/// on are clamped to zero.
struct MarchOutcome
{
    RealProfile profile;
    Classification classification = Classification::survived;
    std::size_t index = 0;
};

struct ShootTelemetry
{
    int bisections = 0;
    int widenings = 0;
    double final_lo = 0;
    double final_hi = 0;
    Classification final_classification = Classification::survived;
    std::size_t final_index = 0;

    double final_width() const noexcept { return final_hi - final_lo; }
};

struct ShotResult
{
    double initial_value = 0;
    MarchOutcome outcome;
    ShootTelemetry telemetry;
};

/// Classification-driven bisection on the initial value: keeps one end
/// classified went_negative and the other became_increasing and moves the
/// matching end to the midpoint. Works for either dependence direction.
template<class March>
ShotResult bisect_initial_value(March&& march, ShootConfig const& cfg)
{
    if (!(cfg.bracket_hi > cfg.bracket_lo) || cfg.bracket_lo < 0)
        throw BracketError("bracket [" + std::to_string(cfg.bracket_lo) + ", " +
                           std::to_string(cfg.bracket_hi) + "] is empty or negative");

    ShootTelemetry tel;
    double lo = cfg.bracket_lo;
    double hi = cfg.bracket_hi;
    MarchOutcome out_lo = march(lo);
    MarchOutcome out_hi = march(hi);

    auto finish = [&](double value, MarchOutcome out) {
        tel.final_lo = lo;
        tel.final_hi = hi;
        tel.final_classification = out.classification;
        tel.final_index = out.index;
        return ShotResult{value, std::move(out), tel};
    };

    if (out_lo.classification == Classification::survived)
        return finish(lo, std::move(out_lo));
    if (out_hi.classification == Classification::survived)
        return finish(hi, std::move(out_hi));

    while (out_lo.classification == out_hi.classification) {
        if (tel.widenings >= cfg.max_widenings)
            throw BracketError("both bracket ends classify as " +
                               std::string(to_string(out_lo.classification)));
        ++tel.widenings;
        lo *= 0.5;
        hi *= 2.0;
        out_lo = march(lo);
        out_hi = march(hi);
        if (out_lo.classification == Classification::survived)
            return finish(lo, std::move(out_lo));
        if (out_hi.classification == Classification::survived)
            return finish(hi, std::move(out_hi));
    }

    auto const lo_class = out_lo.classification;
    for (; tel.bisections < cfg.max_bisections; ++tel.bisections) {
        double const mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi) || hi - lo <= cfg.rel_width_tol * std::abs(mid))
            break;
        auto out = march(mid);
        if (out.classification == Classification::survived)
            return finish(mid, std::move(out));
        if (out.classification == lo_class)
            lo = mid;
        else
            hi = mid;
    }
    double const mid = 0.5 * (lo + hi);
    return finish(mid, march(mid));
}

}  // namespace nematic
