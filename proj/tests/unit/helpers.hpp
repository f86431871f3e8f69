#pragma once

#include <nematic/grid.hpp>
#include <nematic/standing_wave.hpp>

#include <cmath>
#include <vector>

namespace nematic::test {

/// Reference steady state (H = 1, mu = -0.8, lambda = 0.1, b = 1) on the
/// default mesh, solved once per process.
inline StandingWave const& reference_wave()
{
    static StandingWave const sw = picard_fixed_point(Params{}, default_standing_grid());
    return sw;
}

inline double rel_l2(std::vector<double> const& a, std::vector<double> const& b)
{
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

inline double sup_diff(std::vector<double> const& a, std::vector<double> const& b)
{
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline bool positive_decreasing(RealProfile const& f, std::size_t up_to)
{
    for (std::size_t i = 0; i + 1 < up_to; ++i)
        if (!(f[i] > 0) || f[i + 1] > f[i])
            return false;
    return true;
}

/// Index of the first node where f drops to zero (the clamped tail).
inline std::size_t support_end(RealProfile const& f)
{
    std::size_t i = 0;
    while (i < f.size() && f[i] > 0)
        ++i;
    return i;
}

}  // namespace nematic::test
