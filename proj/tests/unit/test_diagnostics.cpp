#include "helpers.hpp"

#include <doctest.h>
#include <nematic/diagnostics.hpp>
#include <nematic/sweeps.hpp>

#include <cmath>
#include <numbers>

using namespace nematic;
using namespace nematic::test;

namespace {

RealProfile gaussian(Grid const& g, double c, double H)
{
    return RealProfile::sample(g, [=](double x) { return c * std::exp(-H * x * x / 2); });
}

/// Reference wave re-solved on [0, 6] at spacing dx.
StandingWave reference_at(double dx)
{
    return picard_fixed_point(Params{}, Grid::half_line(std::size_t(std::lround(6.0 / dx)) + 1, dx));
}

}  // namespace

TEST_SUITE("diagnostics")
{
    TEST_CASE("energy")
    {
        auto const g = default_standing_grid();
        RealProfile const zero{g};
        CHECK(energy(zero, zero, 1.0) == 0.0);

        for (double H : {1.0, 2.0}) {
            // Unit-mass Gaussian scaled by c: 2 E / c^2 -> lambda0.
            double const norm = std::sqrt(mass(gaussian(g, 1.0, H)));
            double const c = 1e-3;
            double const E = energy(gaussian(g, c / norm, H), zero, H);
            CHECK(std::abs(2 * E / (c * c) - H) <= 1e-5);
        }

        auto const& sw = reference_wave();
        double const E = energy(sw.u, sw.rho, sw.params.H);
        CHECK(std::isfinite(E));
        CHECK(E < energy(sw.u, zero, sw.params.H));
    }

    TEST_CASE("Pohozaev identity")
    {
        auto const g = default_standing_grid();
        RealProfile const zero{g};
        CHECK(pohozaev_residual(zero, zero, 1.0) == 0.0);

        auto const& sw = reference_wave();
        double const r = pohozaev_residual(sw.u, sw.rho, 1.0);
        CHECK(r <= 2e-2);
        CHECK(pohozaev_residual(1.1 * sw.u, sw.rho, 1.0) > 5 * r);
    }

    TEST_CASE("multiplier identity")
    {
        auto const g = default_standing_grid();
        RealProfile const zero{g};
        CHECK(multiplier_residual(zero, zero, Params{}) == 0.0);

        auto const& sw = reference_wave();
        CHECK(multiplier_residual(sw.u, sw.rho, sw.params) <= 2e-2);

        // Gaussian at mu = -lambda0: only the quartic term is left over.
        Params p;
        p.mu = -1.0;
        double const r1 = multiplier_residual(gaussian(g, 1e-1, 1.0), zero, p);
        double const r2 = multiplier_residual(gaussian(g, 1e-2, 1.0), zero, p);
        CHECK(r2 / r1 == doctest::Approx(1e-2).epsilon(0.05));
    }

    TEST_CASE("identity residuals shrink under refinement")
    {
        auto const coarse = reference_at(0.004);
        auto const fine = reference_at(0.002);
        REQUIRE(coarse.converged);
        REQUIRE(fine.converged);
        double const pc = pohozaev_residual(coarse.u, coarse.rho, 1.0);
        double const pf = pohozaev_residual(fine.u, fine.rho, 1.0);
        double const mc = multiplier_residual(coarse.u, coarse.rho, coarse.params);
        double const mf = multiplier_residual(fine.u, fine.rho, fine.params);
        CAPTURE(pc);
        CAPTURE(pf);
        CAPTURE(mc);
        CAPTURE(mf);
        CHECK(pc / pf >= 2.0);
        CHECK(mc / mf >= 2.0);
    }

    TEST_CASE("Gaussian shape error")
    {
        auto const g = default_standing_grid();
        for (double H : {0.5, 1.0, 2.0})
            CHECK(gaussian_shape_error(gaussian(g, 3.0, H), H) <= 1e-10);
        CHECK_THROWS_AS(gaussian_shape_error(RealProfile{g}, 1.0), ZeroProfile);

        Params p;
        p.H = 2.0;
        p.mu = -1.9999;
        auto const near = picard_fixed_point(p, g);
        REQUIRE(near.converged);
        double const e_near = gaussian_shape_error(near.u, 2.0);
        CHECK(e_near <= 5e-2);

        // Far from the bifurcation the profile departs clearly from the
        // Gaussian; the measured departure is about 1.5e-2.
        double const e_far = gaussian_shape_error(reference_wave().u, 1.0);
        CHECK(e_far > 100 * e_near);
    }

    TEST_CASE("Gagliardo-Nirenberg and Hoelder bounds on the corpus")
    {
        auto const g = default_standing_grid();
        std::vector<RealProfile> corpus{gaussian(g, 1.0, 1.0), gaussian(g, 0.2, 3.0),
                                        RealProfile::sample(g, [](double x) {
                                            return 1.0 / std::cosh(2 * x);
                                        }),
                                        reference_wave().u};
        for (auto const& u : corpus)
            CHECK(gagliardo_nirenberg_ratio(u) <= 1.0);

        auto const& sw = reference_wave();
        auto const hb = holder_interaction_bound(sw.u, sw.rho);
        CHECK(hb.interaction > 0);
        CHECK(hb.interaction <= hb.bound * (1 + 1e-14));
        auto const same = holder_interaction_bound(sw.u, RealProfile::sample(g, [&](double x) {
            return interpolate(sw.u, x) * interpolate(sw.u, x);
        }));
        CHECK(same.interaction == doctest::Approx(same.bound).epsilon(1e-12));
    }

    TEST_CASE("report and helpers")
    {
        auto sw = reference_wave();
        auto const rep = diagnose(sw);
        CHECK(rep.lambda0 == 1.0);
        CHECK(rep.mass == doctest::Approx(mass(sw.u)));
        CHECK(sw.diagnostics.energy == rep.energy);

        auto const g = Grid::half_line(3001, 1e-3);
        auto const f = RealProfile::sample(g, [](double x) { return std::exp(-x * x); });
        CHECK(half_height_radius(f) == doctest::Approx(std::sqrt(std::log(2.0))).epsilon(1e-6));
        CHECK(mass(gaussian(Grid::half_line(8001, 1e-3), 1.0, 1.0)) ==
              doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-6));
    }
}
