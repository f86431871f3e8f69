#include "helpers.hpp"

#include <doctest.h>
#include <nematic/diagnostics.hpp>
#include <nematic/sweeps.hpp>

#include <cmath>
#include <sstream>

using namespace nematic;
using namespace nematic::test;

namespace {

Params near_bifurcation_base()
{
    Params p;
    p.H = 2.0;
    return p;
}

std::size_t line_count(std::string const& s)
{
    return std::size_t(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_SUITE("sweeps")
{
    TEST_CASE("log-spaced mu values")
    {
        auto const mu = log_spaced_mu(2.0, -1.9, -1.9999153, 60);
        REQUIRE(mu.size() == 60);
        CHECK(mu.front() == doctest::Approx(-1.9).epsilon(1e-14));
        CHECK(mu.back() == doctest::Approx(-1.9999153).epsilon(1e-14));
        for (std::size_t i = 1; i < mu.size(); ++i)
            CHECK(mu[i] < mu[i - 1]);
        double const r0 = (2.0 + mu[1]) / (2.0 + mu[0]);
        CHECK((2.0 + mu[40]) / (2.0 + mu[39]) == doctest::Approx(r0).epsilon(1e-9));
        CHECK_THROWS_AS(log_spaced_mu(2.0, -1.9, -2.1, 5), std::invalid_argument);
    }

    TEST_CASE("empty and single-point sweeps")
    {
        CHECK(mu_sweep(Params{}, {}).rows.empty());
        CHECK(h_sweep(Params{}, {}).rows.empty());

        auto const one = mu_sweep(Params{}, {-0.8});
        REQUIRE(one.rows.size() == 1);
        auto const& row = one.rows[0];
        auto const& sw = reference_wave();
        CHECK(row.converged);
        CHECK(row.varied_param_name == "mu");
        CHECK(row.mass == doctest::Approx(mass(sw.u)).epsilon(1e-12));
        CHECK(row.u0 == doctest::Approx(sw.u0).epsilon(1e-12));
        CHECK_FALSE(one.first_failure);

        Params hp;
        hp.mu = 0.2;
        hp.b = 2.0;
        auto const h = h_sweep(hp, {1.0});
        REQUIRE(h.rows.size() == 1);
        CHECK(h.rows[0].varied_param_name == "H");
        CHECK(h.rows[0].converged);
    }

    TEST_CASE("invalid inputs")
    {
        CHECK_THROWS_AS(mu_sweep(near_bifurcation_base(), {-2.5}), std::invalid_argument);
        CHECK_THROWS_AS(h_sweep(Params{}, {2.0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(h_sweep(Params{}, {-1.0}), std::invalid_argument);
    }

    TEST_CASE("warm, cold and parallel sweeps agree")
    {
        auto const mu = log_spaced_mu(2.0, -1.9, -1.999, 8);
        SweepOptions warm;
        auto const w = mu_sweep(near_bifurcation_base(), mu, warm);
        SweepOptions cold;
        cold.warm_start = false;
        auto const c = mu_sweep(near_bifurcation_base(), mu, cold);
        SweepOptions par = cold;
        par.jobs = 3;
        auto const p = mu_sweep(near_bifurcation_base(), mu, par);
        REQUIRE(w.rows.size() == mu.size());
        REQUIRE(c.rows.size() == mu.size());
        for (std::size_t i = 0; i < mu.size(); ++i) {
            CHECK(w.rows[i].converged);
            CHECK(w.rows[i].mass == doctest::Approx(c.rows[i].mass).epsilon(1e-6));
            CHECK(p.rows[i] == c.rows[i]);
            if (i > 0)
                CHECK(w.rows[i].mass < w.rows[i - 1].mass);
        }
    }

    TEST_CASE("rows are ordered toward the bifurcation point")
    {
        auto const s = mu_sweep(near_bifurcation_base(), {-1.99, -1.9, -1.95});
        REQUIRE(s.rows.size() == 3);
        CHECK(s.rows[0].varied_param_value == -1.9);
        CHECK(s.rows[2].varied_param_value == -1.99);
    }

    TEST_CASE("non-converged rows are recorded")
    {
        SweepOptions opts;
        opts.picard.max_iters = 1;
        auto const s = mu_sweep(Params{}, {-0.8, -0.9}, opts);
        REQUIRE(s.rows.size() == 2);
        CHECK_FALSE(s.rows[0].converged);
        REQUIRE(s.first_failure);
        CHECK(*s.first_failure == -0.8);
        CHECK(std::isfinite(s.rows[0].mass));
    }

    TEST_CASE("director concentrates as H grows")
    {
        Params base;
        base.mu = 0.2;
        base.b = 2.0;
        SweepOptions opts;
        opts.keep_waves = true;
        auto const s = h_sweep(base, {0.5, 1.0, 1.5, 2.0}, opts);
        REQUIRE(s.rows.size() == 4);
        double prev = 1e300;
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(s.rows[i].converged);
            double const r = half_height_radius(s.waves[i].rho);
            CHECK(r < prev);
            prev = r;
        }
    }

    TEST_CASE("export and import")
    {
        std::ostringstream empty;
        export_rows({}, ExportFormat::csv, empty);
        CHECK(empty.str() ==
              "varied_param_name,varied_param_value,mass,u0,rho0,energy,pohozaev_residual,"
              "multiplier_residual,gaussian_shape_error,picard_iters_used,converged\n");

        auto const rows = mu_sweep(near_bifurcation_base(), log_spaced_mu(2.0, -1.9, -1.99, 3)).rows;
        auto bad = rows;
        bad.push_back(SweepRow{"mu", -1.999, std::nan(""), 0, 0, 0, 0, 0, 0, 15, false});
        for (auto fmt : {ExportFormat::csv, ExportFormat::json}) {
            std::stringstream ss;
            export_rows(rows, fmt, ss);
            if (fmt == ExportFormat::csv)
                CHECK(line_count(ss.str()) == rows.size() + 1);
            CHECK(import_rows(fmt, ss) == rows);

            std::stringstream with_nan;
            export_rows(bad, fmt, with_nan);
            auto const back = import_rows(fmt, with_nan);
            REQUIRE(back.size() == bad.size());
            CHECK(std::isnan(back.back().mass));
            CHECK_FALSE(back.back().converged);
        }
        std::istringstream wrong{"a,b,c\n"};
        CHECK_THROWS(import_rows(ExportFormat::csv, wrong));
    }
}
