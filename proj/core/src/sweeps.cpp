#include "nematic/sweeps.hpp"

#include "nematic/diagnostics.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nematic {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct RowRun
{
    SweepRow row;
    std::optional<StandingWave> wave;
    double first_shot_u0 = 0;
};

RowRun run_row(std::string const& name, double value, Params const& params,
               SweepOptions const& opts, double warm_u0)
{
    RowRun out;
    out.row.varied_param_name = name;
    out.row.varied_param_value = value;

    ShootConfig scfg = opts.shoot;
    if (warm_u0 > 0) {
        scfg.bracket_lo = 0.8 * warm_u0;
        scfg.bracket_hi = 1.2 * warm_u0;
    }
    std::optional<PicardOutcome> outcome;
    try {
        outcome = picard_iterate(params, opts.grid, opts.picard, scfg);
    } catch (BracketError const&) {
        if (warm_u0 > 0) {
            try {
                outcome = picard_iterate(params, opts.grid, opts.picard, opts.shoot);
            } catch (BracketError const&) {
            }
        }
    }
    if (!outcome) {
        for (double* f : {&out.row.mass, &out.row.u0, &out.row.rho0, &out.row.energy,
                          &out.row.pohozaev_residual, &out.row.multiplier_residual,
                          &out.row.gaussian_shape_error})
            *f = nan;
        return out;
    }

    auto& sw = outcome->wave;
    auto const d = diagnose(sw);
    out.row.mass = d.mass;
    out.row.u0 = sw.u0;
    out.row.rho0 = sw.rho0;
    out.row.energy = d.energy;
    out.row.pohozaev_residual = d.pohozaev_residual;
    out.row.multiplier_residual = d.multiplier_residual;
    out.row.gaussian_shape_error = d.gaussian_shape_error;
    out.row.picard_iters_used = sw.picard_iters_used;
    out.row.converged = outcome->status == PicardStatus::converged;
    out.first_shot_u0 = sw.u0_history.empty() ? 0.0 : sw.u0_history.front();
    if (opts.keep_waves)
        out.wave = std::move(sw);
    return out;
}

SweepResult run_sweep(std::string const& name, Params const& base, std::vector<double> const& values,
                      SweepOptions const& opts, double Params::*field)
{
    std::vector<RowRun> runs(values.size());
    auto params_for = [&](std::size_t i) {
        Params p = base;
        p.*field = values[i];
        return p;
    };

    if (opts.jobs > 1) {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < values.size(); i = next++)
                runs[i] = run_row(name, values[i], params_for(i), opts, 0.0);
        };
        std::vector<std::jthread> pool;
        auto const n = std::min<std::size_t>(static_cast<std::size_t>(opts.jobs), values.size());
        for (std::size_t t = 0; t < n; ++t)
            pool.emplace_back(worker);
    } else {
        double warm = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            runs[i] = run_row(name, values[i], params_for(i), opts, opts.warm_start ? warm : 0.0);
            if (runs[i].row.converged)
                warm = runs[i].first_shot_u0;
        }
    }

    SweepResult result;
    for (auto& r : runs) {
        if (!r.row.converged && !result.first_failure)
            result.first_failure = r.row.varied_param_value;
        result.rows.push_back(std::move(r.row));
        if (opts.keep_waves)
            result.waves.push_back(r.wave ? std::move(*r.wave) : StandingWave{opts.grid});
    }
    return result;
}

std::string fmt17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

constexpr char const* csv_header =
    "varied_param_name,varied_param_value,mass,u0,rho0,energy,pohozaev_residual,"
    "multiplier_residual,gaussian_shape_error,picard_iters_used,converged";

}  // namespace

std::vector<double> log_spaced_mu(double lambda0, double mu_first, double mu_last, std::size_t count)
{
    if (count == 0)
        return {};
    double const d0 = lambda0 + mu_first;
    double const d1 = lambda0 + mu_last;
    if (!(d0 > 0 && d1 > 0))
        throw std::invalid_argument("log_spaced_mu: need lambda0 + mu > 0 at both ends");
    std::vector<double> mus(count);
    for (std::size_t i = 0; i < count; ++i) {
        double const t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        mus[i] = std::exp((1 - t) * std::log(d0) + t * std::log(d1)) - lambda0;
    }
    mus.front() = mu_first;
    mus.back() = count == 1 ? mu_first : mu_last;
    return mus;
}

SweepResult mu_sweep(Params const& base, std::vector<double> mu_values, SweepOptions const& opts)
{
    double const l0 = base.lambda0();
    for (double mu : mu_values)
        if (!(l0 + mu > 0))
            throw std::invalid_argument("mu_sweep: every mu must satisfy -mu < lambda0");
    std::stable_sort(mu_values.begin(), mu_values.end(), std::greater<>{});
    return run_sweep("mu", base, mu_values, opts, &Params::mu);
}

SweepResult h_sweep(Params const& base, std::vector<double> H_values, SweepOptions const& opts)
{
    for (std::size_t i = 0; i < H_values.size(); ++i) {
        if (!(H_values[i] > 0))
            throw std::invalid_argument("h_sweep: H values must be positive");
        if (i > 0 && !(H_values[i] > H_values[i - 1]))
            throw std::invalid_argument("h_sweep: H values must be ascending");
    }
    return run_sweep("H", base, H_values, opts, &Params::H);
}

void export_rows(std::vector<SweepRow> const& rows, ExportFormat format, std::ostream& os)
{
    if (format == ExportFormat::csv) {
        os << csv_header << '\n';
        for (auto const& r : rows) {
            os << r.varied_param_name << ',' << fmt17(r.varied_param_value) << ',' << fmt17(r.mass)
               << ',' << fmt17(r.u0) << ',' << fmt17(r.rho0) << ',' << fmt17(r.energy) << ','
               << fmt17(r.pohozaev_residual) << ',' << fmt17(r.multiplier_residual) << ','
               << fmt17(r.gaussian_shape_error) << ',' << r.picard_iters_used << ','
               << (r.converged ? "true" : "false") << '\n';
        }
        return;
    }
    auto num = [](double v) -> nlohmann::json {
        if (std::isfinite(v))
            return v;
        return nullptr;
    };
    nlohmann::json arr = nlohmann::json::array();
    for (auto const& r : rows) {
        arr.push_back({{"varied_param_name", r.varied_param_name},
                       {"varied_param_value", num(r.varied_param_value)},
                       {"mass", num(r.mass)},
                       {"u0", num(r.u0)},
                       {"rho0", num(r.rho0)},
                       {"energy", num(r.energy)},
                       {"pohozaev_residual", num(r.pohozaev_residual)},
                       {"multiplier_residual", num(r.multiplier_residual)},
                       {"gaussian_shape_error", num(r.gaussian_shape_error)},
                       {"picard_iters_used", r.picard_iters_used},
                       {"converged", r.converged}});
    }
    os << arr.dump(2) << '\n';
}

void export_rows(std::vector<SweepRow> const& rows, ExportFormat format,
                 std::filesystem::path const& path)
{
    std::ofstream os{path};
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    export_rows(rows, format, os);
    if (!os)
        throw std::runtime_error("write failed for " + path.string());
}

std::vector<SweepRow> import_rows(ExportFormat format, std::istream& is)
{
    std::vector<SweepRow> rows;
    if (format == ExportFormat::csv) {
        std::string line;
        if (!std::getline(is, line) || line != csv_header)
            throw std::runtime_error("sweep CSV: unexpected header");
        while (std::getline(is, line)) {
            if (line.empty())
                continue;
            std::vector<std::string> cells;
            std::stringstream ss{line};
            std::string cell;
            while (std::getline(ss, cell, ','))
                cells.push_back(cell);
            if (cells.size() != 11)
                throw std::runtime_error("sweep CSV: bad row '" + line + "'");
            SweepRow r;
            r.varied_param_name = cells[0];
            double* fields[] = {&r.varied_param_value, &r.mass, &r.u0, &r.rho0, &r.energy,
                                &r.pohozaev_residual, &r.multiplier_residual,
                                &r.gaussian_shape_error};
            for (std::size_t k = 0; k < 8; ++k)
                *fields[k] = std::strtod(cells[k + 1].c_str(), nullptr);
            r.picard_iters_used = std::stoi(cells[9]);
            r.converged = cells[10] == "true";
            rows.push_back(std::move(r));
        }
        return rows;
    }
    auto const arr = nlohmann::json::parse(is);
    auto num = [](nlohmann::json const& j) { return j.is_null() ? nan : j.get<double>(); };
    for (auto const& j : arr) {
        SweepRow r;
        r.varied_param_name = j.at("varied_param_name").get<std::string>();
        r.varied_param_value = num(j.at("varied_param_value"));
        r.mass = num(j.at("mass"));
        r.u0 = num(j.at("u0"));
        r.rho0 = num(j.at("rho0"));
        r.energy = num(j.at("energy"));
        r.pohozaev_residual = num(j.at("pohozaev_residual"));
        r.multiplier_residual = num(j.at("multiplier_residual"));
        r.gaussian_shape_error = num(j.at("gaussian_shape_error"));
        r.picard_iters_used = j.at("picard_iters_used").get<int>();
        r.converged = j.at("converged").get<bool>();
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<SweepRow> import_rows(ExportFormat format, std::filesystem::path const& path)
{
    std::ifstream is{path};
    if (!is)
        throw std::runtime_error("cannot open " + path.string() + " for reading");
    return import_rows(format, is);
}

}  // namespace nematic
