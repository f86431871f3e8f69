#include "nematic_cli/run.hpp"

#include <nematic/diagnostics.hpp>
#include <nematic/evolution.hpp>
#include <nematic/profile_io.hpp>
#include <nematic/standing_wave.hpp>
#include <nematic/sweeps.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

namespace nematic::cli {

using json = nlohmann::json;

std::string default_output_dir()
{
    if (char const* env = std::getenv("NEMATIC_OUT_DIR"); env && *env)
        return env;
    return "nematic-out";
}

std::string utc_timestamp()
{
    std::time_t const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

namespace {

/// Raised for inputs that are well-formed but unusable (exit code 1).
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

class Artifacts
{
  public:
    explicit Artifacts(std::filesystem::path dir) : dir_{std::move(dir)}
    {
        std::filesystem::create_directories(dir_);
    }

    std::filesystem::path path(std::string const& name)
    {
        names_.push_back(name);
        return dir_ / name;
    }

    void write_json(std::string const& name, json const& j)
    {
        std::ofstream os{path(name)};
        os << j.dump(2) << '\n';
        if (!os)
            throw std::runtime_error("write failed for " + (dir_ / name).string());
    }

    std::vector<std::string> const& names() const noexcept { return names_; }

  private:
    std::filesystem::path dir_;
    std::vector<std::string> names_;
};

json config_json(RunConfig const& cfg)
{
    std::stringstream ss;
    write_config(ss, cfg);
    json out = json::object();
    for (auto const& [key, entry] : parse_config(ss)) {
        json value;
        std::visit([&](auto const& v) { value = v; }, entry.value);
        if (is_integral_key(key))
            value = static_cast<long long>(std::get<double>(entry.value));
        auto const dot = key.find('.');
        if (dot == std::string::npos)
            out[key] = value;
        else
            out[key.substr(0, dot)][key.substr(dot + 1)] = value;
    }
    return out;
}

std::string config_text(RunConfig const& cfg)
{
    std::stringstream ss;
    write_config(ss, cfg);
    return ss.str();
}

json params_json(Params const& p)
{
    return {{"H", p.H}, {"mu", p.mu}, {"lambda", p.lambda}, {"b", p.b}, {"a", p.a}, {"alpha", p.alpha}};
}

json diagnostics_json(DiagnosticsReport const& d)
{
    return {{"mass", d.mass},
            {"energy", d.energy},
            {"pohozaev_residual", d.pohozaev_residual},
            {"multiplier_residual", d.multiplier_residual},
            {"lambda0", d.lambda0},
            {"gaussian_shape_error", d.gaussian_shape_error}};
}

RealProfile for_output(RealProfile const& f, RunConfig const& cfg)
{
    return cfg.grid.symmetric && f.grid.is_half_line() ? mirror_to_symmetric(f) : f;
}

std::string numbered(char const* stem, std::size_t k)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu.csv", stem, k);
    return buf;
}

json wave_json(StandingWave const& sw, PicardStatus status)
{
    return {{"status", to_string(status)},
            {"converged", sw.converged},
            {"picard_iters_used", sw.picard_iters_used},
            {"u0", sw.u0},
            {"rho0", sw.rho0},
            {"deltas", sw.deltas},
            {"relaxations", sw.relaxations},
            {"u0_history", sw.u0_history},
            {"rho0_history", sw.rho0_history},
            {"diagnostics", diagnostics_json(sw.diagnostics)}};
}

PicardOutcome solve_wave(RunConfig const& cfg, std::ostream& log)
{
    auto out = picard_iterate(cfg.params, cfg.standing_grid(), cfg.picard, cfg.shoot);
    diagnose(out.wave);
    log << "picard: " << to_string(out.status) << " after " << out.wave.picard_iters_used
        << " iterations, u0 = " << out.wave.u0 << ", rho0 = " << out.wave.rho0 << '\n';
    return out;
}

int status_exit(PicardStatus s) { return s == PicardStatus::converged ? exit_ok : exit_nonconvergence; }

int cmd_solve(RunConfig const& cfg, Artifacts& art, json& result, std::ostream& log)
{
    auto out = solve_wave(cfg, log);
    auto const& sw = out.wave;
    write_csv(art.path("u.csv"), for_output(sw.u, cfg));
    write_csv(art.path("rho.csv"), for_output(sw.rho, cfg));
    for (std::size_t k = 0; k < sw.u_iterates.size(); ++k)
        write_csv(art.path(numbered("u_iter", k)), for_output(sw.u_iterates[k], cfg));
    for (std::size_t k = 0; k < sw.rho_iterates.size(); ++k)
        write_csv(art.path(numbered("rho_iter", k + 1)), for_output(sw.rho_iterates[k], cfg));
    result = wave_json(sw, out.status);
    return status_exit(out.status);
}

int cmd_diagnose(RunConfig const& cfg, Artifacts&, json& result, std::ostream& log)
{
    if (cfg.diagnose.u_path.empty() || cfg.diagnose.rho_path.empty())
        throw UsageError("diagnose needs diagnose.u_path and diagnose.rho_path");
    auto u = read_real_csv(cfg.diagnose.u_path);
    auto rho = read_real_csv(cfg.diagnose.rho_path);
    if (!(u.grid == rho.grid))
        throw UsageError("diagnose: u and rho profiles use different grids");
    if (!u.grid.is_half_line()) {
        u = restrict_to_half_line(u);
        rho = restrict_to_half_line(rho);
    }
    auto const d = compute_diagnostics(u, rho, cfg.params);
    auto const holder = holder_interaction_bound(u, rho);
    result = diagnostics_json(d);
    result["scalar_equation_residual"] = scalar_equation_residual(u, rho, cfg.params);
    result["gagliardo_nirenberg_ratio"] = gagliardo_nirenberg_ratio(u);
    result["holder_interaction"] = holder.interaction;
    result["holder_bound"] = holder.bound;
    result["rho_half_height_radius"] = half_height_radius(rho);
    log << "diagnose: mass " << d.mass << ", pohozaev " << d.pohozaev_residual << ", multiplier "
        << d.multiplier_residual << '\n';
    return exit_ok;
}

SweepOptions sweep_options(RunConfig const& cfg)
{
    SweepOptions o;
    o.grid = cfg.standing_grid();
    o.picard = cfg.picard;
    o.picard.keep_iterates = false;
    o.shoot = cfg.shoot;
    o.warm_start = cfg.sweep.warm_start;
    o.jobs = cfg.sweep.jobs;
    return o;
}

int write_sweep(RunConfig const& cfg, std::string const& param, std::string const& stamp,
                std::vector<double> const& values, SweepResult const& res, Artifacts& art,
                json& result, std::ostream& log)
{
    std::string const stem = "sweep_" + param + "_" + stamp;
    export_rows(res.rows, ExportFormat::csv, art.path(stem + ".csv"));
    json fixed = params_json(cfg.params);
    fixed.erase(param);
    json manifest{{"schema_version", schema_version},
                  {"kind", "sweep"},
                  {"varied_param", param},
                  {"values", values},
                  {"fixed_params", fixed},
                  {"grid", {{"dx", cfg.grid.dx}, {"n_points", cfg.grid.n_points}}},
                  {"csv", stem + ".csv"},
                  {"rows", res.rows.size()},
                  {"first_failure", res.first_failure ? json(*res.first_failure) : json(nullptr)},
                  {"timestamp", stamp}};
    art.write_json(stem + ".json", manifest);

    std::size_t converged = 0;
    for (auto const& r : res.rows)
        converged += r.converged ? 1 : 0;
    log << "sweep-" << param << ": " << converged << "/" << res.rows.size() << " rows converged\n";
    result = {{"rows", res.rows.size()},
              {"converged_rows", converged},
              {"first_failure", manifest["first_failure"]},
              {"csv", stem + ".csv"},
              {"manifest", stem + ".json"}};
    return converged == res.rows.size() ? exit_ok : exit_nonconvergence;
}

int cmd_sweep_mu(RunConfig const& cfg, std::string const& stamp, Artifacts& art, json& result,
                 std::ostream& log)
{
    auto values = log_spaced_mu(cfg.params.lambda0(), cfg.sweep.mu_first, cfg.sweep.mu_last,
                                cfg.sweep.count);
    auto res = mu_sweep(cfg.params, values, sweep_options(cfg));
    std::sort(values.begin(), values.end(), std::greater<>{});
    return write_sweep(cfg, "mu", stamp, values, res, art, result, log);
}

int cmd_sweep_h(RunConfig const& cfg, std::string const& stamp, Artifacts& art, json& result,
                std::ostream& log)
{
    auto res = h_sweep(cfg.params, cfg.sweep.h_values, sweep_options(cfg));
    int const code = write_sweep(cfg, "H", stamp, cfg.sweep.h_values, res, art, result, log);
    return code;
}

Params evolution_params(Params p)
{
    p.lambda = 0;
    return p;
}

int cmd_evolve(RunConfig const& cfg, Artifacts& art, json& result, std::ostream& log)
{
    auto wave = solve_wave(cfg, log);
    Params const p0 = evolution_params(cfg.params);
    auto const s0 = standing_wave_state(wave.wave, DirectorInit::linear_resolve);
    bool const snapshots = cfg.evolution.snapshot_every > 0;
    auto res = evolve_coupled(s0, cfg.evolution.T, cfg.evolution.dt, p0, cfg.evolution.stride, snapshots);
    write_conserved_log(res.log, art.path("conserved_log.csv"));
    if (snapshots) {
        for (std::size_t k = 0; k < res.samples.size(); k += cfg.evolution.snapshot_every) {
            write_csv(art.path(numbered("u_snapshot", k)), res.samples[k].u);
            write_csv(art.path(numbered("rho_snapshot", k)), res.samples[k].rho);
        }
    }
    result = {{"standing_wave", wave_json(wave.wave, wave.status)},
              {"evolution_lambda", 0.0},
              {"steps", static_cast<long long>(std::llround(cfg.evolution.T / cfg.evolution.dt))},
              {"mass_drift", res.log.mass_drift()},
              {"energy_drift", res.log.energy_drift()},
              {"initial_mass", res.log.mass_series.front()},
              {"initial_energy", res.log.energy_series.front()}};
    log << "evolve: mass drift " << res.log.mass_drift() << ", energy drift "
        << res.log.energy_drift() << '\n';
    return status_exit(wave.status);
}

int cmd_stability(RunConfig const& cfg, Artifacts& art, json& result, std::ostream& log)
{
    auto wave = solve_wave(cfg, log);
    StabilityOptions opts;
    opts.stride = std::max<std::size_t>(1, cfg.evolution.stride);
    opts.bump_width = cfg.evolution.bump_width;
    opts.drop_interaction = cfg.evolution.drop_interaction;
    auto const st = stability_experiment(wave.wave, cfg.evolution.delta, cfg.evolution.T,
                                         cfg.evolution.dt, opts);
    {
        std::ofstream os{art.path("stability.csv")};
        os << "t,distance,phase,rho_deviation\n";
        char buf[128];
        for (std::size_t i = 0; i < st.times.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", st.times[i],
                          st.distances[i], st.phases[i], st.rho_deviation[i]);
            os << buf;
        }
    }
    double const ratio = st.initial_distance > 0 ? st.sup_distance / st.initial_distance : 0.0;
    result = {{"standing_wave", wave_json(wave.wave, wave.status)},
              {"delta", cfg.evolution.delta},
              {"initial_distance", st.initial_distance},
              {"sup_distance", st.sup_distance},
              {"distance_ratio", ratio},
              {"phase_rate", st.phase_rate},
              {"phase_rate_error", std::abs(st.phase_rate - cfg.params.mu)},
              {"max_rho_deviation_h1",
               *std::max_element(st.rho_deviation.begin(), st.rho_deviation.end())}};
    log << "stability: sup/initial distance " << ratio << ", phase rate " << st.phase_rate << '\n';
    return status_exit(wave.status);
}

int cmd_support(RunConfig const& cfg, Artifacts& art, json& result, std::ostream& log)
{
    auto const& sp = cfg.support;
    SupportSpec{sp.theta, sp.delta}.validate();
    Params const p0 = evolution_params(cfg.params);
    Grid const g = Grid::symmetric_span(sp.half_length, sp.dx);
    EvolutionState s{g};
    for (std::size_t j = 0; j < g.n_points(); ++j) {
        double const b = compact_bump(g.x(j), sp.theta);
        s.u.values[j] = sp.u_amplitude * b;
        s.rho.values[j] = sp.rho_amplitude * b;
    }
    std::vector<double> times = sp.times;
    std::sort(times.begin(), times.end());
    if (times.empty() || times.front() <= 0)
        throw UsageError("support.times must hold positive sample times");

    std::ofstream os{art.path("support.csv")};
    os << "t,delta,exterior_mass\n";
    char buf[96];
    auto emit = [&](EvolutionState const& st) {
        for (double d : sp.deltas) {
            double const m = exterior_mass(st, {sp.theta, d});
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", st.t, d, m);
            os << buf;
        }
    };
    std::vector<double> initial;
    for (double d : sp.deltas)
        initial.push_back(exterior_mass(s, {sp.theta, d}));
    emit(s);

    std::vector<double> samples;
    double touch = boundary_touch(s);
    for (double t : times) {
        s = evolve_coupled(s, t - s.t, sp.dt, p0, 0, false).samples.back();
        emit(s);
        samples.push_back(exterior_mass(s, {sp.theta, sp.delta}));
        touch = std::max(touch, boundary_touch(s));
    }
    std::vector<double> at_last;
    for (double d : sp.deltas)
        at_last.push_back(exterior_mass(s, {sp.theta, d}));
    auto const fit = fit_cubic_envelope(times, samples);
    result = {{"evolution_lambda", 0.0},
              {"initial_exterior_mass", initial},
              {"times", times},
              {"exterior_mass_at_delta", samples},
              {"deltas", sp.deltas},
              {"exterior_mass_at_last_time", at_last},
              {"envelope", {{"c2", fit.c2}, {"c3", fit.c3}, {"max_rel_misfit", fit.max_rel_misfit}}},
              {"max_boundary_touch", touch}};
    log << "support: envelope c2 = " << fit.c2 << ", c3 = " << fit.c3 << '\n';
    return exit_ok;
}

}  // namespace

RunOutcome run(RunConfig const& cfg, std::ostream& log)
{
    std::string const dir = cfg.output_dir.empty() ? default_output_dir() : cfg.output_dir;
    std::string const stamp = cfg.timestamp.empty() ? utc_timestamp() : cfg.timestamp;
    RunConfig resolved = cfg;
    resolved.output_dir = dir;

    Artifacts art{dir};
    json result = json::object();
    std::string error;
    int code = exit_ok;
    try {
        resolved.params.validate();
        switch (cfg.command) {
        case Command::solve: code = cmd_solve(resolved, art, result, log); break;
        case Command::diagnose: code = cmd_diagnose(resolved, art, result, log); break;
        case Command::sweep_mu: code = cmd_sweep_mu(resolved, stamp, art, result, log); break;
        case Command::sweep_h: code = cmd_sweep_h(resolved, stamp, art, result, log); break;
        case Command::evolve: code = cmd_evolve(resolved, art, result, log); break;
        case Command::stability: code = cmd_stability(resolved, art, result, log); break;
        case Command::support: code = cmd_support(resolved, art, result, log); break;
        }
    } catch (CflViolation const& e) {
        error = e.what();
        code = exit_usage;
    } catch (DomainTooSmall const& e) {
        error = e.what();
        code = exit_usage;
    } catch (Error const& e) {
        error = e.what();
        code = exit_nonconvergence;
    } catch (UsageError const& e) {
        error = e.what();
        code = exit_usage;
    } catch (std::invalid_argument const& e) {
        error = e.what();
        code = exit_usage;
    }
    if (!error.empty())
        log << "error: " << error << '\n';

    json record{{"schema_version", schema_version},
                {"tool", "nematic"},
                {"command", to_string(cfg.command)},
                {"config", config_json(resolved)},
                {"config_text", config_text(resolved)},
                {"result", result},
                {"exit_code", code},
                {"error", error.empty() ? json(nullptr) : json(error)},
                {"timestamp", stamp}};
    record["artifacts"] = art.names();
    art.write_json("run.json", record);
    return {code, art.names()};
}

}  // namespace nematic::cli
