#include "nematic_cli/run.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>

namespace nematic::cli {

int main_entry(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Standing waves and time evolution of the nematic Schroedinger-director system",
                 "nematic"};
    std::string command;
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::string> timestamp;
    std::optional<double> dx, H, mu, lambda, b;
    std::optional<std::size_t> n_points;
    std::optional<int> picard_iters, jobs;

    app.add_option("command", command,
                   "solve | sweep-mu | sweep-h | evolve | stability | support | diagnose");
    app.add_option("--config", config_path, "key = value config file (TOML subset)");
    app.add_option("--out", out_dir, "output directory (default $NEMATIC_OUT_DIR or nematic-out)");
    app.add_option("--dx", dx, "grid spacing");
    app.add_option("--n-points", n_points, "grid node count");
    app.add_option("--H", H, "magnetic field intensity");
    app.add_option("--mu", mu, "Lagrange multiplier");
    app.add_option("--lambda", lambda, "quasilinear coefficient");
    app.add_option("--b", b, "director restoring coefficient");
    app.add_option("--picard-iters", picard_iters, "maximum Picard iterations");
    app.add_option("--jobs", jobs, "worker threads for cold-started sweeps");
    app.add_option("--timestamp", timestamp, "stamp for sweep file names and run records");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty())
            apply_config(cfg, parse_config_file(config_path));
        if (!command.empty())
            cfg.command = parse_command(command);
        else if (config_path.empty())
            throw ConfigError("command", 0, "no command given");
    } catch (ConfigError const& e) {
        err << "nematic: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }
    if (out_dir)
        cfg.output_dir = *out_dir;
    if (timestamp)
        cfg.timestamp = *timestamp;
    if (dx)
        cfg.grid.dx = *dx;
    if (n_points)
        cfg.grid.n_points = *n_points;
    if (H)
        cfg.params.H = *H;
    if (mu)
        cfg.params.mu = *mu;
    if (lambda)
        cfg.params.lambda = *lambda;
    if (b)
        cfg.params.b = *b;
    if (picard_iters)
        cfg.picard.max_iters = *picard_iters;
    if (jobs)
        cfg.sweep.jobs = *jobs;

    try {
        auto const outcome = run(cfg, out);
        return outcome.exit_code;
    } catch (std::exception const& e) {
        err << "nematic: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace nematic::cli
