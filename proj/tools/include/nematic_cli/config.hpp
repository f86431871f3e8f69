#pragma once

#include <nematic/grid.hpp>
#include <nematic/shooting.hpp>
#include <nematic/standing_wave.hpp>

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nematic::cli {

/// Malformed config input. `key` and `line` locate the offending entry
/// (line is 0 when the problem is not tied to a file line).
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string key, int line, std::string const& what);

    std::string const& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

  private:
    std::string key_;
    int line_;
};

using ConfigValue = std::variant<bool, double, std::string, std::vector<double>>;

struct ConfigEntry
{
    ConfigValue value;
    int line = 0;
};

/// Flat TOML subset: `[section]` headers, `key = value` lines, `#` comments.
/// Values are booleans, numbers, double-quoted strings or one-line arrays
/// of numbers. Keys are stored as "section.key" (top-level keys bare).
using ConfigDocument = std::map<std::string, ConfigEntry>;

ConfigDocument parse_config(std::istream& is);
ConfigDocument parse_config_file(std::filesystem::path const& path);

enum class Command
{
    solve,
    sweep_mu,
    sweep_h,
    evolve,
    stability,
    support,
    diagnose,
};

char const* to_string(Command c) noexcept;
/// Throws ConfigError for unknown names.
Command parse_command(std::string const& name);

struct GridSpec
{
    double dx = 0.002;
    std::size_t n_points = 3001;
    /// Write profiles mirrored onto the symmetric grid.
    bool symmetric = false;
};

struct SweepSpec
{
    double mu_first = -1.9;
    double mu_last = -1.9999153;
    std::size_t count = 60;
    std::vector<double> h_values{0.5, 1.0, 1.5, 2.0};
    bool warm_start = true;
    int jobs = 1;
};

struct EvolutionSpec
{
    double T = 5.0;
    double dt = 5e-4;
    std::size_t stride = 100;
    /// Write a u/rho snapshot every `snapshot_every` logged samples (0: never).
    std::size_t snapshot_every = 0;
    /// Stability runs.
    double delta = 1e-2;
    double bump_width = 0.5;
    bool drop_interaction = false;
};

struct SupportRunSpec
{
    double theta = 1.0;
    double delta = 1.0;
    std::vector<double> deltas{0.5, 1.0, 2.0};
    std::vector<double> times{0.05, 0.1, 0.15};
    double u_amplitude = 2.0;
    double rho_amplitude = 1.0;
    double half_length = 10.0;
    double dx = 0.005;
    double dt = 0.0025;
};

struct DiagnoseSpec
{
    std::string u_path;
    std::string rho_path;
};

/// Fully resolved run description. Defaults reproduce the reference
/// steady state (H = 1, mu = -0.8, lambda = 0.1, b = 1, dx = 0.002,
/// n = 3001, 15 Picard iterations).
struct RunConfig
{
    Command command = Command::solve;
    Params params{};
    GridSpec grid{};
    ShootConfig shoot{};
    PicardConfig picard = [] {
        PicardConfig p;
        p.keep_iterates = true;
        return p;
    }();
    SweepSpec sweep{};
    EvolutionSpec evolution{};
    SupportRunSpec support{};
    DiagnoseSpec diagnose{};
    std::string output_dir;
    /// Stamp used in sweep file names and the run record's timestamp field;
    /// empty means the current UTC time.
    std::string timestamp;

    Grid standing_grid() const;
};

/// Overlays every entry of doc onto cfg. Unknown keys and ill-typed values
/// raise ConfigError naming the key and line.
void apply_config(RunConfig& cfg, ConfigDocument const& doc);

/// True for keys holding integer settings (counts, strides, iteration caps).
bool is_integral_key(std::string const& key);

/// Writes cfg in the same format parse_config reads, so the echo re-runs.
void write_config(std::ostream& os, RunConfig const& cfg);

}  // namespace nematic::cli
