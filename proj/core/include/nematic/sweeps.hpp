#pragma once

#include "nematic/grid.hpp"
#include "nematic/standing_wave.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nematic {

/// One parameter point of a continuation sweep. Field order is the CSV
/// column order.
struct SweepRow
{
    std::string varied_param_name;
    double varied_param_value = 0;
    double mass = 0;
    double u0 = 0;
    double rho0 = 0;
    double energy = 0;
    double pohozaev_residual = 0;
    double multiplier_residual = 0;
    double gaussian_shape_error = 0;
    int picard_iters_used = 0;
    bool converged = false;

    friend bool operator==(SweepRow const&, SweepRow const&) = default;
};

struct SweepOptions
{
    Grid grid = default_standing_grid();
    PicardConfig picard{};
    ShootConfig shoot{};
    /// Bracket each row's first shot within +-20% of the previous row's.
    bool warm_start = true;
    /// > 1 runs cold-started rows on that many threads.
    int jobs = 1;
    bool keep_waves = false;
};

struct SweepResult
{
    std::vector<SweepRow> rows;
    /// Converged standing waves, index-aligned with rows (keep_waves only;
    /// rows that failed before a first iterate hold an empty wave).
    std::vector<StandingWave> waves;
    /// First varied value whose row did not converge.
    std::optional<double> first_failure;
};

/// mu values with lambda0 + mu log-spaced between the two endpoints.
std::vector<double> log_spaced_mu(double lambda0, double mu_first, double mu_last, std::size_t count);

/// Runs picard_iterate for each mu. Rows are processed and emitted ordered
/// toward the bifurcation point -lambda0 (decreasing lambda0 + mu).
SweepResult mu_sweep(Params const& base, std::vector<double> mu_values,
                     SweepOptions const& opts = {});

/// Runs picard_iterate for each H (ascending) and records the first H whose
/// iteration fails.
SweepResult h_sweep(Params const& base, std::vector<double> H_values, SweepOptions const& opts = {});

enum class ExportFormat
{
    csv,
    json,
};

void export_rows(std::vector<SweepRow> const& rows, ExportFormat format, std::ostream& os);
void export_rows(std::vector<SweepRow> const& rows, ExportFormat format,
                 std::filesystem::path const& path);

std::vector<SweepRow> import_rows(ExportFormat format, std::istream& is);
std::vector<SweepRow> import_rows(ExportFormat format, std::filesystem::path const& path);

}  // namespace nematic
