#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nematic {

enum class OriginMode
{
    half_line_from_0,
    symmetric_about_0,
};

/// Uniform 1-D mesh. Half-line grids start at x = 0; symmetric grids have
/// an odd node count with x = 0 at the centre node.
class Grid
{
  public:
    Grid(std::size_t n_points, double dx, OriginMode mode);

    static Grid half_line(std::size_t n_points, double dx);
    static Grid symmetric(std::size_t n_points, double dx);
    /// Symmetric grid covering [-half_length, half_length] at spacing dx.
    static Grid symmetric_span(double half_length, double dx);

    std::size_t n_points() const noexcept { return n_points_; }
    double dx() const noexcept { return dx_; }
    OriginMode mode() const noexcept { return mode_; }
    bool is_half_line() const noexcept
    {
        return mode_ == OriginMode::half_line_from_0;
    }

    /// (n_points - 1) * dx
    double length() const noexcept;
    /// Largest |x| on the grid.
    double max_abs_x() const noexcept;
    double x(std::size_t i) const noexcept;
    /// Index of the x = 0 node.
    std::size_t origin_index() const noexcept;
    std::vector<double> nodes() const;

    /// Grid with the same origin mode and physical extent at spacing dx / factor.
    Grid refined(std::size_t factor) const;

    friend bool operator==(Grid const&, Grid const&) = default;

  private:
    std::size_t n_points_;
    double dx_;
    OriginMode mode_;
};

struct RealProfile
{
    Grid grid;
    std::vector<double> values;

    explicit RealProfile(Grid g);
    RealProfile(Grid g, std::vector<double> v);

    static RealProfile sample(Grid const& g, std::function<double(double)> const& f);

    std::size_t size() const noexcept { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    double sup_norm() const;
    bool all_finite() const;
};

struct ComplexProfile
{
    Grid grid;
    std::vector<std::complex<double>> values;

    explicit ComplexProfile(Grid g);
    ComplexProfile(Grid g, std::vector<std::complex<double>> v);

    static ComplexProfile from_real(RealProfile const& re);

    std::size_t size() const noexcept { return values.size(); }
    std::complex<double>& operator[](std::size_t i) { return values[i]; }
    std::complex<double> const& operator[](std::size_t i) const { return values[i]; }
    RealProfile modulus() const;
    RealProfile real_part() const;
    RealProfile imag_part() const;
    bool all_finite() const;
};

/// Physical constants of the coupled system. Standing-wave computations use
/// a = -1 (attractive) and alpha = 1.
struct Params
{
    double H = 1.0;
    double mu = -0.8;
    double lambda = 0.1;
    double b = 1.0;
    double a = -1.0;
    double alpha = 1.0;

    /// First eigenvalue of -d_xx + H^2 x^2.
    double lambda0() const noexcept;
    /// Throws std::invalid_argument if lambda < 0 or b <= 0 or alpha <= 0.
    void validate() const;

    friend bool operator==(Params const&, Params const&) = default;
};

struct NormSet
{
    double l2_sq = 0;
    double l4_4 = 0;
    double xa_sq = 0;
};

double integrate_trapezoid(RealProfile const& f);
double integrate_trapezoid(std::span<double const> values, double dx);

/// Central differences in the interior, second-order one-sided at the ends.
RealProfile derivative(RealProfile const& f);
ComplexProfile derivative(ComplexProfile const& f);

/// l2_sq = int |f|^2, l4_4 = int |f|^4, xa_sq = int |f_x|^2 + H^2 int x^2 |f|^2,
/// all over the grid as given (no doubling on half-line grids).
NormSet norms(RealProfile const& f, double H);
NormSet norms(ComplexProfile const& f, double H);

/// 2 on half-line grids, 1 on symmetric grids.
double full_line_weight(Grid const& g) noexcept;

/// Even extension of a half-line profile onto the symmetric grid with the
/// same spacing.
RealProfile mirror_to_symmetric(RealProfile const& half);
/// Restriction of a symmetric profile to x >= 0.
RealProfile restrict_to_half_line(RealProfile const& sym);

/// Linear interpolation of f at x; zero outside the grid.
double interpolate(RealProfile const& f, double x);
/// Resample f onto another grid by linear interpolation.
RealProfile resample(RealProfile const& f, Grid const& target);

RealProfile operator+(RealProfile a, RealProfile const& b);
RealProfile operator-(RealProfile a, RealProfile const& b);
RealProfile operator*(double c, RealProfile f);

}  // namespace nematic
