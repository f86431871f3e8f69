#include "nematic/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nematic {

Grid::Grid(std::size_t n_points, double dx, OriginMode mode)
    : n_points_{n_points}, dx_{dx}, mode_{mode}
{
    if (n_points_ < 3)
        throw std::invalid_argument("Grid: n_points must be >= 3");
    if (!(dx_ > 0) || !std::isfinite(dx_))
        throw std::invalid_argument("Grid: dx must be positive");
    if (mode_ == OriginMode::symmetric_about_0 && n_points_ % 2 == 0)
        throw std::invalid_argument("Grid: symmetric grids need an odd n_points");
}

Grid Grid::half_line(std::size_t n_points, double dx)
{
    return Grid{n_points, dx, OriginMode::half_line_from_0};
}

Grid Grid::symmetric(std::size_t n_points, double dx)
{
    return Grid{n_points, dx, OriginMode::symmetric_about_0};
}

Grid Grid::symmetric_span(double half_length, double dx)
{
    auto const half = static_cast<std::size_t>(std::llround(half_length / dx));
    return symmetric(2 * half + 1, dx);
}

double Grid::length() const noexcept
{
    return static_cast<double>(n_points_ - 1) * dx_;
}

double Grid::max_abs_x() const noexcept
{
    return is_half_line() ? length() : 0.5 * length();
}

double Grid::x(std::size_t i) const noexcept
{
    auto const shift = static_cast<double>(i) - static_cast<double>(origin_index());
    return shift * dx_;
}

std::size_t Grid::origin_index() const noexcept
{
    return is_half_line() ? 0 : (n_points_ - 1) / 2;
}

std::vector<double> Grid::nodes() const
{
    std::vector<double> xs(n_points_);
    for (std::size_t i = 0; i < n_points_; ++i)
        xs[i] = x(i);
    return xs;
}

Grid Grid::refined(std::size_t factor) const
{
    if (factor == 0)
        throw std::invalid_argument("Grid::refined: factor must be positive");
    return Grid{(n_points_ - 1) * factor + 1, dx_ / static_cast<double>(factor), mode_};
}

RealProfile::RealProfile(Grid g) : grid{g}, values(g.n_points(), 0.0) {}

RealProfile::RealProfile(Grid g, std::vector<double> v) : grid{g}, values{std::move(v)}
{
    if (values.size() != grid.n_points())
        throw std::invalid_argument("RealProfile: size mismatch with grid");
}

RealProfile RealProfile::sample(Grid const& g, std::function<double(double)> const& f)
{
    RealProfile p{g};
    for (std::size_t i = 0; i < g.n_points(); ++i)
        p.values[i] = f(g.x(i));
    return p;
}

double RealProfile::sup_norm() const
{
    double m = 0;
    for (double v : values)
        m = std::max(m, std::abs(v));
    return m;
}

bool RealProfile::all_finite() const
{
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

ComplexProfile::ComplexProfile(Grid g) : grid{g}, values(g.n_points(), 0.0) {}

ComplexProfile::ComplexProfile(Grid g, std::vector<std::complex<double>> v)
    : grid{g}, values{std::move(v)}
{
    if (values.size() != grid.n_points())
        throw std::invalid_argument("ComplexProfile: size mismatch with grid");
}

ComplexProfile ComplexProfile::from_real(RealProfile const& re)
{
    ComplexProfile c{re.grid};
    for (std::size_t i = 0; i < re.size(); ++i)
        c.values[i] = re.values[i];
    return c;
}

RealProfile ComplexProfile::modulus() const
{
    RealProfile m{grid};
    for (std::size_t i = 0; i < size(); ++i)
        m.values[i] = std::abs(values[i]);
    return m;
}

RealProfile ComplexProfile::real_part() const
{
    RealProfile m{grid};
    for (std::size_t i = 0; i < size(); ++i)
        m.values[i] = values[i].real();
    return m;
}

RealProfile ComplexProfile::imag_part() const
{
    RealProfile m{grid};
    for (std::size_t i = 0; i < size(); ++i)
        m.values[i] = values[i].imag();
    return m;
}

bool ComplexProfile::all_finite() const
{
    return std::all_of(values.begin(), values.end(), [](std::complex<double> const& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

double Params::lambda0() const noexcept { return std::abs(H); }

void Params::validate() const
{
    if (!(lambda >= 0))
        throw std::invalid_argument("Params: lambda must be >= 0");
    if (!(b > 0))
        throw std::invalid_argument("Params: b must be > 0");
    if (!(alpha > 0))
        throw std::invalid_argument("Params: alpha must be > 0");
    for (double v : {H, mu, lambda, b, a, alpha})
        if (!std::isfinite(v))
            throw std::invalid_argument("Params: non-finite value");
}

double integrate_trapezoid(std::span<double const> values, double dx)
{
    if (values.size() < 2)
        return 0.0;
    double s = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        s += values[i];
    return s * dx;
}

double integrate_trapezoid(RealProfile const& f)
{
    return integrate_trapezoid(f.values, f.grid.dx());
}

namespace {

template<class T>
std::vector<T> differentiate(std::vector<T> const& f, double dx)
{
    auto const n = f.size();
    std::vector<T> d(n);
    double const inv2 = 0.5 / dx;
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = (f[i + 1] - f[i - 1]) * inv2;
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
    return d;
}

}  // namespace

RealProfile derivative(RealProfile const& f)
{
    return RealProfile{f.grid, differentiate(f.values, f.grid.dx())};
}

ComplexProfile derivative(ComplexProfile const& f)
{
    return ComplexProfile{f.grid, differentiate(f.values, f.grid.dx())};
}

NormSet norms(RealProfile const& f, double H)
{
    auto const fx = derivative(f);
    auto const n = f.size();
    std::vector<double> sq(n), q4(n), xa(n);
    for (std::size_t i = 0; i < n; ++i) {
        double const x = f.grid.x(i);
        double const s = f.values[i] * f.values[i];
        sq[i] = s;
        q4[i] = s * s;
        xa[i] = fx.values[i] * fx.values[i] + H * H * x * x * s;
    }
    double const dx = f.grid.dx();
    return {integrate_trapezoid(sq, dx), integrate_trapezoid(q4, dx), integrate_trapezoid(xa, dx)};
}

NormSet norms(ComplexProfile const& f, double H)
{
    auto const fx = derivative(f);
    auto const n = f.size();
    std::vector<double> sq(n), q4(n), xa(n);
    for (std::size_t i = 0; i < n; ++i) {
        double const x = f.grid.x(i);
        double const s = std::norm(f.values[i]);
        sq[i] = s;
        q4[i] = s * s;
        xa[i] = std::norm(fx.values[i]) + H * H * x * x * s;
    }
    double const dx = f.grid.dx();
    return {integrate_trapezoid(sq, dx), integrate_trapezoid(q4, dx), integrate_trapezoid(xa, dx)};
}

double full_line_weight(Grid const& g) noexcept { return g.is_half_line() ? 2.0 : 1.0; }

RealProfile mirror_to_symmetric(RealProfile const& half)
{
    if (!half.grid.is_half_line())
        throw std::invalid_argument("mirror_to_symmetric: expected a half-line profile");
    auto const m = half.size();
    auto sym = RealProfile{Grid::symmetric(2 * m - 1, half.grid.dx())};
    for (std::size_t i = 0; i < m; ++i) {
        sym.values[m - 1 + i] = half.values[i];
        sym.values[m - 1 - i] = half.values[i];
    }
    return sym;
}

RealProfile restrict_to_half_line(RealProfile const& sym)
{
    if (sym.grid.is_half_line())
        return sym;
    auto const c = sym.grid.origin_index();
    auto const m = sym.size() - c;
    RealProfile half{Grid::half_line(m, sym.grid.dx())};
    std::copy(sym.values.begin() + static_cast<std::ptrdiff_t>(c), sym.values.end(),
              half.values.begin());
    return half;
}

double interpolate(RealProfile const& f, double x)
{
    double const x0 = f.grid.x(0);
    double const s = (x - x0) / f.grid.dx();
    if (s < 0 || s > static_cast<double>(f.size() - 1))
        return 0.0;
    auto i = static_cast<std::size_t>(s);
    if (i >= f.size() - 1)
        return f.values.back();
    double const t = s - static_cast<double>(i);
    return (1 - t) * f.values[i] + t * f.values[i + 1];
}

RealProfile resample(RealProfile const& f, Grid const& target)
{
    RealProfile out{target};
    for (std::size_t i = 0; i < target.n_points(); ++i) {
        double const x = target.x(i);
        // Even profiles on half-line grids are read through |x|.
        out.values[i] = interpolate(f, f.grid.is_half_line() ? std::abs(x) : x);
    }
    return out;
}

namespace {
void require_same_grid(Grid const& a, Grid const& b)
{
    if (!(a == b))
        throw std::invalid_argument("profile arithmetic: grids differ");
}
}  // namespace

RealProfile operator+(RealProfile a, RealProfile const& b)
{
    require_same_grid(a.grid, b.grid);
    for (std::size_t i = 0; i < a.size(); ++i)
        a.values[i] += b.values[i];
    return a;
}

RealProfile operator-(RealProfile a, RealProfile const& b)
{
    require_same_grid(a.grid, b.grid);
    for (std::size_t i = 0; i < a.size(); ++i)
        a.values[i] -= b.values[i];
    return a;
}

RealProfile operator*(double c, RealProfile f)
{
    for (double& v : f.values)
        v *= c;
    return f;
}

}  // namespace nematic
