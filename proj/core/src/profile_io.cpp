#include "nematic/profile_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nematic {

namespace {

std::string fmt17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(std::filesystem::path const& path)
{
    std::ofstream os{path};
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    return os;
}

std::ifstream open_in(std::filesystem::path const& path)
{
    std::ifstream is{path};
    if (!is)
        throw std::runtime_error("cannot open " + path.string() + " for reading");
    return is;
}

std::vector<std::vector<double>> read_rows(std::istream& is, std::string const& header,
                                           std::size_t cols)
{
    std::string line;
    if (!std::getline(is, line) || line != header)
        throw std::runtime_error("profile CSV: expected header '" + header + "'");
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::vector<double> row;
        std::stringstream ss{line};
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(std::stod(cell));
        if (row.size() != cols)
            throw std::runtime_error("profile CSV: bad column count in '" + line + "'");
        rows.push_back(std::move(row));
    }
    return rows;
}

Grid grid_from_x(std::vector<std::vector<double>> const& rows)
{
    if (rows.size() < 3)
        throw std::runtime_error("profile CSV: need at least 3 nodes");
    double const dx = (rows.back()[0] - rows.front()[0]) / static_cast<double>(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (std::abs(rows[i][0] - rows[i - 1][0] - dx) > 1e-9 * std::max(1.0, dx))
            throw std::runtime_error("profile CSV: non-uniform x column");
    if (std::abs(rows.front()[0]) <= 1e-12 * dx)
        return Grid::half_line(rows.size(), dx);
    return Grid::symmetric(rows.size(), dx);
}

}  // namespace

void write_csv(std::ostream& os, RealProfile const& f)
{
    os << "x,value\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        os << fmt17(f.grid.x(i)) << ',' << fmt17(f.values[i]) << '\n';
}

void write_csv(std::ostream& os, ComplexProfile const& f)
{
    os << "x,re,im\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        os << fmt17(f.grid.x(i)) << ',' << fmt17(f.values[i].real()) << ','
           << fmt17(f.values[i].imag()) << '\n';
}

void write_csv(std::filesystem::path const& path, RealProfile const& f)
{
    auto os = open_out(path);
    write_csv(os, f);
}

void write_csv(std::filesystem::path const& path, ComplexProfile const& f)
{
    auto os = open_out(path);
    write_csv(os, f);
}

RealProfile read_real_csv(std::istream& is)
{
    auto const rows = read_rows(is, "x,value", 2);
    RealProfile f{grid_from_x(rows)};
    for (std::size_t i = 0; i < rows.size(); ++i)
        f.values[i] = rows[i][1];
    return f;
}

ComplexProfile read_complex_csv(std::istream& is)
{
    auto const rows = read_rows(is, "x,re,im", 3);
    ComplexProfile f{grid_from_x(rows)};
    for (std::size_t i = 0; i < rows.size(); ++i)
        f.values[i] = {rows[i][1], rows[i][2]};
    return f;
}

RealProfile read_real_csv(std::filesystem::path const& path)
{
    auto is = open_in(path);
    return read_real_csv(is);
}

ComplexProfile read_complex_csv(std::filesystem::path const& path)
{
    auto is = open_in(path);
    return read_complex_csv(is);
}

}  // namespace nematic
