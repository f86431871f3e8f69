#pragma once

#include "nematic/grid.hpp"

#include <filesystem>
#include <iosfwd>

namespace nematic {

/// CSV with header `x,value`, one node per line, 17 significant digits.
void write_csv(std::ostream& os, RealProfile const& f);
/// CSV with header `x,re,im`.
void write_csv(std::ostream& os, ComplexProfile const& f);

void write_csv(std::filesystem::path const& path, RealProfile const& f);
void write_csv(std::filesystem::path const& path, ComplexProfile const& f);

/// Reads a profile written by write_csv. The grid is reconstructed from the
/// x column (uniform spacing is checked).
RealProfile read_real_csv(std::istream& is);
ComplexProfile read_complex_csv(std::istream& is);
RealProfile read_real_csv(std::filesystem::path const& path);
ComplexProfile read_complex_csv(std::filesystem::path const& path);

}  // namespace nematic
