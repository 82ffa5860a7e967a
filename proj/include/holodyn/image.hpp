#pragma once

#include <string>

#include "holodyn/julia.hpp"
#include "holodyn/newton.hpp"

namespace holodyn {

// Binary PPM (P6, 8-bit). Escape grids: bounded cells are black, escape
// index n takes entry n mod 256 of the palette's hue table. Basin grids: one
// hue per root, black for pixels that never settled.
std::string ppm_bytes(const RasterGrid& grid, const std::string& palette_id = "classic");
std::string ppm_bytes(const BasinGrid& grid);

// CSV with header "re,im,level", LF endings, %.17g numbers. Points at
// infinity cannot be written; they are skipped (the caller reports counts).
std::string csv_bytes(const PointCloud& cloud);

void write_file(const std::string& path, const std::string& bytes);

} // namespace holodyn
