#pragma once

#include <string>

#include "monospec/image.hpp"

namespace monospec {

// Binary netpbm I/O, maxval 255, bit-exact round trips.
GrayPlane read_pgm(const std::string& path);
void write_pgm(const GrayPlane& img, const std::string& path);

ColorImage read_ppm(const std::string& path);
void write_ppm(const ColorImage& img, const std::string& path);

}  // namespace monospec
