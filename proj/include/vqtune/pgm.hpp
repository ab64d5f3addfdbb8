#pragma once

#include "vqtune/plane.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace vqtune {

// Binary PGM (P5), maxval 255 only. Samples are copied verbatim.
Plane read_pgm(std::istream& in);
Plane read_pgm_file(const std::filesystem::path& path);

void write_pgm(const Plane& plane, std::ostream& out);
void write_pgm_file(const Plane& plane, const std::filesystem::path& path);
std::string write_pgm_string(const Plane& plane);

}  // namespace vqtune
