#pragma once

#include <filesystem>
#include <iosfwd>

#include "vortexmix/field.hpp"

namespace vortexmix {

// Text dump: first line "n pitch", then n*n lines "re im" in row-major order.
// Numbers use the shortest round-trip decimal form, independent of locale, so
// a dump/load cycle reproduces every sample bit for bit. The grid centre is not
// stored; loaded fields are centred on the origin.

void write_field(std::ostream& os, const ComplexField& f);
void write_field(const std::filesystem::path& path, const ComplexField& f);

ComplexField read_field(std::istream& is);
ComplexField read_field(const std::filesystem::path& path);

}  // namespace vortexmix
