#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "vortexmix/field.hpp"

namespace vortexmix {

/// Real non-negative image on the same grid conventions as ComplexField.
struct IntensityImage {
  GridSpec grid;
  std::vector<double> values;

  IntensityImage() = default;
  explicit IntensityImage(const GridSpec& g) : grid(g), values(g.n * g.n, 0.0) {}

  [[nodiscard]] double at(std::size_t row, std::size_t col) const { return values[row * grid.n + col]; }
  double& at(std::size_t row, std::size_t col) { return values[row * grid.n + col]; }
  [[nodiscard]] double peak() const;

  friend bool operator==(const IntensityImage&, const IntensityImage&) = default;
};

IntensityImage intensity(const ComplexField& f);

/// Bilinear sample at physical (x, y); zero outside the sampled area.
double sample_bilinear(const IntensityImage& img, double x, double y);
Complex sample_bilinear(const ComplexField& f, double x, double y);

/// Active counter-clockwise rotation about the physical origin (bilinear).
IntensityImage rotate(const IntensityImage& img, double angle_rad);

/// Mirror about the horizontal axis (row flip).
IntensityImage mirror_rows(const IntensityImage& img);

// 8-bit binary PGM (P5), peak-normalised: v = round(255 * I / peak).
void write_pgm(std::ostream& os, const IntensityImage& img);
void write_pgm(const std::filesystem::path& path, const IntensityImage& img);

/// Reads a square P5 image. Grey levels are returned as-is on a grid with
/// pitch 1 (pixel units).
IntensityImage read_pgm(std::istream& is);
IntensityImage read_pgm(const std::filesystem::path& path);

}  // namespace vortexmix
