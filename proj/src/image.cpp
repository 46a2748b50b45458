#include "vortexmix/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "vortexmix/error.hpp"

namespace vortexmix {
namespace {

// Fractional (row, col) position of physical (x, y).
std::pair<double, double> to_index(const GridSpec& g, double x, double y) {
  const double half = (static_cast<double>(g.n) - 1.0) / 2.0;
  return {half - (y - g.center_y) / g.pitch, half + (x - g.center_x) / g.pitch};
}

template <typename T, typename Get>
T bilinear(const GridSpec& g, double x, double y, Get&& get) {
  auto [fr, fc] = to_index(g, x, y);
  const double last = static_cast<double>(g.n) - 1.0;
  if (!(fr >= 0.0 && fc >= 0.0 && fr <= last && fc <= last)) return T{};
  const auto r0 = std::min(static_cast<std::size_t>(fr), g.n - 2);
  const auto c0 = std::min(static_cast<std::size_t>(fc), g.n - 2);
  const double tr = fr - static_cast<double>(r0);
  const double tc = fc - static_cast<double>(c0);
  return (1.0 - tr) * ((1.0 - tc) * get(r0, c0) + tc * get(r0, c0 + 1)) +
         tr * ((1.0 - tc) * get(r0 + 1, c0) + tc * get(r0 + 1, c0 + 1));
}

}  // namespace

double IntensityImage::peak() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

IntensityImage intensity(const ComplexField& f) {
  IntensityImage img(f.grid());
  auto src = f.values();
  for (std::size_t k = 0; k < src.size(); ++k) img.values[k] = std::norm(src[k]);
  return img;
}

double sample_bilinear(const IntensityImage& img, double x, double y) {
  return bilinear<double>(img.grid, x, y, [&](std::size_t r, std::size_t c) { return img.at(r, c); });
}

Complex sample_bilinear(const ComplexField& f, double x, double y) {
  return bilinear<Complex>(f.grid(), x, y, [&](std::size_t r, std::size_t c) { return f.at(r, c); });
}

IntensityImage rotate(const IntensityImage& img, double angle_rad) {
  const double c = std::cos(angle_rad);
  const double s = std::sin(angle_rad);
  IntensityImage out(img.grid);
  for (std::size_t i = 0; i < img.grid.n; ++i) {
    const double y = img.grid.y(i);
    for (std::size_t j = 0; j < img.grid.n; ++j) {
      const double x = img.grid.x(j);
      // Pull from the inverse-rotated position.
      out.at(i, j) = sample_bilinear(img, c * x + s * y, -s * x + c * y);
    }
  }
  return out;
}

IntensityImage mirror_rows(const IntensityImage& img) {
  IntensityImage out(img.grid);
  const std::size_t n = img.grid.n;
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(img.values.begin() + static_cast<long>((n - 1 - i) * n), n,
                out.values.begin() + static_cast<long>(i * n));
  }
  return out;
}

void write_pgm(std::ostream& os, const IntensityImage& img) {
  const std::size_t n = img.grid.n;
  os << "P5\n" << n << ' ' << n << "\n255\n";
  const double peak = img.peak();
  std::string row(n, '\0');
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = peak > 0.0 ? std::clamp(img.at(i, j) / peak, 0.0, 1.0) : 0.0;
      row[j] = static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v)));
    }
    os.write(row.data(), static_cast<std::streamsize>(n));
  }
}

void write_pgm(const std::filesystem::path& path, const IntensityImage& img) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  write_pgm(os, img);
  if (!os) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

IntensityImage read_pgm(std::istream& is) {
  auto next_token = [&]() {
    std::string tok;
    char ch = 0;
    while (is.get(ch)) {
      if (ch == '#') {
        std::string ignored;
        std::getline(is, ignored);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) {
        if (!tok.empty()) break;
        continue;
      }
      tok.push_back(ch);
    }
    return tok;
  };

  if (next_token() != "P5") throw Error(ErrorKind::Io, "not a binary PGM (P5)");
  std::size_t width = 0, height = 0;
  int maxval = 0;
  try {
    width = std::stoul(next_token());
    height = std::stoul(next_token());
    maxval = std::stoi(next_token());
  } catch (const std::exception&) {
    throw Error(ErrorKind::Io, "malformed PGM header");
  }
  if (width != height) throw Error(ErrorKind::Io, "only square PGM images are supported");
  if (maxval <= 0 || maxval > 255) throw Error(ErrorKind::Io, "only 8-bit PGM images are supported");

  GridSpec grid{width, 1.0, 0.0, 0.0};
  grid.validate();
  IntensityImage img(grid);
  std::string data(width * height, '\0');
  if (!is.read(data.data(), static_cast<std::streamsize>(data.size()))) {
    throw Error(ErrorKind::Io, "PGM pixel data truncated");
  }
  for (std::size_t k = 0; k < data.size(); ++k) img.values[k] = static_cast<unsigned char>(data[k]);
  return img;
}

IntensityImage read_pgm(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_pgm(is);
}

}  // namespace vortexmix
