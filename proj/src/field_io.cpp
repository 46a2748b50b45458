#include "vortexmix/field_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "vortexmix/error.hpp"

namespace vortexmix {
namespace {

void put_double(std::ostream& os, double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  os.write(buf.data(), ptr - buf.data());
}

double parse_double(std::string_view token) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(ErrorKind::Io, "bad number in field dump: '" + std::string(token) + "'");
  }
  return v;
}

/// Splits a line into exactly two whitespace-separated tokens.
std::pair<std::string_view, std::string_view> two_tokens(std::string_view line) {
  auto skip = [&](std::size_t pos) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    return pos;
  };
  auto word_end = [&](std::size_t pos) {
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    return pos;
  };
  const std::size_t a0 = skip(0), a1 = word_end(a0);
  const std::size_t b0 = skip(a1), b1 = word_end(b0);
  if (a0 == a1 || b0 == b1 || skip(b1) != line.size()) {
    throw Error(ErrorKind::Io, "expected two numbers per line in field dump");
  }
  return {line.substr(a0, a1 - a0), line.substr(b0, b1 - b0)};
}

}  // namespace

void write_field(std::ostream& os, const ComplexField& f) {
  os << f.n() << ' ';
  put_double(os, f.grid().pitch);
  os << '\n';
  for (const auto& v : f.values()) {
    put_double(os, v.real());
    os << ' ';
    put_double(os, v.imag());
    os << '\n';
  }
}

void write_field(const std::filesystem::path& path, const ComplexField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  write_field(os, f);
  if (!os) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

ComplexField read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::Io, "empty field dump");
  auto [n_tok, pitch_tok] = two_tokens(line);
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(n_tok.data(), n_tok.data() + n_tok.size(), n);
  if (ec != std::errc{} || ptr != n_tok.data() + n_tok.size()) {
    throw Error(ErrorKind::Io, "bad grid size in field dump header");
  }
  GridSpec grid{n, parse_double(pitch_tok), 0.0, 0.0};
  grid.validate();

  std::vector<Complex> values;
  values.reserve(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    if (!std::getline(is, line)) throw Error(ErrorKind::Io, "field dump truncated after " + std::to_string(k) + " samples");
    auto [re, im] = two_tokens(line);
    values.emplace_back(parse_double(re), parse_double(im));
  }
  ComplexField f(grid, std::move(values));
  if (!f.all_finite()) throw Error(ErrorKind::Io, "field dump contains non-finite values");
  return f;
}

ComplexField read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_field(is);
}

}  // namespace vortexmix
