#include "vqtune/pgm.hpp"

#include "vqtune/errors.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace vqtune {

namespace {

// Reads the next whitespace-delimited token, skipping '#' comment lines.
std::string next_token(std::istream& in, std::size_t& offset) {
  std::string tok;
  char c;
  while (in.get(c)) {
    ++offset;
    if (c == '#') {
      while (in.get(c)) {
        ++offset;
        if (c == '\n') break;
      }
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) {
        in.unget();
        --offset;
        return tok;
      }
      continue;
    }
    tok.push_back(c);
  }
  if (tok.empty()) throw FormatError("unexpected end of PGM header", offset);
  return tok;
}

long token_to_long(const std::string& tok, const char* what, std::size_t offset) {
  for (char c : tok) {
    if (c < '0' || c > '9') {
      throw FormatError(std::string("invalid ") + what + " '" + tok + "'", offset);
    }
  }
  if (tok.empty() || tok.size() > 9) {
    throw FormatError(std::string(what) + " out of range", offset);
  }
  return std::stol(tok);
}

}  // namespace

Plane read_pgm(std::istream& in) {
  std::size_t offset = 0;
  const std::string magic = next_token(in, offset);
  if (magic != "P5") throw FormatError("not a binary PGM (P5) stream", offset);
  const long width = token_to_long(next_token(in, offset), "width", offset);
  const long height = token_to_long(next_token(in, offset), "height", offset);
  const long maxval = token_to_long(next_token(in, offset), "maxval", offset);
  if (width < 1 || height < 1) throw FormatError("PGM dimensions must be >= 1", offset);
  if (maxval != 255) {
    throw FormatError("unsupported maxval " + std::to_string(maxval), offset);
  }
  char sep;
  if (!in.get(sep) || !std::isspace(static_cast<unsigned char>(sep))) {
    throw FormatError("missing whitespace after maxval", offset);
  }
  ++offset;
  Plane plane(height, width);
  in.read(reinterpret_cast<char*>(plane.data()), static_cast<std::streamsize>(plane.size()));
  const std::streamsize got = in.gcount();
  offset += static_cast<std::size_t>(got);
  if (got != static_cast<std::streamsize>(plane.size())) {
    throw FormatError("truncated PGM payload", offset);
  }
  return plane;
}

Plane read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  return read_pgm(in);
}

void write_pgm(const Plane& plane, std::ostream& out) {
  out << "P5\n" << plane.cols() << " " << plane.rows() << "\n255\n";
  out.write(reinterpret_cast<const char*>(plane.data()),
            static_cast<std::streamsize>(plane.size()));
  if (!out) throw std::runtime_error("PGM write failed");
}

void write_pgm_file(const Plane& plane, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_pgm(plane, out);
}

std::string write_pgm_string(const Plane& plane) {
  std::ostringstream out;
  write_pgm(plane, out);
  return out.str();
}

}  // namespace vqtune
