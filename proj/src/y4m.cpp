#include "vqtune/y4m.hpp"

#include "vqtune/errors.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace vqtune {

namespace {

constexpr std::size_t kMaxHeaderLine = 4096;

// Wraps an istream and tracks the number of bytes consumed so parse errors
// can report an offset.
struct Reader {
  std::istream& in;
  std::size_t offset = 0;

  // Reads until '\n' (consumed, not returned). Fails on EOF before '\n'.
  std::string read_line(const char* what) {
    std::string line;
    char c;
    while (in.get(c)) {
      ++offset;
      if (c == '\n') return line;
      line.push_back(c);
      if (line.size() > kMaxHeaderLine) {
        throw FormatError(std::string(what) + ": line exceeds " +
                              std::to_string(kMaxHeaderLine) + " bytes",
                          offset);
      }
    }
    throw FormatError(std::string(what) + ": unexpected end of stream", offset);
  }

  void read_plane(Plane& plane, const char* what) {
    auto* dst = reinterpret_cast<char*>(plane.data());
    const std::streamsize want = static_cast<std::streamsize>(plane.size());
    in.read(dst, want);
    const std::streamsize got = in.gcount();
    offset += static_cast<std::size_t>(got);
    if (got != want) {
      throw FormatError(std::string("truncated ") + what + " plane payload", offset);
    }
  }
};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

long parse_positive(const std::string& text, const char* what, std::size_t offset) {
  if (text.empty()) throw FormatError(std::string("empty ") + what + " field", offset);
  long value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw FormatError(std::string("invalid ") + what + " field '" + text + "'", offset);
    }
    value = value * 10 + (c - '0');
    if (value > 1'000'000'000L) {
      throw FormatError(std::string(what) + " field out of range", offset);
    }
  }
  return value;
}

}  // namespace

VideoSequence read_y4m(std::istream& in) {
  in.exceptions(std::ios::goodbit);
  Reader r{in};
  const std::string header = r.read_line("Y4M header");
  const std::vector<std::string> fields = split_fields(header);
  if (fields.empty() || fields[0] != "YUV4MPEG2") {
    throw FormatError("missing YUV4MPEG2 magic", 0);
  }

  long width = -1, height = -1, fps_num = 25, fps_den = 1;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const std::string& f = fields[i];
    const std::string body = f.substr(1);
    switch (f[0]) {
      case 'W':
        width = parse_positive(body, "width", r.offset);
        break;
      case 'H':
        height = parse_positive(body, "height", r.offset);
        break;
      case 'F': {
        const std::size_t colon = body.find(':');
        if (colon == std::string::npos) {
          throw FormatError("frame-rate field '" + f + "' is not N:D", r.offset);
        }
        fps_num = parse_positive(body.substr(0, colon), "fps numerator", r.offset);
        fps_den = parse_positive(body.substr(colon + 1), "fps denominator", r.offset);
        break;
      }
      case 'C':
        if (body != "420" && body != "420jpeg" && body != "420mpeg2") {
          throw FormatError("unsupported chroma/bit-depth tag 'C" + body + "'", r.offset);
        }
        break;
      case 'I':
      case 'A':
      case 'X':
        break;  // interlacing, aspect and extensions are ignored
      default:
        throw FormatError("unknown header field '" + f + "'", r.offset);
    }
  }
  if (width <= 0 || height <= 0) throw FormatError("header lacks W or H field", r.offset);
  if (width % 2 != 0 || height % 2 != 0 || width < 2 || height < 2) {
    throw FormatError("dimensions must be even and >= 2 for 4:2:0", r.offset);
  }
  if (fps_num <= 0 || fps_den <= 0) throw FormatError("frame rate must be positive", r.offset);

  std::vector<VideoFrame> frames;
  for (;;) {
    if (in.peek() == std::istream::traits_type::eof()) break;
    const std::string marker = r.read_line("FRAME marker");
    if (marker.substr(0, 5) != "FRAME" ||
        (marker.size() > 5 && marker[5] != ' ')) {
      throw FormatError("expected FRAME marker, got '" + marker + "'", r.offset);
    }
    Plane y(height, width);
    Plane u(height / 2, width / 2);
    Plane v(height / 2, width / 2);
    r.read_plane(y, "luma");
    r.read_plane(u, "chroma U");
    r.read_plane(v, "chroma V");
    frames.emplace_back(std::move(y), std::move(u), std::move(v));
  }
  if (frames.empty()) throw FormatError("stream contains no frames", r.offset);
  return VideoSequence(std::move(frames), static_cast<int>(fps_num), static_cast<int>(fps_den));
}

VideoSequence read_y4m_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  return read_y4m(in);
}

void write_y4m(const VideoSequence& seq, std::ostream& out) {
  out << "YUV4MPEG2 W" << seq.width() << " H" << seq.height() << " F" << seq.fps_num << ":"
      << seq.fps_den << " Ip A1:1 C420mpeg2\n";
  for (const VideoFrame& f : seq.frames) {
    out << "FRAME\n";
    out.write(reinterpret_cast<const char*>(f.y.data()), static_cast<std::streamsize>(f.y.size()));
    out.write(reinterpret_cast<const char*>(f.u.data()), static_cast<std::streamsize>(f.u.size()));
    out.write(reinterpret_cast<const char*>(f.v.data()), static_cast<std::streamsize>(f.v.size()));
  }
  if (!out) throw std::runtime_error("Y4M write failed");
}

void write_y4m_file(const VideoSequence& seq, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_y4m(seq, out);
}

std::string write_y4m_string(const VideoSequence& seq) {
  std::ostringstream out;
  write_y4m(seq, out);
  return out.str();
}

}  // namespace vqtune
