#pragma once

#include "vqtune/frame.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace vqtune {

// Parses a YUV4MPEG2 stream. Accepts chroma tags C420, C420jpeg and
// C420mpeg2 (absent tag defaults to 4:2:0); 8-bit only. Sample bytes are
// copied verbatim. Throws FormatError with the byte offset on malformed
// headers, unsupported formats and truncated payloads.
VideoSequence read_y4m(std::istream& in);
VideoSequence read_y4m_file(const std::filesystem::path& path);

// Emits the canonical header "YUV4MPEG2 W{w} H{h} F{n}:{d} Ip A1:1 C420mpeg2"
// followed by "FRAME\n" + Y,U,V planes per frame. write_y4m(read_y4m(s)) is
// byte-identical for streams written by this function.
void write_y4m(const VideoSequence& seq, std::ostream& out);
void write_y4m_file(const VideoSequence& seq, const std::filesystem::path& path);
std::string write_y4m_string(const VideoSequence& seq);

}  // namespace vqtune
