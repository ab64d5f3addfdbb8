#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vqtune {

// Malformed or unsupported input data (Y4M, PGM, CSV, JSON, decoded streams).
// Carries the byte offset where parsing stopped, when known.
class FormatError : public std::runtime_error {
public:
  static constexpr std::size_t no_offset = static_cast<std::size_t>(-1);

  explicit FormatError(const std::string& what, std::size_t byte_offset = no_offset)
      : std::runtime_error(byte_offset == no_offset
                               ? what
                               : what + " (byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

private:
  std::size_t byte_offset_;
};

// An external command (metric or codec) failed: nonzero exit status or output
// that could not be parsed. Captured stdout/stderr is kept for diagnosis.
class ExternalToolError : public std::runtime_error {
public:
  ExternalToolError(const std::string& what, int exit_code, std::string output)
      : std::runtime_error(what + (output.empty() ? "" : "\ncaptured output:\n" + output)),
        exit_code_(exit_code),
        output_(std::move(output)) {}

  int exit_code() const noexcept { return exit_code_; }
  const std::string& output() const noexcept { return output_; }

private:
  int exit_code_;
  std::string output_;
};

}  // namespace vqtune
