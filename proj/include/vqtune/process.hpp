#pragma once

#include <filesystem>
#include <string>

namespace vqtune {

struct CommandResult {
  int exit_code = -1;
  std::string out;  // captured stdout
  std::string err;  // captured stderr

  std::string merged() const { return err.empty() ? out : out + "\n" + err; }
};

// Runs a shell command, capturing stdout and stderr separately. exit_code is
// the command's exit status, or 128+signal when killed.
CommandResult run_command(const std::string& shell_command);

// Single-quotes a string for POSIX shells.
std::string shell_quote(const std::string& text);

// Replaces every "{name}" in the template; each named placeholder must occur
// exactly once. Substituted values are shell-quoted.
std::string substitute_template(const std::string& command_template,
                                const std::vector<std::pair<std::string, std::string>>& vars);

// Uniquely named directory under the system temp root, removed recursively on
// destruction.
class TempDir {
public:
  explicit TempDir(const std::string& prefix);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
};

}  // namespace vqtune
