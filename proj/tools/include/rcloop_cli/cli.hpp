#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace rcloop::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;      // malformed config, schema or input
inline constexpr int kInvariant = 3;  // library invariant violated
inline constexpr int kIo = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using nlohmann::json;

struct Artifact {
  std::string name;
  std::string content;
};

// Fills defaults and validates against the per-command schema; unknown keys
// are rejected. The result echoes into artifact headers, so it excludes
// `threads` and `out`.
json resolve_config(const json& raw);

// Runs the resolved config. Inputs named in the config are read relative to
// `base`. Nothing is written to disk.
std::vector<Artifact> execute(const json& resolved, unsigned threads, const std::filesystem::path& base = ".");

// Writes all artifacts or none: files go to temporaries first and are renamed
// once every write succeeded.
void write_artifacts(const std::filesystem::path& dir, const std::vector<Artifact>& artifacts);

// Full command line: parses flags, runs, writes, returns an exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rcloop::cli
