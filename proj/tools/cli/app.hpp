#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fermat::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain_error = 1;
inline constexpr int exit_usage_error = 2;

struct Settings {
  std::string backend = "exact";
  unsigned precision = 50;
};

// key = value lines; '#' starts a comment.
std::map<std::string, std::string> parse_config(std::string_view text);

// Flag, then environment, then config file, then default.
Settings resolve_settings(const std::optional<std::string>& backend_flag,
                          const std::optional<unsigned>& precision_flag,
                          const std::map<std::string, std::string>& config, const char* env_backend);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args);

}  // namespace fermat::cli
