#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "planim/frames.hpp"
#include "planim/solve.hpp"

namespace planim::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kInputError = 2,
  kNetworkError = 3,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RenderOptions {
  std::filesystem::path domain;
  std::filesystem::path problem;
  std::filesystem::path animation;
  std::optional<std::filesystem::path> plan;
  bool solve = false;
  std::string endpoint;  // empty: default_endpoint()
  std::chrono::seconds timeout = service::kDefaultTimeout;
  std::filesystem::path out;
  std::optional<std::filesystem::path> frames_dir;
  std::optional<std::filesystem::path> gif;
  int fps = render::kDefaultFps;
  std::uint64_t seed = 0;
};

struct ValidateOptions {
  std::filesystem::path domain;
  std::filesystem::path problem;
  std::filesystem::path plan;
};

struct CheckProfileOptions {
  std::filesystem::path domain;
  std::filesystem::path problem;
  std::filesystem::path animation;
};

/// Entry point: `planim <render|validate|check-profile> ...`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run_render(const RenderOptions& options, std::ostream& out, std::ostream& err);
int run_validate(const ValidateOptions& options, std::ostream& out, std::ostream& err);
int run_check_profile(const CheckProfileOptions& options, std::ostream& out, std::ostream& err);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace planim::cli
