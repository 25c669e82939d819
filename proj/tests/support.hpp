#pragma once

// Shared helpers for the test binaries: process capture for CLI tests and
// a few tolerance utilities used across suites.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include <sys/wait.h>

#include "cmclab/error.hpp"

namespace testsupport {

// Run f and report which library error kind it threw, if any.
inline std::optional<cmclab::ErrorKind> error_kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const cmclab::Error& e) {
    return e.kind();
  } catch (...) {
    return std::nullopt;
  }
  return std::nullopt;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;  // captured stdout (stderr only if the caller redirects)
};

// Run a shell command, capture stdout, and decode the exit status.
inline CommandResult run_command(const std::string& cmd) {
  CommandResult result;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    throw std::runtime_error("popen failed for: " + cmd);
  }
  std::array<char, 4096> buf{};
  size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), got);
  }
  const int status = ::pclose(pipe);
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else {
    result.exit_code = -1;
  }
  return result;
}

// Path of the command-line binary, exported by CTest as CMCLAB_CLI.
inline std::string cli_path() {
  const char* path = std::getenv("CMCLAB_CLI");
  if (path == nullptr || path[0] == '\0') {
    throw std::runtime_error("CMCLAB_CLI is not set; run through ctest");
  }
  return path;
}

inline bool close_abs(double a, double b, double tol) {
  return std::abs(a - b) <= tol;
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testsupport
