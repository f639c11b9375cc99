#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fluxlag {

/// Schema or validation failure in a scenario document. `path()` is a
/// JSON-pointer-style location ("/mesh/n"), empty for document-level errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Hard failure inside the time integrator (non-monotone particles, NaN, ...).
class SolverError : public std::runtime_error {
 public:
  static constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

  explicit SolverError(const std::string& what, std::size_t node = kNoNode)
      : std::runtime_error(what), node_(node) {}

  /// Zero-based node index that triggered the failure, or kNoNode.
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

}  // namespace fluxlag
