#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bphz/config.hpp"

namespace bphz::cli {

/// Lowercase hex SHA-256 of a file's bytes. Throws std::runtime_error if the
/// file cannot be read.
std::string sha256_file(const std::string& path);
std::string sha256_hex(const std::string& bytes);

struct RunManifest {
  std::string command;
  KeyValueConfig config;
  std::uint64_t seed = 0;
  std::string version;
  /// (file name relative to the output directory, digest)
  std::vector<std::pair<std::string, std::string>> outputs;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
  static RunManifest load(const std::string& path);
};

/// Version tag compiled into the binary.
std::string version_tag();

}  // namespace bphz::cli
