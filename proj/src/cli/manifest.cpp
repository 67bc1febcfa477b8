#include "bphz/cli/manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <memory>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "bphz/errors.hpp"

#ifndef BPHZ_VERSION
#define BPHZ_VERSION "0.0.0"
#endif

namespace bphz::cli {

using nlohmann::json;

std::string version_tag() { return BPHZ_VERSION; }

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  return sha256_hex(std::string(std::istreambuf_iterator<char>(in), {}));
}

std::string RunManifest::to_json() const {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  j["version"] = version;
  j["seed"] = seed;
  j["config"] = json::object();
  for (const auto& [k, v] : config.entries()) j["config"][k] = v;
  j["outputs"] = json::array();
  for (const auto& [file, digest] : outputs) j["outputs"].push_back({{"file", file}, {"sha256", digest}});
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  RunManifest m;
  try {
    const json j = json::parse(text);
    m.command = j.at("command").get<std::string>();
    m.version = j.value("version", "");
    m.seed = j.value("seed", std::uint64_t{0});
    for (const auto& [k, v] : j.at("config").items()) m.config.set(k, v.get<std::string>());
    for (const auto& o : j.value("outputs", json::array()))
      m.outputs.emplace_back(o.at("file").get<std::string>(), o.at("sha256").get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

RunManifest RunManifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace bphz::cli
