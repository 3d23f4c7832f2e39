#include "manifest.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "pacd/graph_io.hpp"

namespace pacd::cli {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw io_error("sha256 init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    char two[3];
    std::snprintf(two, sizeof two, "%02x", md[k]);
    hex += two;
  }
  return hex;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& [path, digest] : m.outputs) outputs.push_back({{"path", path}, {"sha256", digest}});
  return {{"command", m.command},   {"parameters", m.parameters}, {"seed", m.seed},
          {"version", m.version},   {"started", m.started},       {"finished", m.finished},
          {"outputs", outputs}};
}

std::string finish_manifest(RunManifest& m) {
  if (m.outputs.empty()) throw io_error("manifest has no outputs");
  for (auto& [path, digest] : m.outputs) digest = sha256_file(path);
  m.finished = utc_timestamp();
  const std::string path = m.outputs.front().first + ".manifest.json";
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << to_json(m).dump(2) << '\n';
  if (!out) throw io_error("failed to write " + path);
  return path;
}

}  // namespace pacd::cli
