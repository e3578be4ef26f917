// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#include "manifest.hpp"

#include <openssl/evp.h>

#include <json.hpp>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace bellbeam::cli {

std::string sha256_hex_of_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());

  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);

  std::array<char, 1 << 16> buffer;
  while (in.read(buffer.data(), buffer.size()) || in.gcount() > 0)
    EVP_DigestUpdate(ctx, buffer.data(), static_cast<size_t>(in.gcount()));

  std::array<unsigned char, EVP_MAX_MD_SIZE> digest;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest.data(), &len);
  EVP_MD_CTX_free(ctx);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

void add_output(RunManifest& manifest, const std::filesystem::path& base_dir,
                const std::filesystem::path& file) {
  OutputEntry entry;
  entry.path = std::filesystem::relative(file, base_dir).generic_string();
  entry.bytes = std::filesystem::file_size(file);
  entry.sha256 = sha256_hex_of_file(file);
  manifest.outputs.push_back(std::move(entry));
}

void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& base_dir) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const OutputEntry& entry : manifest.outputs)
    outputs.push_back({{"path", entry.path},
                       {"bytes", entry.bytes},
                       {"sha256", entry.sha256}});
  const nlohmann::json doc{
      {"schema", "bellbeam/manifest-v1"},
      {"command", manifest.command},
      {"tool_version", manifest.tool_version},
      {"created_utc", manifest.created_utc},
      {"config", nlohmann::json::parse(manifest.resolved_config_json)},
      {"outputs", outputs}};

  std::ofstream out(base_dir / "manifest.json", std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " +
                             (base_dir / "manifest.json").string());
  out << doc.dump(2) << '\n';
}

std::string now_utc_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace bellbeam::cli
