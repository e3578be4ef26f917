// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
//
// Run manifests: the resolved configuration, seed, tool version, timestamps
// and a digest inventory of every file a command wrote. Re-running a command
// from its manifest reproduces the same digests.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace bellbeam::cli {

struct OutputEntry {
  std::string path;  // relative to the manifest's directory
  std::uint64_t bytes = 0;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  std::string tool_version;
  std::string created_utc;          // ISO 8601, UTC
  std::string resolved_config_json;  // bellbeam/config-v1 document
  std::vector<OutputEntry> outputs;
};

std::string sha256_hex_of_file(const std::filesystem::path& path);

/// Hashes and records one output file (path stored relative to base_dir).
void add_output(RunManifest& manifest, const std::filesystem::path& base_dir,
                const std::filesystem::path& file);

/// Writes manifest.json into base_dir.
void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& base_dir);

std::string now_utc_iso8601();

}  // namespace bellbeam::cli
