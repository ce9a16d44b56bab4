#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ace {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit hash of a file's bytes, hex-encoded. Used to pin inputs in
/// run manifests.
std::string file_hash_hex(const std::string& path);

/// Run manifest: command, full parameter set, and input file hashes. Every
/// output file either embeds this or gets it as a <file>.manifest.json
/// sidecar.
nlohmann::json make_manifest(const std::string& command, const nlohmann::json& params,
                             const std::vector<std::string>& input_files);

void write_manifest_sidecar(const std::string& output_path, const nlohmann::json& manifest);

}  // namespace ace
