#include "ace/manifest.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "ace/errors.hpp"

namespace ace {

std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("manifest: cannot open '" + path + "' for hashing");
    std::uint64_t h = 1469598103934665603ULL;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
        if (!in) break;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

nlohmann::json make_manifest(const std::string& command, const nlohmann::json& params,
                             const std::vector<std::string>& input_files) {
    nlohmann::json j;
    j["command"] = command;
    j["params"] = params;
    j["tool_version"] = kToolVersion;
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& f : input_files) {
        inputs[f] = file_hash_hex(f);
    }
    j["inputs"] = inputs;
    return j;
}

void write_manifest_sidecar(const std::string& output_path, const nlohmann::json& manifest) {
    const std::string path = output_path + ".manifest.json";
    std::ofstream out(path);
    if (!out) throw ModelError("manifest: cannot write '" + path + "'");
    out << manifest.dump(2) << "\n";
}

}  // namespace ace
