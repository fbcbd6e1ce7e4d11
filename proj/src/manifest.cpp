#include "scbf/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace scbf {

std::string scbf_version() { return "scbf 1.0.0"; }

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("fnv1a64_file: cannot open " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[65536];
    while (is) {
        is.read(buf, sizeof(buf));
        std::streamsize got = is.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

RunManifest::RunManifest(std::string out_dir, const std::string& normalized_config)
    : out_dir_(std::move(out_dir)) {
    config_hash_ = fnv1a64(normalized_config.data(), normalized_config.size());
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    started_ = buf;
}

void RunManifest::add_output(const std::string& path) {
    outputs_.emplace_back(path, fnv1a64_file(path));
}

void RunManifest::write(const std::string& filename) const {
    nlohmann::json j;
    j["version"] = scbf_version();
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(config_hash_));
    j["config_hash"] = hex;
    j["started"] = started_;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& [path, sum] : outputs_) {
        std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(sum));
        files.push_back({{"path", path}, {"fnv1a64", hex}});
    }
    j["outputs"] = files;
    std::ofstream os(out_dir_ + "/" + filename);
    if (!os) throw std::runtime_error("manifest: cannot write " + filename);
    os << j.dump(2) << "\n";
}

}  // namespace scbf
