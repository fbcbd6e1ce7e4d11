#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scbf {

// FNV-1a 64 over a byte stream; fast non-cryptographic integrity tag for
// run outputs and config identity.
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::uint64_t fnv1a64_file(const std::string& path);

// Run manifest: config hash, code version, timestamps, and a checksum per
// output file. Written as JSON next to the outputs.
class RunManifest {
  public:
    RunManifest(std::string out_dir, const std::string& normalized_config);
    void add_output(const std::string& path);  // registers + checksums
    void write(const std::string& filename = "manifest.json") const;
    const std::vector<std::pair<std::string, std::uint64_t>>& outputs() const {
        return outputs_;
    }

  private:
    std::string out_dir_;
    std::uint64_t config_hash_ = 0;
    std::string started_;
    std::vector<std::pair<std::string, std::uint64_t>> outputs_;
};

std::string scbf_version();

}  // namespace scbf
