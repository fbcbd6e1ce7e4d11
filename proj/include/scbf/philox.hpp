#pragma once

#include <array>
#include <cstdint>

namespace scbf {

// Philox-4x32-10 counter-based generator. A block is a pure function of
// (counter, key), so draws are addressable: ensemble paths use disjoint
// counters and reproduce bit-identically regardless of scheduling order.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// Stream purposes keep independent uses of the master seed decorrelated.
enum class StreamPurpose : std::uint32_t {
    InitialData = 1,
    Noise = 2,
    Battery = 3,
    Probe = 4,
};

// Slot-addressed N(0,1) draws for one path: normal(step, slot) is a pure
// function of (seed, path, purpose, step, slot).
class GaussianStream {
  public:
    GaussianStream(std::uint64_t master_seed, std::uint32_t path_id, StreamPurpose purpose)
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          path_(path_id),
          purpose_(static_cast<std::uint32_t>(purpose)) {}

    double normal(std::uint64_t step, std::uint64_t slot) const;
    // uniform in [0,1)
    double uniform(std::uint64_t step, std::uint64_t slot) const;

  private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t path_;
    std::uint32_t purpose_;
};

}  // namespace scbf
