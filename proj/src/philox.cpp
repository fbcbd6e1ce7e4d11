#include "scbf/philox.hpp"

#include <cmath>

namespace scbf {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> round_once(std::array<std::uint32_t, 4> x,
                                               std::array<std::uint32_t, 2> k) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, x[0], hi0, lo0);
    mulhilo(kMul1, x[2], hi1, lo1);
    return {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

inline double u53(std::uint32_t hi, std::uint32_t lo) {
    std::uint64_t v = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>(v >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int i = 0; i < 10; ++i) {
        if (i > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        ctr = round_once(ctr, key);
    }
    return ctr;
}

double GaussianStream::uniform(std::uint64_t step, std::uint64_t slot) const {
    std::array<std::uint32_t, 4> ctr = {path_, purpose_,
                                        static_cast<std::uint32_t>(step),
                                        static_cast<std::uint32_t>(slot)};
    auto r = philox4x32(ctr, key_);
    return u53(r[0], r[1]);
}

double GaussianStream::normal(std::uint64_t step, std::uint64_t slot) const {
    // Box-Muller on one 4x32 block; slot parity picks the cos/sin member.
    std::uint64_t block = slot >> 1;
    std::array<std::uint32_t, 4> ctr = {path_, purpose_ | 0x80000000u,
                                        static_cast<std::uint32_t>(step),
                                        static_cast<std::uint32_t>(block)};
    auto r = philox4x32(ctr, key_);
    double u1 = u53(r[0], r[1]);
    double u2 = u53(r[2], r[3]);
    double rad = std::sqrt(-2.0 * std::log1p(-u1));  // 1-u1 in (0,1], never log(0)
    double ang = 6.283185307179586476925286766559 * u2;
    return (slot & 1) ? rad * std::sin(ang) : rad * std::cos(ang);
}

}  // namespace scbf
