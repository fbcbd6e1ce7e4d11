#include "scbf/snapshot.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace scbf {
namespace {

constexpr char kMagic[4] = {'S', 'C', 'B', 'F'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& os, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    put_u64(os, v);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& is) {
    std::uint64_t v = get_u64(is);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

}  // namespace

void save_snapshot(const SpectralField& u, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_snapshot: cannot open " + path);
    const SpectralSpace& sp = u.space();
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(sp.dim()));
    put_u32(os, static_cast<std::uint32_t>(sp.n_modes()));
    put_u64(os, static_cast<std::uint64_t>(sp.n_retained()));
    for (int m = 0; m < sp.n_retained(); ++m) {
        for (int c = 0; c < sp.dim(); ++c) {
            put_f64(os, u.at(c, m).real());
            put_f64(os, u.at(c, m).imag());
        }
    }
    if (!os) throw std::runtime_error("save_snapshot: write failed for " + path);
}

SpectralField load_snapshot(const std::string& path, const SpacePtr& space) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_snapshot: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_snapshot: bad magic in " + path);
    std::uint32_t version = get_u32(is);
    if (version != kVersion) throw std::runtime_error("load_snapshot: unsupported version");
    std::uint32_t dim = get_u32(is);
    std::uint32_t n_modes = get_u32(is);
    std::uint64_t n_retained = get_u64(is);
    SpacePtr sp = space;
    if (!sp) sp = SpectralSpace::make(static_cast<int>(dim), static_cast<int>(n_modes));
    if (static_cast<int>(dim) != sp->dim() || static_cast<int>(n_modes) != sp->n_modes() ||
        n_retained != static_cast<std::uint64_t>(sp->n_retained()))
        throw std::runtime_error("load_snapshot: header mismatch with target space");
    SpectralField u(sp);
    for (int m = 0; m < sp->n_retained(); ++m) {
        for (int c = 0; c < sp->dim(); ++c) {
            double re = get_f64(is);
            double im = get_f64(is);
            u.at(c, m) = std::complex<double>(re, im);
        }
    }
    if (!is) throw std::runtime_error("load_snapshot: truncated file " + path);
    return u;
}

SpectralField load_snapshot(const std::string& path) { return load_snapshot(path, nullptr); }

void dump_snapshot_text(const SpectralField& u, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("dump_snapshot_text: cannot open " + path);
    const SpectralSpace& sp = u.space();
    for (int m = 0; m < sp.n_retained(); ++m) {
        const auto& k = sp.mode(m);
        for (int c = 0; c < sp.dim(); ++c) {
            std::fprintf(f, "%d %d %d %d %.17g %.17g\n", k[0], k[1], k[2], c,
                         u.at(c, m).real(), u.at(c, m).imag());
        }
    }
    std::fclose(f);
}

}  // namespace scbf
