#pragma once

#include <string>

#include "scbf/spectral_field.hpp"

namespace scbf {

// Field snapshot: header (magic "SCBF", version u32, dim u32, n_modes u32,
// retained-mode count u64), then little-endian f64 (re,im) pairs per mode
// per component, modes in lexicographic k order.
void save_snapshot(const SpectralField& u, const std::string& path);
SpectralField load_snapshot(const std::string& path);
// loads into an existing space; header must match it
SpectralField load_snapshot(const std::string& path, const SpacePtr& space);

// plain-text dump: one "kx ky kz component re im" line per entry
void dump_snapshot_text(const SpectralField& u, const std::string& path);

}  // namespace scbf
