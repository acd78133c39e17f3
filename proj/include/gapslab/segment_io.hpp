#pragma once
// Binary cache files for sieve segments. Layout, all little-endian:
//   magic "PGL1" | u64 base | u64 len | ceil(len/8) bitmap bytes | len x u32 spf
// Bit j of bitmap byte i corresponds to index 8*i + j. spf bytes use the raw
// in-memory encoding (0 = prime/self, 1 for values <= 1, else the factor).

#include <filesystem>

#include "gapslab/prime_engine.hpp"

namespace gapslab {

void write_segment_cache(const SieveSegment& seg, const std::filesystem::path& path);
SieveSegment read_segment_cache(const std::filesystem::path& path);

}  // namespace gapslab
