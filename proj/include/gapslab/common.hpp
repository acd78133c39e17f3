#pragma once
// Shared scalar types and small numeric helpers.

#include <cstdint>
#include <string>

namespace gapslab {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr const char* kVersion = "0.1.0";

std::string u128_to_string(u128 v);

// floor(sqrt(n)), exact for all u64
u64 isqrt_u64(u64 n);

// x^e by plain repeated multiplication; deterministic, exact for e = 0, 1
double ipow(double x, unsigned e);

double factorial_d(unsigned n);
double binom_d(unsigned n, unsigned k);

}  // namespace gapslab
