#include "gapslab/segment_io.hpp"

#include <cstring>
#include <fstream>

namespace gapslab {

namespace {

constexpr char kMagic[4] = {'P', 'G', 'L', '1'};
constexpr u64 kMaxCacheLen = u64(1) << 31;

void put_u64(std::string& out, u64 v) {
  for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

u64 get_u64(const u8* p) {
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v |= u64(p[i]) << (8 * i);
  return v;
}

}  // namespace

void write_segment_cache(const SieveSegment& seg, const std::filesystem::path& path) {
  std::string buf;
  u64 nbytes = (seg.len + 7) / 8;
  buf.reserve(20 + nbytes + 4 * seg.len);
  buf.append(kMagic, 4);
  put_u64(buf, seg.base);
  put_u64(buf, seg.len);
  for (u64 i = 0; i < nbytes; ++i)
    buf += static_cast<char>((seg.bits[i >> 3] >> (8 * (i & 7))) & 0xff);
  for (u64 i = 0; i < seg.len; ++i) {
    u32 v = seg.spf[static_cast<size_t>(i)];
    for (int b = 0; b < 4; ++b) buf += static_cast<char>((v >> (8 * b)) & 0xff);
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail_io("cannot open cache file for writing: " + path.string());
  f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!f) fail_io("failed writing cache file: " + path.string());
}

SieveSegment read_segment_cache(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail_io("cannot open cache file for reading: " + path.string());
  std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  const u8* p = reinterpret_cast<const u8*>(buf.data());
  if (buf.size() < 20 || std::memcmp(p, kMagic, 4) != 0)
    fail_io("corrupt-cache: bad magic in " + path.string());
  u64 base = get_u64(p + 4);
  u64 len = get_u64(p + 12);
  if (len == 0 || len > kMaxCacheLen) fail_io("corrupt-cache: implausible length in " + path.string());
  u64 nbytes = (len + 7) / 8;
  u64 expected = 20 + nbytes + 4 * len;
  if (buf.size() != expected)
    fail_io("corrupt-cache: size mismatch in " + path.string() + " (expected " +
            std::to_string(expected) + " bytes, got " + std::to_string(buf.size()) + ")");
  SieveSegment seg;
  seg.base = base;
  seg.len = len;
  seg.bits.assign(static_cast<size_t>((len + 63) / 64), 0);
  const u8* bm = p + 20;
  for (u64 i = 0; i < nbytes; ++i) seg.bits[i >> 3] |= u64(bm[i]) << (8 * (i & 7));
  if (len & 63) seg.bits.back() &= (u64(1) << (len & 63)) - 1;
  seg.spf.resize(static_cast<size_t>(len));
  const u8* sp = bm + nbytes;
  for (u64 i = 0; i < len; ++i) {
    u32 v = 0;
    for (int b = 0; b < 4; ++b) v |= u32(sp[4 * i + b]) << (8 * b);
    seg.spf[static_cast<size_t>(i)] = v;
  }
  return seg;
}

}  // namespace gapslab
