#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "communext/error.hpp"
#include "communext/grid.hpp"
#include "communext/strutil.hpp"

namespace communext {

static_assert(std::endian::native == std::endian::little,
              "container formats assume a little-endian host");

struct ByteWriter {
  std::string buf;

  void raw(const void* p, size_t n) { buf.append(static_cast<const char*>(p), n); }
  void u8(uint8_t v) { raw(&v, 1); }
  void u16(uint16_t v) { raw(&v, 2); }
  void u32(uint32_t v) { raw(&v, 4); }
  void u64(uint64_t v) { raw(&v, 8); }
  void i32(int32_t v) { raw(&v, 4); }
  void f32(float v) { raw(&v, 4); }
  void str(const std::string& s) {
    u32(static_cast<uint32_t>(s.size()));
    raw(s.data(), s.size());
  }
  void grid_f32(const Grid<float>& g) {
    u32(static_cast<uint32_t>(g.rows));
    u32(static_cast<uint32_t>(g.cols));
    raw(g.data.data(), g.data.size() * sizeof(float));
  }
  void grid_u8(const Grid<uint8_t>& g) {
    u32(static_cast<uint32_t>(g.rows));
    u32(static_cast<uint32_t>(g.cols));
    raw(g.data.data(), g.data.size());
  }
};

// Bounds-checked reader; every failure reports the absolute byte offset.
struct ByteReader {
  const uint8_t* base;
  size_t len;
  size_t pos = 0;

  ByteReader(const void* p, size_t n) : base(static_cast<const uint8_t*>(p)), len(n) {}

  void need(size_t n, const char* what) const {
    if (pos + n > len)
      fail(ErrorKind::io, str_format("truncated %s at offset %zu: need %zu bytes, %zu remain",
                                     what, pos, n, len - pos));
  }
  void raw(void* p, size_t n, const char* what) {
    need(n, what);
    std::memcpy(p, base + pos, n);
    pos += n;
  }
  uint8_t u8(const char* what = "u8") { uint8_t v; raw(&v, 1, what); return v; }
  uint16_t u16(const char* what = "u16") { uint16_t v; raw(&v, 2, what); return v; }
  uint32_t u32(const char* what = "u32") { uint32_t v; raw(&v, 4, what); return v; }
  uint64_t u64(const char* what = "u64") { uint64_t v; raw(&v, 8, what); return v; }
  int32_t i32(const char* what = "i32") { int32_t v; raw(&v, 4, what); return v; }
  float f32(const char* what = "f32") { float v; raw(&v, 4, what); return v; }
  std::string str(const char* what = "string") {
    uint32_t n = u32(what);
    need(n, what);
    std::string s(reinterpret_cast<const char*>(base + pos), n);
    pos += n;
    return s;
  }
  Grid<float> grid_f32(const char* what = "f32 grid") {
    uint32_t r = u32(what), c = u32(what);
    Grid<float> g(static_cast<int>(r), static_cast<int>(c));
    raw(g.data.data(), g.data.size() * sizeof(float), what);
    return g;
  }
  Grid<uint8_t> grid_u8(const char* what = "u8 grid") {
    uint32_t r = u32(what), c = u32(what);
    Grid<uint8_t> g(static_cast<int>(r), static_cast<int>(c));
    raw(g.data.data(), g.data.size(), what);
    return g;
  }
};

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  require(f.good(), ErrorKind::io, "cannot open for writing: " + path);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  require(f.good(), ErrorKind::io, "short write: " + path);
}

inline bool file_exists(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return f.good();
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), ErrorKind::io, "cannot open for reading: " + path);
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return bytes;
}

}  // namespace communext
