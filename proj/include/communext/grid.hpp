#pragma once

#include <cstdint>
#include <vector>

#include "communext/error.hpp"

namespace communext {

// Row-major 2D array. The workhorse type for building maps, signal maps and
// masks.
template <typename T>
struct Grid {
  int rows = 0;
  int cols = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(int r, int c, T fill = T{})
      : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {
    require(r >= 0 && c >= 0, ErrorKind::invalid_argument, "negative grid shape");
  }

  bool empty() const { return rows == 0 || cols == 0; }
  size_t size() const { return data.size(); }
  bool same_shape(const Grid& o) const { return rows == o.rows && cols == o.cols; }
  bool in_bounds(int r, int c) const { return r >= 0 && r < rows && c >= 0 && c < cols; }

  T& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  const T& at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
  T& operator[](size_t i) { return data[i]; }
  const T& operator[](size_t i) const { return data[i]; }

  bool operator==(const Grid& o) const {
    return rows == o.rows && cols == o.cols && data == o.data;
  }
};

using GridF = Grid<float>;
using GridU8 = Grid<uint8_t>;

inline bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace communext
