#include "communext/geometry.hpp"

#include <cmath>
#include <cstdlib>

#include "communext/error.hpp"

namespace communext {

GridU8 MaskMap::los_mask() const {
  GridU8 m(classes.rows, classes.cols, 0);
  for (size_t i = 0; i < classes.size(); ++i)
    m[i] = classes[i] == static_cast<uint8_t>(CellClass::los) ? 1 : 0;
  return m;
}

GridU8 MaskMap::nlos_mask() const {
  GridU8 m(classes.rows, classes.cols, 0);
  for (size_t i = 0; i < classes.size(); ++i)
    m[i] = classes[i] == static_cast<uint8_t>(CellClass::nlos) ? 1 : 0;
  return m;
}

std::vector<Pixel> bresenham_cells(Pixel p0, Pixel p1) {
  const int dr = std::abs(p1.row - p0.row);
  const int dc = std::abs(p1.col - p0.col);
  const int sr = p0.row <= p1.row ? 1 : -1;
  const int sc = p0.col <= p1.col ? 1 : -1;
  std::vector<Pixel> cells;
  cells.reserve(static_cast<size_t>(std::max(dr, dc)) + 1);
  int r = p0.row, c = p0.col;
  if (dc >= dr) {
    int err = 2 * dr - dc;
    for (int i = 0;; ++i) {
      cells.push_back({r, c});
      if (i == dc) break;
      if (err > 0) {
        r += sr;
        err -= 2 * dc;
      }
      err += 2 * dr;
      c += sc;
    }
  } else {
    int err = 2 * dc - dr;
    for (int i = 0;; ++i) {
      cells.push_back({r, c});
      if (i == dr) break;
      if (err > 0) {
        c += sc;
        err -= 2 * dr;
      }
      err += 2 * dc;
      r += sr;
    }
  }
  return cells;
}

int wall_count(const BuildingMap& b, const TxConfig& tx, int row, int col) {
  const auto cells = bresenham_cells({tx.row, tx.col}, {row, col});
  int walls = 0;
  for (size_t i = 1; i < cells.size(); ++i)
    if (b.heights.at(cells[i].row, cells[i].col) > 0.0f) ++walls;
  return walls;
}

GridU8 los_mask(const BuildingMap& b, const TxConfig& tx) {
  require(b.heights.in_bounds(tx.row, tx.col), ErrorKind::invalid_argument,
          "Tx outside the grid");
  require(b.heights.at(tx.row, tx.col) == 0.0f, ErrorKind::invalid_argument,
          "Tx cell is inside a building");
  GridU8 mask(b.rows(), b.cols(), 0);
  for (int r = 0; r < b.rows(); ++r) {
    for (int c = 0; c < b.cols(); ++c) {
      const auto cells = bresenham_cells({tx.row, tx.col}, {r, c});
      bool clear = true;
      for (size_t i = 1; i < cells.size(); ++i) {
        if (b.heights.at(cells[i].row, cells[i].col) > 0.0f) {
          clear = false;
          break;
        }
      }
      mask.at(r, c) = clear ? 1 : 0;
    }
  }
  return mask;
}

MaskMap classify(const BuildingMap& b, const GridU8& los) {
  require(b.heights.rows == los.rows && b.heights.cols == los.cols,
          ErrorKind::invalid_argument, "building map and LoS mask shapes differ");
  MaskMap m;
  m.classes = GridU8(b.rows(), b.cols(), 0);
  for (size_t i = 0; i < m.classes.size(); ++i) {
    if (b.heights[i] > 0.0f)
      m.classes[i] = static_cast<uint8_t>(CellClass::building);
    else if (los[i])
      m.classes[i] = static_cast<uint8_t>(CellClass::los);
    else
      m.classes[i] = static_cast<uint8_t>(CellClass::nlos);
  }
  return m;
}

MaskMap compute_masks(const BuildingMap& b, const TxConfig& tx) {
  return classify(b, los_mask(b, tx));
}

}  // namespace communext
