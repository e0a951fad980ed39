#pragma once

#include <cstdint>
#include <vector>

#include "communext/grid.hpp"
#include "communext/scene.hpp"

namespace communext {

enum class CellClass : uint8_t { los = 0, nlos = 1, building = 2 };

struct Pixel {
  int row = 0;
  int col = 0;
  bool operator==(const Pixel&) const = default;
};

// Ternary per-pixel classification. los/nlos/building partition the grid;
// building cells are exactly those with height > 0 and belong to neither
// binary mask.
struct MaskMap {
  GridU8 classes;  // CellClass values

  GridU8 los_mask() const;
  GridU8 nlos_mask() const;
  bool is(int r, int c, CellClass k) const {
    return classes.at(r, c) == static_cast<uint8_t>(k);
  }
};

// Integer midpoint rasterization of the segment p0 -> p1, inclusive of both
// endpoints, in traversal order from p0. Visits max(|drow|,|dcol|)+1 cells.
std::vector<Pixel> bresenham_cells(Pixel p0, Pixel p1);

// A pixel is LoS iff no cell on the line Tx -> pixel, excluding the Tx cell
// itself, has building height > 0. The destination cell counts, so building
// interiors are never LoS. Fails if the Tx sits on a building cell.
GridU8 los_mask(const BuildingMap& b, const TxConfig& tx);

// building where height > 0; los where the mask says so; nlos elsewhere.
MaskMap classify(const BuildingMap& b, const GridU8& los);

MaskMap compute_masks(const BuildingMap& b, const TxConfig& tx);

// Number of building cells on the line tx -> (row, col), excluding the Tx
// cell. Shared by the LoS test and the propagation wall count.
int wall_count(const BuildingMap& b, const TxConfig& tx, int row, int col);

}  // namespace communext
