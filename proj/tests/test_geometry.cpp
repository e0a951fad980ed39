#include "doctest.h"

#include <vector>

#include "communext/error.hpp"
#include "communext/geometry.hpp"
#include "communext/rng.hpp"
#include "communext/scene.hpp"

using namespace communext;

namespace {

// Independent line-stepping oracle, written from the textbook all-octant
// error form. Deliberately a different formulation than the production
// rasterizer.
std::vector<Pixel> oracle_line(Pixel p0, Pixel p1) {
  int x0 = p0.col, y0 = p0.row, x1 = p1.col, y1 = p1.row;
  int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  std::vector<Pixel> cells;
  for (;;) {
    cells.push_back({y0, x0});
    if (x0 == x1 && y0 == y1) break;
    int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
  return cells;
}

// LoS recomputed with the oracle rasterizer.
bool oracle_los(const BuildingMap& b, const TxConfig& tx, int r, int c) {
  auto cells = oracle_line({tx.row, tx.col}, {r, c});
  for (size_t i = 1; i < cells.size(); ++i)
    if (b.heights.at(cells[i].row, cells[i].col) > 0.0f) return false;
  return true;
}

BuildingMap random_scene(uint64_t seed, int size = 16, double density = 0.3) {
  SceneParams p;
  p.rows = p.cols = size;
  p.density = density;
  p.footprint_min = 2;
  p.footprint_max = 5;
  p.seed = seed;
  return synth_scene(p);
}

}  // namespace

TEST_CASE("bresenham_cells: axis-aligned line") {
  auto cells = bresenham_cells({0, 0}, {3, 0});
  REQUIRE(cells.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(cells[static_cast<size_t>(i)] == Pixel{i, 0});
}

TEST_CASE("bresenham_cells: degenerate segment") {
  auto cells = bresenham_cells({0, 0}, {0, 0});
  REQUIRE(cells.size() == 1);
  CHECK(cells[0] == Pixel{0, 0});
}

TEST_CASE("bresenham_cells: matches the independent oracle cell-for-cell") {
  auto cells = bresenham_cells({0, 0}, {2, 5});
  auto expect = oracle_line({0, 0}, {2, 5});
  CHECK(cells == expect);

  // Exhaustive over every segment in a small grid, all octants included.
  for (int r0 = 0; r0 < 7; ++r0)
    for (int c0 = 0; c0 < 7; ++c0)
      for (int r1 = 0; r1 < 7; ++r1)
        for (int c1 = 0; c1 < 7; ++c1) {
          auto got = bresenham_cells({r0, c0}, {r1, c1});
          auto want = oracle_line({r0, c0}, {r1, c1});
          REQUIRE(got == want);
        }
}

TEST_CASE("bresenham_cells: visits max(|dr|,|dc|)+1 cells") {
  Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    Pixel a{static_cast<int>(rng.next_below(40)), static_cast<int>(rng.next_below(40))};
    Pixel b{static_cast<int>(rng.next_below(40)), static_cast<int>(rng.next_below(40))};
    auto cells = bresenham_cells(a, b);
    CHECK(cells.size() ==
          static_cast<size_t>(std::max(std::abs(a.row - b.row), std::abs(a.col - b.col))) + 1);
    CHECK(cells.front() == a);
    CHECK(cells.back() == b);
  }
}

TEST_CASE("los_mask: no obstruction means full LoS") {
  BuildingMap b;
  b.heights = GridF(16, 16, 0.0f);
  TxConfig tx{8, 8, 5.0f, 0.0f, 6.0f};
  auto los = los_mask(b, tx);
  for (uint8_t v : los.data) CHECK(v == 1);
}

TEST_CASE("los_mask: single blocker shadows the cells behind it") {
  BuildingMap b;
  b.heights = GridF(8, 8, 0.0f);
  b.heights.at(2, 0) = 10.0f;
  TxConfig tx{0, 0, 15.0f, 0.0f, 6.0f};
  auto los = los_mask(b, tx);
  // The ray (0,0)->(4,0) passes through (2,0); enumerate to confirm.
  auto cells = bresenham_cells({0, 0}, {4, 0});
  bool blocked = false;
  for (size_t i = 1; i < cells.size(); ++i)
    blocked |= b.heights.at(cells[i].row, cells[i].col) > 0.0f;
  REQUIRE(blocked);
  CHECK(los.at(4, 0) == 0);
  // The Tx cell itself is excluded from blocking.
  CHECK(los.at(0, 0) == 1);
  // The blocker cell is never LoS (destination cell counts).
  CHECK(los.at(2, 0) == 0);
}

TEST_CASE("los_mask: Tx on a building cell fails") {
  BuildingMap b;
  b.heights = GridF(8, 8, 0.0f);
  b.heights.at(4, 4) = 3.0f;
  TxConfig tx{4, 4, 8.0f, 0.0f, 6.0f};
  CHECK_THROWS_AS(los_mask(b, tx), Error);
}

TEST_CASE("classify: all-open map has zero NLoS pixels") {
  BuildingMap b;
  b.heights = GridF(8, 8, 0.0f);
  TxConfig tx{4, 4, 5.0f, 0.0f, 6.0f};
  auto masks = compute_masks(b, tx);
  auto nlos = masks.nlos_mask();
  for (uint8_t v : nlos.data) CHECK(v == 0);
}

TEST_CASE("classify: building cells are in neither binary mask") {
  auto b = random_scene(31);
  auto tx = make_tx(b);
  auto masks = compute_masks(b, tx);
  auto los = masks.los_mask();
  auto nlos = masks.nlos_mask();
  for (size_t i = 0; i < b.heights.size(); ++i) {
    if (b.heights[i] > 0.0f) {
      CHECK(los[i] == 0);
      CHECK(nlos[i] == 0);
    }
  }
}

TEST_CASE("classify: classes partition every pixel") {
  auto b = random_scene(77);
  auto tx = make_tx(b);
  auto masks = compute_masks(b, tx);
  auto los = masks.los_mask();
  auto nlos = masks.nlos_mask();
  for (size_t i = 0; i < b.heights.size(); ++i) {
    int building = b.heights[i] > 0.0f ? 1 : 0;
    CHECK(los[i] + nlos[i] + building == 1);
  }
}

TEST_CASE("los_mask: agrees with the oracle LoS on random scenes") {
  for (uint64_t seed : {2ull, 5ull, 12ull}) {
    auto b = random_scene(seed, 24, 0.25);
    auto tx = make_tx(b);
    auto los = los_mask(b, tx);
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c)
        REQUIRE(static_cast<bool>(los.at(r, c)) == oracle_los(b, tx, r, c));
  }
}

TEST_CASE("los_mask: adding a building cell never grows the LoS set") {
  auto b = random_scene(101, 20, 0.2);
  auto tx = make_tx(b);
  auto before = los_mask(b, tx);
  Rng rng(55);
  for (int k = 0; k < 12; ++k) {
    int r = static_cast<int>(rng.next_below(20));
    int c = static_cast<int>(rng.next_below(20));
    if ((r == tx.row && c == tx.col) || b.heights.at(r, c) > 0.0f) continue;
    auto modified = b;
    modified.heights.at(r, c) = 12.0f;
    auto after = los_mask(modified, tx);
    for (size_t i = 0; i < after.size(); ++i) CHECK(after[i] <= before[i]);
  }
}
