#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "communext/grid.hpp"

namespace communext {

// Procedural urban scene: axis-aligned rectangular buildings on open ground.
struct SceneParams {
  int rows = 64;
  int cols = 64;
  double density = 0.3;        // target fraction of building cells, in (0,1); 0 = empty scene
  int footprint_min = 4;       // building side lengths, pixels
  int footprint_max = 10;
  double height_min = 6.0;     // building heights, meters
  double height_max = 40.0;
  double resolution = 4.0;     // meters per pixel
  uint64_t seed = 0;

  void validate() const;
};

struct BuildingMap {
  GridF heights;               // meters; 0 = open ground
  float resolution = 4.0f;     // meters per pixel
  std::string parent_id;       // identifier of the source scene

  int rows() const { return heights.rows; }
  int cols() const { return heights.cols; }
};

struct TxConfig {
  int row = 0;
  int col = 0;
  float height = 5.0f;         // meters above ground: max building height + 5
  float gain_3g5 = 0.0f;       // dBi
  float gain_7g = 6.0f;        // dBi
};

// Generates a scene. Deterministic per seed. The grid center and the four
// quadrant centers (the cells that host transmitters downstream) are kept
// open. Fails when the density target cannot be reached by rejection
// placement within a bounded number of attempts.
BuildingMap synth_scene(const SceneParams& params);

// Four patches centered at the quadrant centers, row-major order. Each patch
// keeps the parent_id and resolution of the source map.
std::vector<BuildingMap> crop_patches(const BuildingMap& map, int patch);

// Block-max reduction by an integer factor. Max (not mean) so thin blockers
// survive: occlusion geometry drives LoS downstream.
BuildingMap downsample(const BuildingMap& map, int factor);

float max_height(const BuildingMap& map);

// Tx at the grid center; height = max building height + 5 m. Fails if the
// center cell is occupied.
TxConfig make_tx(const BuildingMap& map, float gain_3g5 = 0.0f, float gain_7g = 6.0f);

}  // namespace communext
