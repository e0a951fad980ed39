#include "communext/scene.hpp"

#include <algorithm>
#include <array>

#include "communext/error.hpp"
#include "communext/rng.hpp"
#include "communext/strutil.hpp"

namespace communext {

void SceneParams::validate() const {
  require(rows > 0 && cols > 0, ErrorKind::invalid_argument, "scene grid must be non-empty");
  require(density >= 0.0 && density < 1.0, ErrorKind::invalid_argument,
          "density target must be in [0, 1)");
  require(footprint_min >= 1, ErrorKind::invalid_argument, "min footprint must be >= 1 px");
  require(footprint_max >= footprint_min, ErrorKind::invalid_argument,
          "footprint range inverted");
  require(height_min > 0.0 && height_max >= height_min, ErrorKind::invalid_argument,
          "height range invalid");
  require(resolution > 0.0, ErrorKind::invalid_argument, "resolution must be positive");
}

namespace {

std::array<std::pair<int, int>, 5> reserved_cells(int rows, int cols) {
  return {{{rows / 2, cols / 2},
           {rows / 4, cols / 4},
           {rows / 4, 3 * cols / 4},
           {3 * rows / 4, cols / 4},
           {3 * rows / 4, 3 * cols / 4}}};
}

}  // namespace

BuildingMap synth_scene(const SceneParams& params) {
  params.validate();
  BuildingMap out;
  out.heights = GridF(params.rows, params.cols, 0.0f);
  out.resolution = static_cast<float>(params.resolution);
  out.parent_id = str_format("scn-%016llx", static_cast<unsigned long long>(params.seed));
  if (params.density == 0.0) return out;

  Rng rng(derive_seed(params.seed, 0x5ce7e));
  const auto reserved = reserved_cells(params.rows, params.cols);
  const int64_t total = static_cast<int64_t>(params.rows) * params.cols;
  const auto target = static_cast<int64_t>(params.density * static_cast<double>(total));
  int64_t covered = 0;

  // Rejection placement: a candidate rectangle is dropped if it overlaps an
  // existing building or a reserved Tx cell. The attempt budget bounds the
  // search when the target is unreachable for the footprint range.
  const int64_t max_attempts = 1000 + 400 * std::max<int64_t>(1, target / (params.footprint_min * params.footprint_min));
  int64_t attempts = 0;
  while (covered < target) {
    if (++attempts > max_attempts)
      fail(ErrorKind::invalid_argument,
           str_format("unsatisfiable density %.3f: %lld placement attempts exhausted at "
                      "coverage %.3f",
                      params.density, static_cast<long long>(max_attempts),
                      static_cast<double>(covered) / static_cast<double>(total)));
    int h = params.footprint_min +
            static_cast<int>(rng.next_below(params.footprint_max - params.footprint_min + 1));
    int w = params.footprint_min +
            static_cast<int>(rng.next_below(params.footprint_max - params.footprint_min + 1));
    if (h > params.rows || w > params.cols) continue;
    int r0 = static_cast<int>(rng.next_below(params.rows - h + 1));
    int c0 = static_cast<int>(rng.next_below(params.cols - w + 1));
    float height = static_cast<float>(rng.next_uniform(params.height_min, params.height_max));

    bool blocked = false;
    for (const auto& [rr, rc] : reserved) {
      if (rr >= r0 && rr < r0 + h && rc >= c0 && rc < c0 + w) {
        blocked = true;
        break;
      }
    }
    for (int r = r0; r < r0 + h && !blocked; ++r)
      for (int c = c0; c < c0 + w; ++c)
        if (out.heights.at(r, c) > 0.0f) {
          blocked = true;
          break;
        }
    if (blocked) continue;

    for (int r = r0; r < r0 + h; ++r)
      for (int c = c0; c < c0 + w; ++c) out.heights.at(r, c) = height;
    covered += static_cast<int64_t>(h) * w;
  }
  return out;
}

std::vector<BuildingMap> crop_patches(const BuildingMap& map, int patch) {
  require(patch >= 1, ErrorKind::invalid_argument, "patch size must be >= 1");
  const int rows = map.rows(), cols = map.cols();
  require(patch <= rows / 2 && patch <= cols / 2, ErrorKind::invalid_argument,
          str_format("patch %d exceeds bounds of %dx%d map (four patches centered at "
                     "quadrant centers must fit)",
                     patch, rows, cols));
  std::vector<BuildingMap> out;
  out.reserve(4);
  for (int qr = 0; qr < 2; ++qr) {
    for (int qc = 0; qc < 2; ++qc) {
      int center_r = (2 * qr + 1) * rows / 4;
      int center_c = (2 * qc + 1) * cols / 4;
      int r0 = center_r - patch / 2;
      int c0 = center_c - patch / 2;
      require(r0 >= 0 && c0 >= 0 && r0 + patch <= rows && c0 + patch <= cols,
              ErrorKind::invalid_argument, "patch exceeds map bounds");
      BuildingMap p;
      p.heights = GridF(patch, patch);
      p.resolution = map.resolution;
      p.parent_id = map.parent_id;
      for (int r = 0; r < patch; ++r)
        for (int c = 0; c < patch; ++c) p.heights.at(r, c) = map.heights.at(r0 + r, c0 + c);
      out.push_back(std::move(p));
    }
  }
  return out;
}

BuildingMap downsample(const BuildingMap& map, int factor) {
  require(factor >= 1, ErrorKind::invalid_argument, "downsample factor must be >= 1");
  require(map.rows() % factor == 0 && map.cols() % factor == 0, ErrorKind::invalid_argument,
          str_format("dimensions %dx%d not divisible by factor %d", map.rows(), map.cols(),
                     factor));
  BuildingMap out;
  out.heights = GridF(map.rows() / factor, map.cols() / factor);
  out.resolution = map.resolution * static_cast<float>(factor);
  out.parent_id = map.parent_id;
  for (int r = 0; r < out.rows(); ++r) {
    for (int c = 0; c < out.cols(); ++c) {
      float m = 0.0f;
      for (int dr = 0; dr < factor; ++dr)
        for (int dc = 0; dc < factor; ++dc)
          m = std::max(m, map.heights.at(r * factor + dr, c * factor + dc));
      out.heights.at(r, c) = m;
    }
  }
  return out;
}

float max_height(const BuildingMap& map) {
  float m = 0.0f;
  for (float v : map.heights.data) m = std::max(m, v);
  return m;
}

TxConfig make_tx(const BuildingMap& map, float gain_3g5, float gain_7g) {
  TxConfig tx;
  tx.row = map.rows() / 2;
  tx.col = map.cols() / 2;
  require(map.heights.at(tx.row, tx.col) == 0.0f, ErrorKind::invalid_argument,
          "Tx cell is inside a building");
  tx.height = max_height(map) + 5.0f;
  tx.gain_3g5 = gain_3g5;
  tx.gain_7g = gain_7g;
  return tx;
}

}  // namespace communext
