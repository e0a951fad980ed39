#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "communext/geometry.hpp"
#include "communext/propagation.hpp"
#include "communext/scene.hpp"

namespace communext {

using json = nlohmann::json;

// Canonical plane names inside a sample record.
std::string dir_plane_name(int angle_deg);         // "sd0" .. "sd315"
std::string sparse_dir_plane_name(int angle_deg);  // "sp7_d0" .. "sp7_d315"
inline const std::string kPlaneBuilding = "b";
inline const std::string kPlaneMask = "mask";
inline const std::string kPlaneCoverage = "sc";
inline const std::string kMaskSuffix = ".mask";

// One training/evaluation record: a scene crop with its simulated maps and
// whatever sparse variants the experiment configuration asked for.
struct Sample {
  std::string id;
  std::string parent_id;
  float resolution = 4.0f;
  TxConfig tx;
  json seeds;  // per-stage seed and strategy record

  GridF building;
  GridU8 mask_classes;               // empty until simulated
  GridF coverage;                    // S_c, 3.5 GHz
  std::array<GridF, kNumDirections> directions;  // S_d, 7 GHz, canonical order

  std::map<std::string, GridF> sparse_values;   // e.g. "sp7_d90", "sc_block"
  std::map<std::string, GridU8> sparse_masks;   // same key; absent for blend maps

  bool has_all_directions() const {
    for (const auto& g : directions)
      if (g.empty()) return false;
    return true;
  }
  MaskMap masks() const { return MaskMap{mask_classes}; }
};

struct SplitSpec {
  int train = 7, val = 2, test = 1;
  uint64_t seed = 0;
};

struct SplitResult {
  std::vector<int> train, val, test;  // sample indices
};

// nullopt = accepted; otherwise the first violated condition.
std::optional<std::string> validate_sample(const Sample& s);

// Groups samples by parent_id, shuffles the groups by seed and assigns whole
// groups to train/val/test with largest-remainder rounding of the ratios.
// No parent ever appears in more than one split.
SplitResult split(const std::vector<Sample>& samples, const SplitSpec& spec);

// Container IO. Layout: magic "CUXD", version byte, sample count,
// length-prefixed records of little-endian f32/u8 grids, trailing JSON
// manifest. Round-trips are bit-exact.
inline constexpr char kDatasetMagic[4] = {'C', 'U', 'X', 'D'};
inline constexpr uint8_t kDatasetVersion = 1;

json write_dataset(const std::vector<Sample>& samples, const std::string& path,
                   json manifest_extra = json::object(), bool validate = true);
std::vector<Sample> read_dataset(const std::string& path, json* manifest_out = nullptr);

json read_manifest(const std::string& path);

}  // namespace communext
