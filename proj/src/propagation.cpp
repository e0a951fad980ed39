#include "communext/propagation.hpp"

#include <cmath>

#include "communext/error.hpp"
#include "communext/parallel.hpp"
#include "communext/rng.hpp"

namespace communext {

void PropagationParams::validate() const {
  require(frequency_hz > 0.0, ErrorKind::invalid_argument, "frequency must be positive");
  require(wall_loss_db >= 0.0, ErrorKind::invalid_argument, "wall loss must be >= 0");
  require(ue_height_m >= 0.0, ErrorKind::invalid_argument, "UE height must be >= 0");
  require(shadow_sigma_db >= 0.0, ErrorKind::invalid_argument, "shadow sigma must be >= 0");
}

void AntennaPattern::validate() const {
  bool canonical = false;
  for (int a : kCanonicalDirections) canonical |= a == boresight_deg;
  require(canonical, ErrorKind::invalid_argument, "boresight must be one of 0,45,...,315");
  require(hpbw_deg > 0.0, ErrorKind::invalid_argument, "hpbw must be positive");
  require(max_attenuation_db >= 0.0, ErrorKind::invalid_argument,
          "max attenuation must be >= 0");
}

double fspl_db(double distance_m, double frequency_hz) {
  if (distance_m <= 0.0) distance_m = 2.0;
  return 20.0 * std::log10(distance_m) + 20.0 * std::log10(frequency_hz) - 147.55;
}

double directional_attenuation_db(const AntennaPattern& pattern, double azimuth_deg) {
  double off = std::fmod(azimuth_deg - pattern.boresight_deg, 360.0);
  if (off > 180.0) off -= 360.0;
  if (off <= -180.0) off += 360.0;
  double a = 12.0 * (off / pattern.hpbw_deg) * (off / pattern.hpbw_deg);
  return a < pattern.max_attenuation_db ? a : pattern.max_attenuation_db;
}

double azimuth_deg(const TxConfig& tx, int row, int col) {
  if (row == tx.row && col == tx.col) return 0.0;
  double deg = std::atan2(static_cast<double>(tx.row - row), static_cast<double>(col - tx.col)) *
               180.0 / std::numbers::pi;
  if (deg < 0.0) deg += 360.0;
  return deg;
}

namespace {

void check_scene(const BuildingMap& b, const MaskMap& masks) {
  require(b.heights.rows == masks.classes.rows && b.heights.cols == masks.classes.cols,
          ErrorKind::invalid_argument, "building map and masks shapes differ");
  for (size_t i = 0; i < b.heights.size(); ++i) {
    bool is_building = masks.classes[i] == static_cast<uint8_t>(CellClass::building);
    require(is_building == (b.heights[i] > 0.0f), ErrorKind::invalid_argument,
            "masks were not derived from this building map");
  }
}

SignalMap simulate(const BuildingMap& b, const TxConfig& tx, const PropagationParams& params,
                   const AntennaPattern* pattern, const MaskMap& masks) {
  params.validate();
  check_scene(b, masks);
  const int rows = b.rows(), cols = b.cols();
  const double gain = pattern ? pattern->peak_gain_dbi : params.tx_gain_dbi;
  const double dz = tx.height - params.ue_height_m;

  SignalMap out;
  out.values = GridF(rows, cols, kFloorDbm);
  out.band = pattern ? Band::b7g : Band::b3g5;
  out.direction_deg = pattern ? pattern->boresight_deg : -1;

  parallel_for(rows, [&](int64_t r0, int64_t r1) {
    for (int r = static_cast<int>(r0); r < static_cast<int>(r1); ++r) {
      for (int c = 0; c < cols; ++c) {
        if (b.heights.at(r, c) > 0.0f) continue;  // stays at the floor
        double dxy = std::hypot(static_cast<double>(r - tx.row),
                                static_cast<double>(c - tx.col)) *
                     b.resolution;
        double d3d = std::hypot(dxy, dz);
        double rss = params.tx_power_dbm + gain - fspl_db(d3d, params.frequency_hz);
        rss -= params.wall_loss_db * wall_count(b, tx, r, c);
        if (masks.is(r, c, CellClass::nlos)) rss -= params.nlos_offset_db;
        if (pattern) rss -= directional_attenuation_db(*pattern, azimuth_deg(tx, r, c));
        if (params.shadow_sigma_db > 0.0) {
          uint64_t idx = static_cast<uint64_t>(r) * cols + c;
          rss -= params.shadow_sigma_db * gaussian_at(params.shadow_seed, idx);
        }
        out.values.at(r, c) = std::max(static_cast<float>(rss), kFloorDbm);
      }
    }
  });
  return out;
}

}  // namespace

SignalMap simulate_coverage(const BuildingMap& b, const TxConfig& tx,
                            const PropagationParams& params, const MaskMap& masks) {
  return simulate(b, tx, params, nullptr, masks);
}

SignalMap simulate_directional(const BuildingMap& b, const TxConfig& tx,
                               const PropagationParams& params, const AntennaPattern& pattern,
                               const MaskMap& masks) {
  pattern.validate();
  return simulate(b, tx, params, &pattern, masks);
}

}  // namespace communext
