#pragma once

#include <cstdint>

#include "communext/geometry.hpp"
#include "communext/grid.hpp"
#include "communext/scene.hpp"

namespace communext {

// Sentinel for void / unsampled / building-interior cells, dBm.
inline constexpr float kFloorDbm = -160.0f;
// Communicable-region threshold, dBm.
inline constexpr float kCommunicableDbm = -90.0f;

inline constexpr double kFreq3g5Hz = 3.5e9;
inline constexpr double kFreq7gHz = 7.0e9;
inline constexpr int kNumDirections = 8;
inline constexpr int kCanonicalDirections[kNumDirections] = {0, 45, 90, 135, 180, 225, 270, 315};

struct PropagationParams {
  double frequency_hz = kFreq3g5Hz;
  double tx_gain_dbi = 0.0;
  double tx_power_dbm = 30.0;   // EIRP reference
  double ue_height_m = 1.5;
  double wall_loss_db = 8.0;    // per obstructing cell on the ray
  double nlos_offset_db = 10.0;
  double shadow_sigma_db = 0.0; // optional log-normal term
  uint64_t shadow_seed = 0;

  void validate() const;
};

// Single-cut parabolic pattern with a hard cap, standing in for the full
// directional model: A(phi) = min(12 * (off / hpbw)^2, max_attenuation).
struct AntennaPattern {
  int boresight_deg = 0;            // one of 0, 45, ..., 315
  double hpbw_deg = 65.0;
  double max_attenuation_db = 30.0;
  double peak_gain_dbi = 6.0;

  void validate() const;
};

enum class Band : uint8_t { b3g5 = 0, b7g = 1 };

struct SignalMap {
  GridF values;           // dBm, >= -160; building interiors exactly -160
  Band band = Band::b3g5;
  int direction_deg = -1; // -1 = omni

  int rows() const { return values.rows; }
  int cols() const { return values.cols; }
};

// Free-space path loss in dB: 20 log10(d) + 20 log10(f) - 147.55.
// d = 0 is clamped to half a pixel (2 m) before evaluation.
double fspl_db(double distance_m, double frequency_hz);

double directional_attenuation_db(const AntennaPattern& pattern, double azimuth_deg);

// Azimuth of (row, col) as seen from the Tx, degrees in [0, 360):
// 0 = +col, 90 = -row (grid-up). The Tx pixel itself maps to 0.
double azimuth_deg(const TxConfig& tx, int row, int col);

// Deterministic coverage oracle: FSPL over the 3D distance, per-wall
// penetration loss along the Bresenham ray, an NLoS offset, and optional
// seeded log-normal shadowing. Clamped below at -160 dBm; building pixels
// forced to -160 dBm.
SignalMap simulate_coverage(const BuildingMap& b, const TxConfig& tx,
                            const PropagationParams& params, const MaskMap& masks);

// Coverage with tx_gain = pattern.peak_gain and the per-pixel directional
// attenuation subtracted.
SignalMap simulate_directional(const BuildingMap& b, const TxConfig& tx,
                               const PropagationParams& params, const AntennaPattern& pattern,
                               const MaskMap& masks);

}  // namespace communext
