#include "doctest.h"

#include <cmath>

#include "communext/error.hpp"
#include "communext/propagation.hpp"
#include "communext/scene.hpp"

using namespace communext;

namespace {

struct Scene {
  BuildingMap b;
  TxConfig tx;
  MaskMap masks;
};

Scene empty_scene(int size) {
  Scene s;
  s.b.heights = GridF(size, size, 0.0f);
  s.b.resolution = 4.0f;
  s.tx = make_tx(s.b);
  s.masks = compute_masks(s.b, s.tx);
  return s;
}

}  // namespace

TEST_CASE("fspl: closed form values") {
  CHECK(fspl_db(1.0, 1e9) == doctest::Approx(32.45).epsilon(1e-9));
  // Doubling the distance adds 20*log10(2) dB.
  double d1 = fspl_db(100.0, 3.5e9);
  double d2 = fspl_db(200.0, 3.5e9);
  CHECK(d2 - d1 == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
  // 3.5 -> 7 GHz at fixed distance adds the same 6.0206 dB.
  CHECK(fspl_db(150.0, 7e9) - fspl_db(150.0, 3.5e9) ==
        doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
  // Zero distance is clamped to half a pixel.
  CHECK(fspl_db(0.0, 1e9) == doctest::Approx(fspl_db(2.0, 1e9)));
}

TEST_CASE("directional_attenuation: parabolic with a cap") {
  AntennaPattern p;
  p.boresight_deg = 0;
  CHECK(directional_attenuation_db(p, 0.0) == doctest::Approx(0.0));
  CHECK(directional_attenuation_db(p, 65.0) == doctest::Approx(12.0));
  // 12*(180/65)^2 = 92.0 > 30, capped.
  CHECK(directional_attenuation_db(p, 180.0) == doctest::Approx(30.0));
  // Wrapping: boresight 315, azimuth 10 -> offset 55.
  p.boresight_deg = 315;
  CHECK(directional_attenuation_db(p, 10.0) ==
        doctest::Approx(12.0 * (55.0 / 65.0) * (55.0 / 65.0)));
}

TEST_CASE("simulate_coverage: monotone decay along rays on an empty map") {
  auto s = empty_scene(64);
  PropagationParams params;
  params.frequency_hz = kFreq3g5Hz;
  auto cov = simulate_coverage(s.b, s.tx, params, s.masks);
  // Walk outward along the four axes and the diagonal.
  const int dr[] = {0, 0, 1, -1, 1};
  const int dc[] = {1, -1, 0, 0, 1};
  for (int k = 0; k < 5; ++k) {
    float prev = cov.values.at(s.tx.row, s.tx.col);
    for (int step = 1;; ++step) {
      int r = s.tx.row + dr[k] * step, c = s.tx.col + dc[k] * step;
      if (!cov.values.in_bounds(r, c)) break;
      CHECK(cov.values.at(r, c) <= prev);
      prev = cov.values.at(r, c);
    }
  }
}

TEST_CASE("simulate_coverage: wall and NLoS penalties are additive") {
  // Tx at the center of a 33x33 map; a single wall cell to the east shadows
  // the pixel behind it, while the mirrored western pixel stays LoS.
  BuildingMap b;
  b.heights = GridF(33, 33, 0.0f);
  b.resolution = 4.0f;
  b.heights.at(16, 20) = 10.0f;
  TxConfig tx{16, 16, 15.0f, 0.0f, 6.0f};
  auto masks = compute_masks(b, tx);
  REQUIRE(masks.is(16, 22, CellClass::nlos));
  REQUIRE(masks.is(16, 10, CellClass::los));
  PropagationParams params;
  auto cov = simulate_coverage(b, tx, params, masks);
  // Equidistant pixels: one behind a 1-cell wall, one in the clear.
  double diff = cov.values.at(16, 10) - cov.values.at(16, 22);
  CHECK(diff == doctest::Approx(params.wall_loss_db + params.nlos_offset_db).epsilon(1e-6));
}

TEST_CASE("simulate_coverage: deterministic, floor respected, buildings at the sentinel") {
  SceneParams sp;
  sp.seed = 4;
  sp.density = 0.3;
  auto b = synth_scene(sp);
  auto tx = make_tx(b);
  auto masks = compute_masks(b, tx);
  PropagationParams params;
  params.shadow_sigma_db = 6.0;
  params.shadow_seed = 99;
  auto a1 = simulate_coverage(b, tx, params, masks);
  auto a2 = simulate_coverage(b, tx, params, masks);
  CHECK(a1.values == a2.values);
  for (size_t i = 0; i < a1.values.size(); ++i) {
    CHECK(a1.values[i] >= kFloorDbm);
    if (b.heights[i] > 0.0f) CHECK(a1.values[i] == kFloorDbm);
  }
  params.shadow_seed = 100;
  auto a3 = simulate_coverage(b, tx, params, masks);
  CHECK(a1.values.data != a3.values.data);
}

TEST_CASE("cross-band offset: 7 GHz at 6 dBi vs 3.5 GHz at 0 dBi") {
  auto s = empty_scene(32);
  PropagationParams p35;
  p35.frequency_hz = kFreq3g5Hz;
  p35.tx_gain_dbi = 0.0;
  PropagationParams p7;
  p7.frequency_hz = kFreq7gHz;
  p7.tx_gain_dbi = 6.0;
  auto c35 = simulate_coverage(s.b, s.tx, p35, s.masks);
  auto c7 = simulate_coverage(s.b, s.tx, p7, s.masks);
  const double expected = 6.0 - 20.0 * std::log10(2.0);  // ~ -0.0206 dB
  for (int r = 0; r < 32; r += 7)
    for (int c = 0; c < 32; c += 7)
      CHECK(c7.values.at(r, c) - c35.values.at(r, c) == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("simulate_directional: boresight ray carries the full beam") {
  auto s = empty_scene(32);
  PropagationParams params;
  params.frequency_hz = kFreq7gHz;
  AntennaPattern pat;
  pat.boresight_deg = 0;
  auto dir = simulate_directional(s.b, s.tx, params, pat, s.masks);
  PropagationParams with_gain = params;
  with_gain.tx_gain_dbi = pat.peak_gain_dbi;
  auto omni = simulate_coverage(s.b, s.tx, with_gain, s.masks);
  // Pixels due east of the Tx sit exactly on the boresight: zero attenuation.
  for (int c = s.tx.col + 1; c < 32; ++c)
    CHECK(dir.values.at(s.tx.row, c) == doctest::Approx(omni.values.at(s.tx.row, c)));
  // Off-axis pixels are attenuated.
  CHECK(dir.values.at(s.tx.row - 5, s.tx.col) < omni.values.at(s.tx.row - 5, s.tx.col));
}

TEST_CASE("simulate_directional: 90-degree scene rotation maps direction 0 onto 90") {
  // Scene symmetric under 90-degree rotation about the center of a 33x33 grid.
  const int n = 33, ctr = 16;
  BuildingMap b;
  b.heights = GridF(n, n, 0.0f);
  b.resolution = 4.0f;
  auto rot = [&](int r, int c) { return std::pair<int, int>{ctr - (c - ctr), ctr + (r - ctr)}; };
  auto place = [&](int r, int c, float h) {
    for (int k = 0; k < 4; ++k) {
      b.heights.at(r, c) = h;
      auto [nr, nc] = rot(r, c);
      r = nr;
      c = nc;
    }
  };
  place(10, 22, 12.0f);
  place(5, 18, 20.0f);
  place(20, 25, 9.0f);
  TxConfig tx{ctr, ctr, 25.0f, 0.0f, 6.0f};
  auto masks = compute_masks(b, tx);
  PropagationParams params;
  params.frequency_hz = kFreq7gHz;
  AntennaPattern p0, p90;
  p0.boresight_deg = 0;
  p90.boresight_deg = 90;
  auto m0 = simulate_directional(b, tx, params, p0, masks);
  auto m90 = simulate_directional(b, tx, params, p90, masks);
  // Rotating the grid 90 degrees counterclockwise carries the 0-degree map
  // onto the 90-degree map exactly.
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      auto [nr, nc] = rot(r, c);
      REQUIRE(m90.values.at(nr, nc) == m0.values.at(r, c));
    }
}

TEST_CASE("simulate_directional: opposite boresights mirror on a symmetric scene") {
  const int n = 33, ctr = 16;
  BuildingMap b;
  b.heights = GridF(n, n, 0.0f);
  b.resolution = 4.0f;
  auto mirror_c = [&](int c) { return 2 * ctr - c; };
  auto place = [&](int r, int c, float h) {
    b.heights.at(r, c) = h;
    b.heights.at(r, mirror_c(c)) = h;
  };
  place(10, 22, 12.0f);
  place(22, 27, 18.0f);
  place(4, 9, 7.0f);
  TxConfig tx{ctr, ctr, 23.0f, 0.0f, 6.0f};
  auto masks = compute_masks(b, tx);
  PropagationParams params;
  params.frequency_hz = kFreq7gHz;
  AntennaPattern east, west;
  east.boresight_deg = 0;
  west.boresight_deg = 180;
  auto me = simulate_directional(b, tx, params, east, masks);
  auto mw = simulate_directional(b, tx, params, west, masks);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) REQUIRE(me.values.at(r, c) == mw.values.at(r, mirror_c(c)));
}

TEST_CASE("simulate_coverage: shape mismatch fails") {
  auto s = empty_scene(32);
  auto other = empty_scene(16);
  PropagationParams params;
  CHECK_THROWS_AS(simulate_coverage(s.b, s.tx, params, other.masks), Error);
}
