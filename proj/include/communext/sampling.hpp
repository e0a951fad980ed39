#pragma once

#include <cstdint>
#include <string>

#include "communext/geometry.hpp"
#include "communext/propagation.hpp"

namespace communext {

enum class BlendOverlapPolicy : uint8_t {
  average_prioritized,  // mean over contributors >= -90 dBm when any exist, else mean of all
  keep_max,
};

struct SparseMap {
  SignalMap values;      // src values at sampled cells, -160 dBm elsewhere
  GridU8 sample_mask;    // 1 at sampled cells

  int sample_count() const {
    int n = 0;
    for (uint8_t v : sample_mask.data) n += v;
    return n;
  }
};

// n cells drawn uniformly without replacement over all pixels.
SparseMap sample_random(const SignalMap& src, int n, uint64_t seed);

// floor(gamma*n) cells from the NLoS pool, the remainder from the LoS pool.
// When a pool is smaller than its quota the shortfall spills to the other
// pool; total sampled is always exactly n. NLoS cells are drawn first.
SparseMap sample_nlos_guided(const SignalMap& src, const MaskMap& masks, int n, double gamma,
                             uint64_t seed);

// NLoS-guided seeds expanded to their 8 neighbors (nine-patch copy, clipped
// at the boundary). Cells written by several seeds resolve per `policy`.
// Building cells are forced to -160 dBm; untouched cells stay -160 dBm.
SignalMap blend_map(const SignalMap& src, const BuildingMap& b, const MaskMap& masks, int n,
                    double gamma, uint64_t seed,
                    BlendOverlapPolicy policy = BlendOverlapPolicy::average_prioritized);

// All non-building pixels of the 10 sliding 10x10 blocks with the highest
// NLoS ratio (ties broken by row-major block origin), topped up with uniform
// draws outside the selected blocks until exactly n cells are sampled.
SparseMap block_map(const SignalMap& src, const BuildingMap& b, const MaskMap& masks, int n,
                    uint64_t seed);

inline constexpr int kBlockSide = 10;
inline constexpr int kBlockCount = 10;

// Number of sliding kBlockSide x kBlockSide windows in a rows x cols grid.
inline int sliding_block_count(int rows, int cols) {
  return (rows - kBlockSide + 1) * (cols - kBlockSide + 1);
}

const char* to_string(BlendOverlapPolicy policy);
BlendOverlapPolicy blend_policy_from_string(const std::string& name);

}  // namespace communext
