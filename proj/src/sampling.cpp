#include "communext/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "communext/error.hpp"
#include "communext/rng.hpp"
#include "communext/strutil.hpp"

namespace communext {

namespace {

SparseMap sparse_from_indices(const SignalMap& src, const std::vector<int>& indices) {
  SparseMap out;
  out.values.values = GridF(src.rows(), src.cols(), kFloorDbm);
  out.values.band = src.band;
  out.values.direction_deg = src.direction_deg;
  out.sample_mask = GridU8(src.rows(), src.cols(), 0);
  for (int i : indices) {
    out.values.values[static_cast<size_t>(i)] = src.values[static_cast<size_t>(i)];
    out.sample_mask[static_cast<size_t>(i)] = 1;
  }
  return out;
}

std::vector<int> class_indices(const MaskMap& masks, CellClass k) {
  std::vector<int> v;
  for (size_t i = 0; i < masks.classes.size(); ++i)
    if (masks.classes[i] == static_cast<uint8_t>(k)) v.push_back(static_cast<int>(i));
  return v;
}

// floor(gamma*n) from the NLoS pool, remainder from LoS, with spillover.
// NLoS draws happen first so a fixed seed pins both subsets.
std::vector<int> nlos_guided_indices(const MaskMap& masks, int n, double gamma, Rng& rng) {
  require(gamma >= 0.0 && gamma <= 1.0, ErrorKind::invalid_argument, "gamma must be in [0,1]");
  auto nlos_pool = class_indices(masks, CellClass::nlos);
  auto los_pool = class_indices(masks, CellClass::los);
  require(n >= 0, ErrorKind::invalid_argument, "sample count must be >= 0");
  require(static_cast<size_t>(n) <= nlos_pool.size() + los_pool.size(),
          ErrorKind::invalid_argument,
          str_format("%d samples exceed the %zu non-building pixels", n,
                     nlos_pool.size() + los_pool.size()));

  size_t want_nlos = static_cast<size_t>(std::floor(gamma * n));
  size_t take_nlos = std::min(want_nlos, nlos_pool.size());
  size_t take_los = std::min(static_cast<size_t>(n) - take_nlos, los_pool.size());
  take_nlos = std::min(nlos_pool.size(), static_cast<size_t>(n) - take_los);

  auto picked = draw_without_replacement(std::move(nlos_pool), take_nlos, rng);
  auto los_picked = draw_without_replacement(std::move(los_pool), take_los, rng);
  picked.insert(picked.end(), los_picked.begin(), los_picked.end());
  return picked;
}

}  // namespace

SparseMap sample_random(const SignalMap& src, int n, uint64_t seed) {
  const auto total = static_cast<int64_t>(src.rows()) * src.cols();
  require(n >= 0 && n <= total, ErrorKind::invalid_argument,
          str_format("cannot sample %d of %lld pixels", n, static_cast<long long>(total)));
  std::vector<int> all(static_cast<size_t>(total));
  for (int64_t i = 0; i < total; ++i) all[static_cast<size_t>(i)] = static_cast<int>(i);
  Rng rng(seed);
  return sparse_from_indices(src, draw_without_replacement(std::move(all), n, rng));
}

SparseMap sample_nlos_guided(const SignalMap& src, const MaskMap& masks, int n, double gamma,
                             uint64_t seed) {
  require(src.rows() == masks.classes.rows && src.cols() == masks.classes.cols,
          ErrorKind::invalid_argument, "signal map and masks shapes differ");
  Rng rng(seed);
  return sparse_from_indices(src, nlos_guided_indices(masks, n, gamma, rng));
}

SignalMap blend_map(const SignalMap& src, const BuildingMap& b, const MaskMap& masks, int n,
                    double gamma, uint64_t seed, BlendOverlapPolicy policy) {
  require(src.rows() == b.rows() && src.cols() == b.cols(), ErrorKind::invalid_argument,
          "signal map and building map shapes differ");
  Rng rng(seed);
  const auto seeds = nlos_guided_indices(masks, n, gamma, rng);
  const int rows = src.rows(), cols = src.cols();
  const size_t total = src.values.size();

  std::vector<double> sum_all(total, 0.0), sum_hi(total, 0.0);
  std::vector<int> cnt_all(total, 0), cnt_hi(total, 0);
  std::vector<float> best(total, kFloorDbm);
  for (int s : seeds) {
    const int sr = s / cols, sc = s % cols;
    const float v = src.values[static_cast<size_t>(s)];
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int r = sr + dr, c = sc + dc;
        if (r < 0 || r >= rows || c < 0 || c >= cols) continue;
        const size_t i = static_cast<size_t>(r) * cols + c;
        sum_all[i] += v;
        cnt_all[i] += 1;
        if (v >= kCommunicableDbm) {
          sum_hi[i] += v;
          cnt_hi[i] += 1;
        }
        best[i] = std::max(best[i], v);
      }
    }
  }

  SignalMap out;
  out.values = GridF(rows, cols, kFloorDbm);
  out.band = src.band;
  out.direction_deg = src.direction_deg;
  for (size_t i = 0; i < total; ++i) {
    if (b.heights[i] > 0.0f || cnt_all[i] == 0) continue;
    if (policy == BlendOverlapPolicy::keep_max) {
      out.values[i] = best[i];
    } else {
      out.values[i] = static_cast<float>(cnt_hi[i] > 0 ? sum_hi[i] / cnt_hi[i]
                                                       : sum_all[i] / cnt_all[i]);
    }
  }
  return out;
}

SparseMap block_map(const SignalMap& src, const BuildingMap& b, const MaskMap& masks, int n,
                    uint64_t seed) {
  const int rows = src.rows(), cols = src.cols();
  require(rows >= kBlockSide && cols >= kBlockSide, ErrorKind::invalid_argument,
          "grid smaller than the sliding block");
  require(n >= kBlockCount * kBlockSide * kBlockSide, ErrorKind::invalid_argument,
          str_format("block strategy needs n >= %d", kBlockCount * kBlockSide * kBlockSide));

  int64_t non_building = 0;
  for (float h : b.heights.data) non_building += h > 0.0f ? 0 : 1;
  require(n <= non_building, ErrorKind::invalid_argument,
          str_format("fewer than %d non-building pixels in the map", n));

  // NLoS counts per window via a prefix-sum table.
  std::vector<int> prefix(static_cast<size_t>(rows + 1) * (cols + 1), 0);
  auto pref = [&](int r, int c) -> int& { return prefix[static_cast<size_t>(r) * (cols + 1) + c]; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      pref(r + 1, c + 1) = pref(r, c + 1) + pref(r + 1, c) - pref(r, c) +
                           (masks.is(r, c, CellClass::nlos) ? 1 : 0);

  struct Candidate {
    int score;
    int origin;  // row-major window origin index
  };
  std::vector<Candidate> candidates;
  candidates.reserve(static_cast<size_t>(sliding_block_count(rows, cols)));
  for (int r = 0; r + kBlockSide <= rows; ++r) {
    for (int c = 0; c + kBlockSide <= cols; ++c) {
      int score = pref(r + kBlockSide, c + kBlockSide) - pref(r, c + kBlockSide) -
                  pref(r + kBlockSide, c) + pref(r, c);
      candidates.push_back({score, r * cols + c});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.score != b.score ? a.score > b.score : a.origin < b.origin;
  });

  GridU8 in_block(rows, cols, 0);
  std::vector<int> indices;
  const int top = std::min<int>(kBlockCount, static_cast<int>(candidates.size()));
  for (int k = 0; k < top; ++k) {
    const int orow = candidates[static_cast<size_t>(k)].origin / cols;
    const int ocol = candidates[static_cast<size_t>(k)].origin % cols;
    for (int r = orow; r < orow + kBlockSide; ++r) {
      for (int c = ocol; c < ocol + kBlockSide; ++c) {
        if (in_block.at(r, c)) continue;  // overlapping blocks deduplicate
        in_block.at(r, c) = 1;
        if (b.heights.at(r, c) == 0.0f) indices.push_back(r * cols + c);
      }
    }
  }

  // Top up outside the selected blocks to restore the exact budget.
  std::vector<int> pool;
  for (int i = 0; i < rows * cols; ++i)
    if (!in_block[static_cast<size_t>(i)] && b.heights[static_cast<size_t>(i)] == 0.0f)
      pool.push_back(i);
  const auto needed = static_cast<size_t>(n) - indices.size();
  require(needed <= pool.size(), ErrorKind::invalid_argument,
          "not enough non-building pixels outside the selected blocks");
  Rng rng(seed);
  auto extra = draw_without_replacement(std::move(pool), needed, rng);
  indices.insert(indices.end(), extra.begin(), extra.end());
  return sparse_from_indices(src, indices);
}

const char* to_string(BlendOverlapPolicy policy) {
  return policy == BlendOverlapPolicy::keep_max ? "keep_max" : "average_prioritized";
}

BlendOverlapPolicy blend_policy_from_string(const std::string& name) {
  if (name == "keep_max") return BlendOverlapPolicy::keep_max;
  if (name == "average_prioritized") return BlendOverlapPolicy::average_prioritized;
  fail(ErrorKind::config, "unknown blend overlap policy: " + name);
}

}  // namespace communext
