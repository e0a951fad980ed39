#include "communext/dataset.hpp"

#include <algorithm>
#include <set>

#include "communext/binio.hpp"
#include "communext/error.hpp"
#include "communext/rng.hpp"
#include "communext/strutil.hpp"

namespace communext {

std::string dir_plane_name(int angle_deg) { return str_format("sd%d", angle_deg); }
std::string sparse_dir_plane_name(int angle_deg) { return str_format("sp7_d%d", angle_deg); }

namespace {

bool shape_ok(int rows, int cols) {
  return is_power_of_two(rows) && is_power_of_two(cols) && rows >= 32 && rows <= 128 &&
         cols >= 32 && cols <= 128;
}

std::optional<std::string> check_signal_grid(const std::string& name, const GridF& g,
                                             const GridF& building) {
  if (!g.same_shape(building)) return name + ": shape mismatch";
  for (size_t i = 0; i < g.size(); ++i) {
    if (g[i] < kFloorDbm) return name + ": value below -160 dBm floor";
    if (building[i] > 0.0f && g[i] != kFloorDbm)
      return name + ": building-interior pixel not at the -160 dBm sentinel";
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> validate_sample(const Sample& s) {
  if (s.building.empty()) return "missing building map";
  if (!shape_ok(s.building.rows, s.building.cols))
    return str_format("grid %dx%d is not a power of two in [32,128]", s.building.rows,
                      s.building.cols);
  for (float h : s.building.data)
    if (h < 0.0f) return "negative building height";

  if (s.mask_classes.empty()) return "missing mask map";
  if (!s.mask_classes.same_shape(GridU8(s.building.rows, s.building.cols)))
    return "mask: shape mismatch";
  for (size_t i = 0; i < s.mask_classes.size(); ++i) {
    if (s.mask_classes[i] > static_cast<uint8_t>(CellClass::building))
      return "mask: invalid class value";
    bool is_building = s.mask_classes[i] == static_cast<uint8_t>(CellClass::building);
    if (is_building != (s.building[i] > 0.0f))
      return "mask: building class does not match the building map";
  }

  if (s.coverage.empty()) return "missing coverage map";
  if (auto err = check_signal_grid(kPlaneCoverage, s.coverage, s.building)) return err;

  for (int i = 0; i < kNumDirections; ++i) {
    const auto name = dir_plane_name(kCanonicalDirections[i]);
    if (s.directions[static_cast<size_t>(i)].empty()) return "missing direction " + name;
    if (auto err = check_signal_grid(name, s.directions[static_cast<size_t>(i)], s.building))
      return err;
  }

  for (const auto& [name, g] : s.sparse_values) {
    if (auto err = check_signal_grid(name, g, s.building)) return err;
    auto it = s.sparse_masks.find(name);
    if (it != s.sparse_masks.end()) {
      if (!it->second.same_shape(s.mask_classes)) return name + kMaskSuffix + ": shape mismatch";
      for (size_t i = 0; i < g.size(); ++i)
        if (!it->second[i] && g[i] != kFloorDbm)
          return name + ": unsampled cell not at the -160 dBm sentinel";
    }
  }

  if (!s.building.in_bounds(s.tx.row, s.tx.col)) return "tx outside the grid";
  if (s.building.at(s.tx.row, s.tx.col) > 0.0f) return "tx on a building cell";
  return std::nullopt;
}

SplitResult split(const std::vector<Sample>& samples, const SplitSpec& spec) {
  require(spec.train + spec.val + spec.test == 10, ErrorKind::invalid_argument,
          "split ratios must sum to 10");
  std::map<std::string, std::vector<int>> groups;
  for (size_t i = 0; i < samples.size(); ++i)
    groups[samples[i].parent_id].push_back(static_cast<int>(i));
  require(groups.size() >= 10, ErrorKind::invalid_argument,
          str_format("need >= 10 distinct parent ids, got %zu", groups.size()));

  std::vector<std::string> parents;
  parents.reserve(groups.size());
  for (const auto& [pid, _] : groups) parents.push_back(pid);  // sorted by map order
  Rng rng(spec.seed);
  shuffle(parents, rng);

  // Largest-remainder allocation of whole groups to the three splits.
  const auto g = static_cast<double>(parents.size());
  const std::array<double, 3> ideal = {g * spec.train / 10.0, g * spec.val / 10.0,
                                       g * spec.test / 10.0};
  std::array<size_t, 3> quota;
  std::array<std::pair<double, int>, 3> rem;
  size_t assigned = 0;
  for (int k = 0; k < 3; ++k) {
    quota[static_cast<size_t>(k)] = static_cast<size_t>(ideal[static_cast<size_t>(k)]);
    assigned += quota[static_cast<size_t>(k)];
    rem[static_cast<size_t>(k)] = {ideal[static_cast<size_t>(k)] -
                                       static_cast<double>(quota[static_cast<size_t>(k)]),
                                   k};
  }
  std::stable_sort(rem.begin(), rem.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (size_t leftover = parents.size() - assigned, k = 0; leftover > 0; --leftover, ++k)
    quota[static_cast<size_t>(rem[k % 3].second)] += 1;

  SplitResult out;
  size_t cursor = 0;
  auto take = [&](std::vector<int>& dst, size_t count) {
    for (size_t k = 0; k < count; ++k, ++cursor)
      for (int idx : groups[parents[cursor]]) dst.push_back(idx);
  };
  take(out.train, quota[0]);
  take(out.val, quota[1]);
  take(out.test, quota[2]);
  return out;
}

namespace {

void write_sample(ByteWriter& w, const Sample& s) {
  ByteWriter rec;
  rec.str(s.id);
  rec.str(s.parent_id);
  rec.f32(s.resolution);
  rec.i32(s.tx.row);
  rec.i32(s.tx.col);
  rec.f32(s.tx.height);
  rec.f32(s.tx.gain_3g5);
  rec.f32(s.tx.gain_7g);
  rec.str(s.seeds.is_null() ? "{}" : s.seeds.dump());

  uint16_t planes = 0;
  planes += s.building.empty() ? 0 : 1;
  planes += s.mask_classes.empty() ? 0 : 1;
  planes += s.coverage.empty() ? 0 : 1;
  for (const auto& g : s.directions) planes += g.empty() ? 0 : 1;
  planes += static_cast<uint16_t>(s.sparse_values.size() + s.sparse_masks.size());
  rec.u16(planes);

  auto put_f32 = [&rec](const std::string& name, const GridF& g) {
    rec.str(name);
    rec.u8(0);
    rec.grid_f32(g);
  };
  auto put_u8 = [&rec](const std::string& name, const GridU8& g) {
    rec.str(name);
    rec.u8(1);
    rec.grid_u8(g);
  };
  if (!s.building.empty()) put_f32(kPlaneBuilding, s.building);
  if (!s.mask_classes.empty()) put_u8(kPlaneMask, s.mask_classes);
  if (!s.coverage.empty()) put_f32(kPlaneCoverage, s.coverage);
  for (int i = 0; i < kNumDirections; ++i)
    if (!s.directions[static_cast<size_t>(i)].empty())
      put_f32(dir_plane_name(kCanonicalDirections[i]), s.directions[static_cast<size_t>(i)]);
  for (const auto& [name, g] : s.sparse_values) put_f32(name, g);
  for (const auto& [name, g] : s.sparse_masks) put_u8(name + kMaskSuffix, g);

  w.u64(rec.buf.size());
  w.raw(rec.buf.data(), rec.buf.size());
}

Sample read_sample(ByteReader& r) {
  Sample s;
  s.id = r.str("sample id");
  s.parent_id = r.str("parent id");
  s.resolution = r.f32("resolution");
  s.tx.row = r.i32("tx row");
  s.tx.col = r.i32("tx col");
  s.tx.height = r.f32("tx height");
  s.tx.gain_3g5 = r.f32("tx gain 3.5");
  s.tx.gain_7g = r.f32("tx gain 7");
  s.seeds = json::parse(r.str("seed record"));

  const uint16_t planes = r.u16("plane count");
  for (uint16_t p = 0; p < planes; ++p) {
    const std::string name = r.str("plane name");
    const uint8_t dtype = r.u8("plane dtype");
    if (dtype == 0) {
      GridF g = r.grid_f32(name.c_str());
      if (name == kPlaneBuilding) {
        s.building = std::move(g);
      } else if (name == kPlaneCoverage) {
        s.coverage = std::move(g);
      } else {
        bool placed = false;
        for (int i = 0; i < kNumDirections; ++i)
          if (name == dir_plane_name(kCanonicalDirections[i])) {
            s.directions[static_cast<size_t>(i)] = std::move(g);
            placed = true;
            break;
          }
        if (!placed) s.sparse_values[name] = std::move(g);
      }
    } else if (dtype == 1) {
      GridU8 g = r.grid_u8(name.c_str());
      if (name == kPlaneMask) {
        s.mask_classes = std::move(g);
      } else if (name.size() > kMaskSuffix.size() &&
                 name.compare(name.size() - kMaskSuffix.size(), kMaskSuffix.size(),
                              kMaskSuffix) == 0) {
        s.sparse_masks[name.substr(0, name.size() - kMaskSuffix.size())] = std::move(g);
      } else {
        fail(ErrorKind::io, "unknown u8 plane: " + name);
      }
    } else {
      fail(ErrorKind::io, str_format("unknown plane dtype %u at offset %zu", dtype, r.pos));
    }
  }
  return s;
}

}  // namespace

json write_dataset(const std::vector<Sample>& samples, const std::string& path,
                   json manifest_extra, bool validate) {
  if (validate) {
    for (size_t i = 0; i < samples.size(); ++i)
      if (auto err = validate_sample(samples[i]))
        fail(ErrorKind::invalid_argument,
             str_format("sample %zu (%s) invalid: %s", i, samples[i].id.c_str(), err->c_str()));
  }

  json manifest = std::move(manifest_extra);
  manifest["format"] = "CUXD";
  manifest["version"] = kDatasetVersion;
  manifest["sample_count"] = samples.size();
  if (!samples.empty()) {
    manifest["rows"] = samples.front().building.rows;
    manifest["cols"] = samples.front().building.cols;
  }
  std::set<std::string> parents;
  for (const auto& s : samples) parents.insert(s.parent_id);
  manifest["parent_count"] = parents.size();

  ByteWriter w;
  w.raw(kDatasetMagic, 4);
  w.u8(kDatasetVersion);
  w.u32(static_cast<uint32_t>(samples.size()));
  for (const auto& s : samples) write_sample(w, s);
  const std::string m = manifest.dump(2);
  w.u64(m.size());
  w.raw(m.data(), m.size());
  write_file(path, w.buf);
  return manifest;
}

std::vector<Sample> read_dataset(const std::string& path, json* manifest_out) {
  const std::string bytes = read_file(path);
  ByteReader r(bytes.data(), bytes.size());
  char magic[4];
  r.raw(magic, 4, "magic");
  require(std::memcmp(magic, kDatasetMagic, 4) == 0, ErrorKind::io,
          "bad magic at offset 0: not a CUXD container: " + path);
  const uint8_t version = r.u8("version");
  require(version == kDatasetVersion, ErrorKind::io,
          str_format("unsupported CUXD version %u", version));
  const uint32_t count = r.u32("sample count");

  std::vector<Sample> samples;
  samples.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    const uint64_t len = r.u64("record length");
    r.need(len, "sample record");
    ByteReader rec(r.base + r.pos, len);
    samples.push_back(read_sample(rec));
    require(rec.pos == len, ErrorKind::io,
            str_format("record %u has %zu trailing bytes at offset %zu", i, len - rec.pos,
                       r.pos + rec.pos));
    r.pos += len;
  }
  const uint64_t mlen = r.u64("manifest length");
  r.need(mlen, "manifest");
  json manifest = json::parse(std::string(reinterpret_cast<const char*>(r.base + r.pos), mlen));
  r.pos += mlen;
  require(r.pos == r.len, ErrorKind::io,
          str_format("%zu trailing bytes after manifest at offset %zu", r.len - r.pos, r.pos));
  require(manifest.value("sample_count", count) == count, ErrorKind::io,
          "manifest sample count disagrees with the container record count");
  if (manifest_out) *manifest_out = std::move(manifest);
  return samples;
}

json read_manifest(const std::string& path) {
  json manifest;
  read_dataset(path, &manifest);
  return manifest;
}

}  // namespace communext
