#include "acsweep/snapshot.hpp"

#include <bit>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace acsweep {

using nlohmann::json;

void save_snapshot(const std::string& base, const Field& f, const SnapshotMeta& meta) {
  {
    std::ofstream raw(base + ".f64", std::ios::binary | std::ios::trunc);
    if (!raw) throw std::runtime_error("cannot write " + base + ".f64");
    raw.write(reinterpret_cast<const char*>(f.data.data()),
              static_cast<std::streamsize>(f.data.size() * sizeof(double)));
    if (!raw) throw std::runtime_error("short write to " + base + ".f64");
  }
  json j;
  j["dim"] = meta.dim;
  j["M"] = meta.M;
  j["L"] = meta.L;
  j["time"] = meta.time;
  j["scheme"] = meta.scheme;
  j["potential"] = meta.potential;
  std::ofstream side(base + ".json", std::ios::trunc);
  if (!side) throw std::runtime_error("cannot write " + base + ".json");
  side << j.dump(2) << '\n';
}

Field load_snapshot(const std::string& base, SnapshotMeta* meta_out) {
  std::ifstream side(base + ".json");
  if (!side) throw std::runtime_error("cannot open " + base + ".json");
  json j;
  side >> j;
  SnapshotMeta meta;
  meta.dim = j.at("dim").get<int>();
  meta.M = j.at("M").get<int>();
  meta.L = j.at("L").get<double>();
  meta.time = j.at("time").get<double>();
  meta.scheme = j.at("scheme").get<std::string>();
  meta.potential = j.at("potential").get<std::string>();

  Field f{Grid(meta.dim, meta.M, meta.L)};
  std::ifstream raw(base + ".f64", std::ios::binary);
  if (!raw) throw std::runtime_error("cannot open " + base + ".f64");
  raw.read(reinterpret_cast<char*>(f.data.data()),
           static_cast<std::streamsize>(f.data.size() * sizeof(double)));
  if (raw.gcount() != static_cast<std::streamsize>(f.data.size() * sizeof(double)))
    throw std::runtime_error("snapshot " + base + ".f64 is shorter than M^dim doubles");
  if (meta_out) *meta_out = meta;
  return f;
}

bool snapshot_exists(const std::string& base) {
  return std::filesystem::exists(base + ".f64") && std::filesystem::exists(base + ".json");
}

} // namespace acsweep
