#pragma once

#include <string>

#include "acsweep/grid.hpp"

namespace acsweep {

// Sidecar metadata of a field snapshot.
struct SnapshotMeta {
  int dim = 2;
  int M = 0;
  double L = 0.0;
  double time = 0.0;
  std::string scheme;
  std::string potential;
};

// Snapshot format: <base>.f64 holds raw little-endian 64-bit floats in
// row-major order; <base>.json is the metadata sidecar.
void save_snapshot(const std::string& base, const Field& f, const SnapshotMeta& meta);
Field load_snapshot(const std::string& base, SnapshotMeta* meta = nullptr);
bool snapshot_exists(const std::string& base);

} // namespace acsweep
