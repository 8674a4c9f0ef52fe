#pragma once

#include <string>

#include "hydrostat/state.hpp"

namespace hydrostat {

struct SnapshotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed-layout little-endian binary state container:
///   magic "HYSNAP01" (8 bytes)
///   u32 version (currently 1)
///   i32 nx, ny, nz
///   f64 h, R1, R2, R3, f0, epsilon, time
///   u8 parity tag per field (v1, v2, T): 0 = even, 1 = odd
///   3 blocks of nx*ny*nz complex128 coefficients (v1, v2, T)
///   u32 CRC-32 of all preceding bytes
/// Round trips are bit-exact; any mismatch (magic, version, size, checksum)
/// raises SnapshotError and no partial state is returned.
void write_snapshot(const std::string& path, const State& state);
State read_snapshot(const std::string& path);

} // namespace hydrostat
