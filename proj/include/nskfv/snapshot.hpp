#pragma once

#include <string>
#include <vector>

#include "nskfv/timeint.hpp"

namespace nskfv {

/// Binary snapshot format: magic "NSKFSNAP", version, M, N (u32), Lx, Ly, t
/// (f64), field count and names, then one row-major little-endian f64 payload
/// per field (rho, m_x, m_y). Round trips bit-exactly.
void write_snapshot(const FluidState& s, const std::string& path);
FluidState read_snapshot(const std::string& path);

/// Plain-text dump (t, then one `i j rho m_x m_y` row per cell) for small grids.
void write_snapshot_csv(const FluidState& s, const std::string& path);

/// Write snapshots (snap_NNNN.bin) plus ledger.csv into a directory.
void write_run(const Trajectory& traj, const std::string& dir, const std::string& format);

/// Load a directory written by write_run back into a trajectory.
Trajectory read_run(const std::string& dir);

}  // namespace nskfv
