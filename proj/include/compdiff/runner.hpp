#pragma once

#include "compdiff/analysis.hpp"
#include "compdiff/config.hpp"
#include "compdiff/trajectory.hpp"

namespace compdiff {

// Samples the initial fields at t=0, takes round(t_end/dt) implicit steps,
// records energies and masses every record_every steps (plus the initial
// and final states), and captures snapshots at the completed step nearest
// each requested time. When output.dir is set, writes energy.csv and the
// snapshot files there. Stepper failures carry the failing step and time.
Trajectory run(const SimConfig& cfg);

// "t,energy_u,energy_v,mass_u,mass_v" header plus one row per record, 17
// significant digits.
void write_energy_csv(const Trajectory& traj, const std::filesystem::path& path);

// One field of one snapshot: "# t=<time> n=<n> field=<u|v>" then n rows of
// n comma-separated values; row j holds y = j*h, column i holds x = i*h.
void write_snapshot(const Trajectory& traj, std::size_t index, Species field,
                    const std::filesystem::path& path);

void write_outputs(const Trajectory& traj, const std::filesystem::path& dir);

}  // namespace compdiff
