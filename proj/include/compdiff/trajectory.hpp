#pragma once

#include <vector>

#include "compdiff/grid.hpp"

namespace compdiff {

struct EnergyRecord {
    double t = 0.0;
    double energy_u = 0.0;
    double energy_v = 0.0;
    double mass_u = 0.0;
    double mass_v = 0.0;
};

struct Snapshot {
    double t = 0.0;
    ScalarField u;
    ScalarField v;
};

// Recorded output of one simulation: energy/mass series (strictly increasing
// in t, first record at t=0) plus any requested field snapshots.
struct Trajectory {
    std::vector<EnergyRecord> records;
    std::vector<Snapshot> snapshots;
    bool growth_touched_zero = false;  // min r == 0 was seen while sampling
};

}  // namespace compdiff
