#include "compdiff/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace compdiff {

namespace {

EnergyRecord record_of(const State& s) {
    return EnergyRecord{s.t, energy(s.u), energy(s.v), total_mass(s.u), total_mass(s.v)};
}

std::string format17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Trajectory run(const SimConfig& cfg) {
    cfg.params.validate();
    const Grid g(cfg.n);
    const double dt = cfg.time.dt;
    const long total_steps = std::max(1L, std::lround(cfg.time.t_end / dt));

    // requested snapshot times -> nearest completed step, kept sorted
    std::vector<long> snap_steps;
    snap_steps.reserve(cfg.time.snapshot_times.size());
    for (double ts : cfg.time.snapshot_times) {
        snap_steps.push_back(std::clamp(std::lround(ts / dt), 0L, total_steps));
    }
    std::sort(snap_steps.begin(), snap_steps.end());

    Trajectory traj;
    auto [u0, v0] = cfg.coefficients.sample_initial(g);
    cfg.coefficients.sample_K(g, 0.0);
    cfg.coefficients.sample_r(g, 0.0, &traj.growth_touched_zero);

    // stationary coefficients are sampled once, not re-evaluated per step
    const bool stationary = cfg.coefficients.stationary();
    const ScalarField K_cached = stationary ? cfg.coefficients.sample_K(g, 0.0) : ScalarField(g);
    const ScalarField r_cached = stationary ? cfg.coefficients.sample_r(g, 0.0) : ScalarField(g);

    State state{std::move(u0), std::move(v0), 0.0};
    traj.records.push_back(record_of(state));

    std::size_t next_snap = 0;
    while (next_snap < snap_steps.size() && snap_steps[next_snap] == 0) {
        traj.snapshots.push_back(Snapshot{0.0, state.u, state.v});
        ++next_snap;
    }

    for (long n = 0; n < total_steps; ++n) {
        try {
            state = stationary
                        ? step_sampled(state, K_cached, r_cached, cfg.params, dt, cfg.solver)
                        : step(state, cfg.coefficients, cfg.params, dt, cfg.solver);
        } catch (const NumericError& e) {
            std::ostringstream msg;
            msg << e.what() << " (at step " << n + 1 << ", t=" << (n + 1) * dt << ")";
            throw NumericError(msg.str());
        }
        state.t = (n + 1) * dt;  // avoid accumulating additions

        const long completed = n + 1;
        if (completed % cfg.time.record_every == 0 || completed == total_steps) {
            traj.records.push_back(record_of(state));
        }
        while (next_snap < snap_steps.size() && snap_steps[next_snap] == completed) {
            traj.snapshots.push_back(Snapshot{state.t, state.u, state.v});
            ++next_snap;
        }
    }

    if (!cfg.output.dir.empty()) {
        write_outputs(traj, cfg.output.dir);
    }
    return traj;
}

void write_energy_csv(const Trajectory& traj, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    out << "t,energy_u,energy_v,mass_u,mass_v\n";
    for (const EnergyRecord& r : traj.records) {
        out << format17(r.t) << ',' << format17(r.energy_u) << ',' << format17(r.energy_v) << ','
            << format17(r.mass_u) << ',' << format17(r.mass_v) << '\n';
    }
    if (!out) {
        throw ConfigError("failed writing " + path.string());
    }
}

void write_snapshot(const Trajectory& traj, std::size_t index, Species field,
                    const std::filesystem::path& path) {
    if (index >= traj.snapshots.size()) {
        throw ConfigError("snapshot index " + std::to_string(index) + " out of range (have " +
                          std::to_string(traj.snapshots.size()) + ")");
    }
    const Snapshot& snap = traj.snapshots[index];
    const ScalarField& f = field == Species::U ? snap.u : snap.v;
    const int n = f.grid.n;

    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    out << "# t=" << format17(snap.t) << " n=" << n << " field="
        << (field == Species::U ? 'u' : 'v') << '\n';
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (i) out << ',';
            out << format17(f.at(i, j));
        }
        out << '\n';
    }
    if (!out) {
        throw ConfigError("failed writing " + path.string());
    }
}

void write_outputs(const Trajectory& traj, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_energy_csv(traj, dir / "energy.csv");
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        write_snapshot(traj, k, Species::U, dir / ("snapshot_u_" + std::to_string(k) + ".csv"));
        write_snapshot(traj, k, Species::V, dir / ("snapshot_v_" + std::to_string(k) + ".csv"));
    }
}

}  // namespace compdiff
