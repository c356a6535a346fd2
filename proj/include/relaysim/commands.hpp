#pragma once

#include <string>
#include <vector>

#include "relaysim/scenario.hpp"
#include "relaysim/sim.hpp"

namespace relaysim {

// Shared flags of the run and sweep commands. Optional string fields use ""
// for "not given" and override the scenario file when set.
struct RunFlags {
    std::string config_path;  // "" keeps default_scenario()
    std::string policy;       // "variance" | "maxsnr" | "both"
    int num_slots = 0;        // 0 keeps the scenario value
    std::string seed_spec;    // "" keeps the scenario value
    std::string out_dir = ".";
    bool verify = false;      // re-check constraints on every produced slot
};

struct SweepFlags {
    RunFlags base;
    std::string axis;         // "relays" | "users"
    std::vector<int> values;
};

// Runs the configured scenario for every (policy, seed) pair and writes
// per_slot.csv, summary.json into out_dir. Returns a process exit code and
// prints a one-line result per policy to stdout.
int cmd_run(const RunFlags& flags);

// Sweeps relay or user count and writes sweep.csv into out_dir.
int cmd_sweep(const SweepFlags& flags);

// Prints the worked two-user example used to cross-check the scheduler math:
// per-user variance metrics and the per-policy capacity sums of the
// hand-solved allocation. Exit code 0 iff the recomputed numbers match.
int cmd_oracle();

}  // namespace relaysim
