#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relaysim/channel.hpp"
#include "relaysim/metrics.hpp"
#include "relaysim/rates.hpp"
#include "relaysim/scheduler.hpp"

namespace relaysim {

// One complete simulation setup. `policies` lists the schedulers to compare;
// each one is run separately over the same seeds, observing identical channel
// realizations (the channel depends only on seed and slot index).
struct ScenarioConfig {
    SystemConfig system;
    Topology topology;
    ChannelParams channel;
    std::vector<SchedulerPolicy> policies = {SchedulerPolicy::RelayVariance,
                                             SchedulerPolicy::RelayMaxSnr};
    int num_slots = 1000;
    std::vector<std::uint64_t> seeds;
    bool multi_round = false;
};

// Compact per-slot view of an Allocation.
struct AllocationDigest {
    int direct_users = 0;
    int relay_users = 0;
    int unserved_users = 0;
    int hop1_subchannels = 0;       // sub-slot 1 assignments committed
    int hop2_subchannels = 0;       // sub-slot 2 assignments committed
    double assigned_snr_sum = 0.0;  // sum of the SNRs behind every committed entry
};

struct SlotRecord {
    int slot = 0;
    AllocationDigest digest;
    SlotRates rates;
    double jain_users_inst = 0.0;  // over the moving averages after this slot's update
};

struct RunResult {
    std::vector<SlotRecord> slots;
    RateState final_state;
    RunSummary summary;
};

struct RunOptions {
    bool verify_constraints = false;  // assert C1-C3 on every slot's allocation
    // When set, every slot observes this fixed realization instead of drawing
    // one; used to drive hand-crafted fixtures through the full pipeline.
    const ChannelRealization* fixed_realization = nullptr;
};

// Simulates num_slots slots under one policy and seed. Deterministic: the
// result is a pure function of the arguments.
RunResult run(const ScenarioConfig& scenario, SchedulerPolicy policy, std::uint64_t seed,
              const RunOptions& options = {});

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;  // population
};

struct SummaryAggregate {
    MeanStd mean_capacity;
    MeanStd cumulative_capacity;
    MeanStd jain_users;
    MeanStd jain_relays;
    int num_seeds = 0;
};

struct BatchResult {
    std::vector<RunResult> runs;  // one per seed, in seed order
    SummaryAggregate aggregate;
};

// Runs every seed in the scenario under one policy and aggregates the
// run summaries across seeds.
BatchResult run_batch(const ScenarioConfig& scenario, SchedulerPolicy policy,
                      const RunOptions& options = {});

enum class SweepAxis { Relays, Users };

struct SweepRow {
    SweepAxis axis = SweepAxis::Relays;
    int value = 0;
    SchedulerPolicy policy = SchedulerPolicy::RelayVariance;
    SummaryAggregate aggregate;
};

// Re-runs the batch for every axis value and every scenario policy; one row
// per (value, policy).
std::vector<SweepRow> sweep(const ScenarioConfig& scenario, SweepAxis axis,
                            std::span<const int> values, const RunOptions& options = {});

const char* sweep_axis_name(SweepAxis axis);

}  // namespace relaysim
