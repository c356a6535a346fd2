#include "relaysim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace relaysim {
namespace {

AllocationDigest digest_of(const Allocation& alloc, const ChannelRealization& chan) {
    AllocationDigest d;
    for (const auto& mode : alloc.mode_of) {
        if (!mode)
            ++d.unserved_users;
        else if (mode->is_relayed())
            ++d.relay_users;
        else
            ++d.direct_users;
    }
    for (const auto& a : alloc.direct) {
        ++(a.subslot == 0 ? d.hop1_subchannels : d.hop2_subchannels);
        d.assigned_snr_sum += chan.direct(a.subchannel, a.user, a.subslot);
    }
    for (const auto& a : alloc.relay_hop1) {
        ++d.hop1_subchannels;
        d.assigned_snr_sum += chan.hop1(a.subchannel, a.relay);
    }
    for (const auto& a : alloc.relay_hop2) {
        ++d.hop2_subchannels;
        d.assigned_snr_sum += chan.hop2(a.subchannel, a.relay, a.user);
    }
    return d;
}

MeanStd mean_std(std::span<const double> values) {
    MeanStd ms;
    if (values.empty()) return ms;
    ms.mean = std::accumulate(values.begin(), values.end(), 0.0) /
              static_cast<double>(values.size());
    double sq = 0.0;
    for (double x : values) sq += (x - ms.mean) * (x - ms.mean);
    ms.stddev = std::sqrt(sq / static_cast<double>(values.size()));
    return ms;
}

SummaryAggregate aggregate_runs(std::span<const RunResult> runs) {
    std::vector<double> mean_cap, cum_cap, jain_u, jain_r;
    for (const auto& r : runs) {
        mean_cap.push_back(r.summary.mean_system_capacity);
        cum_cap.push_back(r.summary.cumulative_capacity);
        jain_u.push_back(r.summary.jain_users);
        jain_r.push_back(r.summary.jain_relays);
    }
    SummaryAggregate agg;
    agg.mean_capacity = mean_std(mean_cap);
    agg.cumulative_capacity = mean_std(cum_cap);
    agg.jain_users = mean_std(jain_u);
    agg.jain_relays = mean_std(jain_r);
    agg.num_seeds = static_cast<int>(runs.size());
    return agg;
}

}  // namespace

RunResult run(const ScenarioConfig& scenario, SchedulerPolicy policy, std::uint64_t seed,
              const RunOptions& options) {
    if (auto err = validate_config(scenario.system, scenario.topology))
        throw std::domain_error("run: " + *err);
    if (scenario.num_slots < 1) throw std::domain_error("run: num_slots must be at least 1");

    const Topology& topo = scenario.topology;
    const SystemConfig& cfg = scenario.system;
    ChannelParams params = scenario.channel;
    params.seed = seed;

    RunResult result;
    result.slots.reserve(static_cast<std::size_t>(scenario.num_slots));
    result.final_state.avg_rate.assign(static_cast<std::size_t>(topo.num_users), 0.0);
    result.final_state.cumulative_relay_throughput.assign(
        static_cast<std::size_t>(topo.num_relays), 0.0);

    std::vector<double> per_slot_capacity;
    per_slot_capacity.reserve(static_cast<std::size_t>(scenario.num_slots));

    for (int t = 0; t < scenario.num_slots; ++t) {
        const ChannelRealization chan = options.fixed_realization
                                            ? *options.fixed_realization
                                            : draw_channel(params, cfg, topo, t);
        const Allocation alloc = schedule_slot(policy, chan, topo, cfg, scenario.multi_round);
        if (options.verify_constraints) {
            if (auto err = check_allocation(alloc, topo, cfg, !scenario.multi_round))
                throw std::logic_error("slot " + std::to_string(t) + ": " + *err);
        }
        SlotRates rates = compute_slot_rates(alloc, chan, cfg, topo);

        for (UserId m = 0; m < topo.num_users; ++m) {
            const double achieved = rates.direct_rate[m] + rates.effective_rate[m];
            result.final_state.avg_rate[m] =
                update_average(result.final_state.avg_rate[m], achieved, cfg.avg_window);
        }
        for (RelayId k = 0; k < topo.num_relays; ++k) {
            double eff = 0.0;
            for (UserId m = 0; m < topo.num_users; ++m) {
                const std::size_t i = rates.pair_index(k, m);
                eff += std::min(rates.relay_user_hop1[i], rates.relay_user_hop2[i]);
            }
            result.final_state.cumulative_relay_throughput[k] += eff;
        }

        SlotRecord record;
        record.slot = t;
        record.digest = digest_of(alloc, chan);
        record.jain_users_inst = [&] {
            double sum_sq = 0.0, sum = 0.0;
            for (double x : result.final_state.avg_rate) {
                sum += x;
                sum_sq += x * x;
            }
            if (sum_sq <= 0.0) return std::numeric_limits<double>::quiet_NaN();
            return sum * sum / (static_cast<double>(result.final_state.avg_rate.size()) * sum_sq);
        }();
        per_slot_capacity.push_back(rates.system_capacity);
        record.rates = std::move(rates);
        result.slots.push_back(std::move(record));
    }

    result.summary = summarize_run(per_slot_capacity, result.final_state.avg_rate,
                                   result.final_state.cumulative_relay_throughput);
    return result;
}

BatchResult run_batch(const ScenarioConfig& scenario, SchedulerPolicy policy,
                      const RunOptions& options) {
    if (scenario.seeds.empty()) throw std::domain_error("run_batch: no seeds configured");
    BatchResult batch;
    batch.runs.reserve(scenario.seeds.size());
    for (std::uint64_t seed : scenario.seeds)
        batch.runs.push_back(run(scenario, policy, seed, options));
    batch.aggregate = aggregate_runs(batch.runs);
    return batch;
}

std::vector<SweepRow> sweep(const ScenarioConfig& scenario, SweepAxis axis,
                            std::span<const int> values, const RunOptions& options) {
    if (values.empty()) throw std::domain_error("sweep: no axis values given");
    std::vector<SweepRow> rows;
    for (int value : values) {
        ScenarioConfig point = scenario;
        if (axis == SweepAxis::Relays)
            point.topology.num_relays = value;
        else
            point.topology.num_users = value;
        if (auto err = validate_config(point.system, point.topology))
            throw std::domain_error("sweep: " + std::string(sweep_axis_name(axis)) + " = " +
                                    std::to_string(value) + ": " + *err);
        for (SchedulerPolicy policy : point.policies) {
            SweepRow row;
            row.axis = axis;
            row.value = value;
            row.policy = policy;
            row.aggregate = run_batch(point, policy, options).aggregate;
            rows.push_back(row);
        }
    }
    return rows;
}

const char* sweep_axis_name(SweepAxis axis) {
    return axis == SweepAxis::Relays ? "relays" : "users";
}

}  // namespace relaysim
