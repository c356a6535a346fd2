#pragma once

#include <span>
#include <vector>

#include "relaysim/scheduler.hpp"

namespace relaysim {

// Per-slot rates derived from one Allocation. Relay/user pair tables are dense
// [num_relays x num_users], addressed with pair_index.
struct SlotRates {
    std::vector<double> direct_rate;      // per user, bit/s
    std::vector<double> relay_hop1_rate;  // per relay, bit/s
    std::vector<double> relay_hop2_rate;  // per relay, bit/s
    std::vector<double> relay_user_hop1;  // [relay][user], bit/s
    std::vector<double> relay_user_hop2;  // [relay][user], bit/s
    std::vector<double> effective_rate;   // per user, bit/s; nonzero only for relay users
    double system_capacity = 0.0;         // bit/s

    int num_users = 0;
    std::size_t pair_index(RelayId k, UserId m) const {
        return static_cast<std::size_t>(k) * num_users + m;
    }
    double hop1_share(RelayId k, UserId m) const { return relay_user_hop1[pair_index(k, m)]; }
    double hop2_rate(RelayId k, UserId m) const { return relay_user_hop2[pair_index(k, m)]; }
};

// Evolving per-run rate bookkeeping: the moving-average rate per user and the
// cumulative effective throughput routed through each relay.
struct RateState {
    std::vector<double> avg_rate;
    std::vector<double> cumulative_relay_throughput;
};

// Turns an allocation plus the slot's channel into per-user, per-relay and
// system rates. The first-hop capacity pooled at a relay is redistributed over
// its users proportionally to their second-hop rates; a user's effective rate
// is the bottleneck of its two hop shares.
SlotRates compute_slot_rates(const Allocation& alloc, const ChannelRealization& chan,
                             const SystemConfig& cfg, const Topology& topo);

// Moving-average update: (1 - 1/T) * prev + achieved / T.
double update_average(double prev, double achieved, int window);

// Sum of per-slot system capacities over a frame.
double frame_objective(std::span<const double> slot_capacities);

}  // namespace relaysim
