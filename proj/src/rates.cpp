#include "relaysim/rates.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace relaysim {

SlotRates compute_slot_rates(const Allocation& alloc, const ChannelRealization& chan,
                             const SystemConfig& cfg, const Topology& topo) {
    if (chan.num_users() != topo.num_users || chan.num_relays() != topo.num_relays ||
        chan.num_subchannels() != cfg.num_subchannels)
        throw std::domain_error("compute_slot_rates: realization does not match topology/config");

    const std::size_t M = static_cast<std::size_t>(topo.num_users);
    const std::size_t K = static_cast<std::size_t>(topo.num_relays);

    SlotRates rates;
    rates.num_users = topo.num_users;
    rates.direct_rate.assign(M, 0.0);
    rates.relay_hop1_rate.assign(K, 0.0);
    rates.relay_hop2_rate.assign(K, 0.0);
    rates.relay_user_hop1.assign(K * M, 0.0);
    rates.relay_user_hop2.assign(K * M, 0.0);
    rates.effective_rate.assign(M, 0.0);

    for (const auto& d : alloc.direct)
        rates.direct_rate[d.user] += link_capacity(chan.direct(d.subchannel, d.user, d.subslot), cfg);

    for (const auto& h : alloc.relay_hop1)
        rates.relay_hop1_rate[h.relay] += link_capacity(chan.hop1(h.subchannel, h.relay), cfg);

    for (const auto& h : alloc.relay_hop2) {
        const double r = link_capacity(chan.hop2(h.subchannel, h.relay, h.user), cfg);
        rates.relay_user_hop2[rates.pair_index(h.relay, h.user)] += r;
        rates.relay_hop2_rate[h.relay] += r;
    }

    // A relay's pooled first-hop capacity is split over its users in proportion
    // to their second-hop rates; with no second-hop traffic the share is zero.
    for (RelayId k = 0; k < topo.num_relays; ++k) {
        const double hop2_total = rates.relay_hop2_rate[k];
        if (hop2_total <= 0.0) continue;
        const double ratio = rates.relay_hop1_rate[k] / hop2_total;
        for (UserId m = 0; m < topo.num_users; ++m) {
            const std::size_t i = rates.pair_index(k, m);
            rates.relay_user_hop1[i] = ratio * rates.relay_user_hop2[i];
        }
    }

    for (UserId m = 0; m < topo.num_users; ++m) {
        double eff = 0.0;
        for (RelayId k = 0; k < topo.num_relays; ++k) {
            const std::size_t i = rates.pair_index(k, m);
            eff += std::min(rates.relay_user_hop1[i], rates.relay_user_hop2[i]);
        }
        rates.effective_rate[m] = eff;
    }

    rates.system_capacity =
        std::accumulate(rates.direct_rate.begin(), rates.direct_rate.end(), 0.0) +
        std::accumulate(rates.effective_rate.begin(), rates.effective_rate.end(), 0.0);
    return rates;
}

double update_average(double prev, double achieved, int window) {
    if (window < 1) throw std::domain_error("update_average: window must be at least 1");
    const double inv = 1.0 / window;
    return (1.0 - inv) * prev + achieved * inv;
}

double frame_objective(std::span<const double> slot_capacities) {
    return std::accumulate(slot_capacities.begin(), slot_capacities.end(), 0.0);
}

}  // namespace relaysim
