#include "relaysim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace relaysim {
namespace {

std::vector<double> gather_direct(const ChannelRealization& chan, UserId m, int subslot) {
    std::vector<double> snrs(static_cast<std::size_t>(chan.num_subchannels()));
    for (SubchannelId n = 0; n < chan.num_subchannels(); ++n) snrs[n] = chan.direct(n, m, subslot);
    return snrs;
}

std::vector<double> gather_hop1(const ChannelRealization& chan, RelayId k) {
    std::vector<double> snrs(static_cast<std::size_t>(chan.num_subchannels()));
    for (SubchannelId n = 0; n < chan.num_subchannels(); ++n) snrs[n] = chan.hop1(n, k);
    return snrs;
}

std::vector<double> gather_hop2(const ChannelRealization& chan, RelayId k, UserId m) {
    std::vector<double> snrs(static_cast<std::size_t>(chan.num_subchannels()));
    for (SubchannelId n = 0; n < chan.num_subchannels(); ++n) snrs[n] = chan.hop2(n, k, m);
    return snrs;
}

int count_set(std::span<const std::uint8_t> mask) {
    return static_cast<int>(std::count_if(mask.begin(), mask.end(),
                                          [](std::uint8_t b) { return b != 0; }));
}

// Strict "a beats b" order over choices of equal value, used only to break
// exact ties deterministically: direct before relayed, then lower sub-slot,
// subchannel, relay and hop indices.
bool beats_on_tie(const MaxSnrChoice& a, const MaxSnrChoice& b) {
    if (a.relayed != b.relayed) return !a.relayed;
    if (!a.relayed) {
        if (a.direct_subslot != b.direct_subslot) return a.direct_subslot < b.direct_subslot;
        return a.direct_subchannel < b.direct_subchannel;
    }
    if (a.relay != b.relay) return a.relay < b.relay;
    if (a.hop1_subchannel != b.hop1_subchannel) return a.hop1_subchannel < b.hop1_subchannel;
    return a.hop2_subchannel < b.hop2_subchannel;
}

void merge_choice(std::optional<MaxSnrChoice>& best, const MaxSnrChoice& candidate) {
    if (!best || candidate.value > best->value ||
        (candidate.value == best->value && beats_on_tie(candidate, *best)))
        best = candidate;
}

// Best feasible single choice for one user, or nullopt when the pools offer none.
std::optional<MaxSnrChoice> best_choice_for_user(UserId m, const ChannelRealization& chan,
                                                 std::span<const std::uint8_t> unassigned_hop1,
                                                 std::span<const std::uint8_t> unassigned_hop2,
                                                 std::span<const RelayId> eligible_relays,
                                                 bool allow_subslot2_direct) {
    const bool hop1_open = count_set(unassigned_hop1) > 0;
    const bool hop2_open = count_set(unassigned_hop2) > 0;
    std::optional<MaxSnrChoice> best;

    if (hop1_open) {
        const auto snrs = gather_direct(chan, m, 0);
        MaxSnrChoice c;
        c.user = m;
        c.direct_subchannel = best_subchannel(snrs, unassigned_hop1);
        c.value = snrs[c.direct_subchannel];
        merge_choice(best, c);
    }
    if (allow_subslot2_direct && hop2_open) {
        const auto snrs = gather_direct(chan, m, 1);
        MaxSnrChoice c;
        c.user = m;
        c.direct_subslot = 1;
        c.direct_subchannel = best_subchannel(snrs, unassigned_hop2);
        c.value = snrs[c.direct_subchannel];
        merge_choice(best, c);
    }
    if (hop1_open && hop2_open) {
        for (RelayId k : eligible_relays) {
            const auto h1 = gather_hop1(chan, k);
            const auto h2 = gather_hop2(chan, k, m);
            MaxSnrChoice c;
            c.user = m;
            c.relayed = true;
            c.relay = k;
            c.hop1_subchannel = best_subchannel(h1, unassigned_hop1);
            c.hop2_subchannel = best_subchannel(h2, unassigned_hop2);
            c.value = std::min(h1[c.hop1_subchannel], h2[c.hop2_subchannel]);
            merge_choice(best, c);
        }
    }
    return best;
}

struct Pools {
    std::vector<std::uint8_t> hop1;
    std::vector<std::uint8_t> hop2;
    int open1;
    int open2;

    explicit Pools(int n) : hop1(n, 1), hop2(n, 1), open1(n), open2(n) {}

    void take1(SubchannelId n) {
        hop1[n] = 0;
        --open1;
    }
    void take2(SubchannelId n) {
        hop2[n] = 0;
        --open2;
    }
};

void commit(Allocation& alloc, Pools& pools, const MaxSnrChoice& choice) {
    if (choice.relayed) {
        alloc.relay_hop1.push_back({choice.hop1_subchannel, choice.relay});
        alloc.relay_hop2.push_back({choice.hop2_subchannel, choice.relay, choice.user});
        pools.take1(choice.hop1_subchannel);
        pools.take2(choice.hop2_subchannel);
        if (!alloc.mode_of[choice.user]) alloc.mode_of[choice.user] = CommMode::relayed(choice.relay);
    } else {
        alloc.direct.push_back({choice.direct_subchannel, choice.user, choice.direct_subslot});
        if (choice.direct_subslot == 0)
            pools.take1(choice.direct_subchannel);
        else
            pools.take2(choice.direct_subchannel);
        if (!alloc.mode_of[choice.user]) alloc.mode_of[choice.user] = CommMode::direct();
    }
}

// One round of the variance policy: serves each unserved user at most once.
// Returns the number of commits. In multi-round operation direct traffic may
// fall back to sub-slot 2 when it beats (or is the only remaining) option.
int variance_round(Allocation& alloc, Pools& pools, std::vector<UserId>& unserved,
                   const ChannelRealization& chan, std::span<const RelayId> eligible_relays,
                   bool allow_subslot2_direct) {
    int commits = 0;
    std::vector<double> variance_of(alloc.mode_of.size(), 0.0);
    std::vector<double> scratch;

    auto pool_values = [&](const std::vector<double>& snrs, const std::vector<std::uint8_t>& mask) {
        scratch.clear();
        for (SubchannelId n = 0; n < static_cast<int>(snrs.size()); ++n)
            if (mask[n]) scratch.push_back(snrs[n]);
        return std::span<const double>(scratch);
    };

    auto keep_running = [&] {
        if (unserved.empty()) return false;
        if (allow_subslot2_direct) return pools.open1 > 0 || pools.open2 > 0;
        return pools.open1 > 0 && pools.open2 > 0;
    };

    while (keep_running()) {
        for (UserId m : unserved) {
            const auto snrs = pools.open1 > 0 ? gather_direct(chan, m, 0) : gather_direct(chan, m, 1);
            variance_of[m] = variance_metric(
                pool_values(snrs, pools.open1 > 0 ? pools.hop1 : pools.hop2));
        }
        const UserId m = select_user(unserved, variance_of);

        MaxSnrChoice direct_choice;
        direct_choice.user = m;
        if (pools.open1 > 0) {
            const auto snrs = gather_direct(chan, m, 0);
            direct_choice.direct_subchannel = best_subchannel(snrs, pools.hop1);
            direct_choice.value = snrs[direct_choice.direct_subchannel];
        }
        if (allow_subslot2_direct && pools.open2 > 0) {
            const auto snrs = gather_direct(chan, m, 1);
            MaxSnrChoice c;
            c.user = m;
            c.direct_subslot = 1;
            c.direct_subchannel = best_subchannel(snrs, pools.hop2);
            c.value = snrs[c.direct_subchannel];
            if (pools.open1 == 0 || c.value > direct_choice.value) direct_choice = c;
        }

        bool relayed = false;
        MaxSnrChoice relay_choice;
        if (!eligible_relays.empty() && pools.open1 > 0 && pools.open2 > 0) {
            const RelayId k = select_relay(m, chan, pools.hop2, eligible_relays);
            const auto h1 = gather_hop1(chan, k);
            const auto h2 = gather_hop2(chan, k, m);
            relay_choice.user = m;
            relay_choice.relayed = true;
            relay_choice.relay = k;
            relay_choice.hop1_subchannel = best_subchannel(h1, pools.hop1);
            relay_choice.hop2_subchannel = best_subchannel(h2, pools.hop2);
            relay_choice.value =
                std::min(h1[relay_choice.hop1_subchannel], h2[relay_choice.hop2_subchannel]);
            relayed = select_mode(direct_choice.value, h1[relay_choice.hop1_subchannel],
                                  h2[relay_choice.hop2_subchannel]);
        }

        commit(alloc, pools, relayed ? relay_choice : direct_choice);
        ++commits;
        unserved.erase(std::find(unserved.begin(), unserved.end(), m));
    }
    return commits;
}

int maxsnr_round(Allocation& alloc, Pools& pools, std::vector<UserId>& unserved,
                 const ChannelRealization& chan, std::span<const RelayId> eligible_relays,
                 bool allow_subslot2_direct) {
    int commits = 0;
    while (!unserved.empty()) {
        const auto choice = maxsnr_select(unserved, chan, pools.hop1, pools.hop2, eligible_relays,
                                          allow_subslot2_direct);
        if (!choice) break;
        commit(alloc, pools, *choice);
        ++commits;
        unserved.erase(std::find(unserved.begin(), unserved.end(), choice->user));
    }
    return commits;
}

}  // namespace

double variance_metric(std::span<const double> snrs) {
    if (snrs.empty()) throw std::domain_error("variance_metric: empty SNR vector");
    const double mean = std::accumulate(snrs.begin(), snrs.end(), 0.0) /
                        static_cast<double>(snrs.size());
    double sq = 0.0;
    for (double x : snrs) sq += (x - mean) * (x - mean);
    return sq / static_cast<double>(snrs.size());
}

UserId select_user(std::span<const UserId> candidates, std::span<const double> variance_of) {
    if (candidates.empty()) throw std::domain_error("select_user: no candidates");
    UserId best = candidates[0];
    for (UserId m : candidates.subspan(1)) {
        const double v = variance_of[m];
        if (v > variance_of[best] || (v == variance_of[best] && m < best)) best = m;
    }
    return best;
}

SubchannelId best_subchannel(std::span<const double> snrs,
                             std::span<const std::uint8_t> unassigned) {
    if (snrs.size() != unassigned.size())
        throw std::domain_error("best_subchannel: mask size mismatch");
    SubchannelId best = -1;
    for (SubchannelId n = 0; n < static_cast<int>(snrs.size()); ++n) {
        if (!unassigned[n]) continue;
        if (best < 0 || snrs[n] > snrs[best]) best = n;
    }
    if (best < 0) throw std::domain_error("best_subchannel: no unassigned subchannel");
    return best;
}

RelayId select_relay(UserId user, const ChannelRealization& chan,
                     std::span<const std::uint8_t> unassigned_hop2,
                     std::span<const RelayId> eligible_relays) {
    if (eligible_relays.empty()) throw std::domain_error("select_relay: no eligible relays");
    if (count_set(unassigned_hop2) == 0)
        throw std::domain_error("select_relay: no unassigned hop-2 subchannels");

    RelayId best = -1;
    double best_var = 0.0;
    std::vector<double> values;
    for (RelayId k : eligible_relays) {
        values.clear();
        for (SubchannelId n = 0; n < chan.num_subchannels(); ++n)
            if (unassigned_hop2[n]) values.push_back(chan.hop2(n, k, user));
        const double v = variance_metric(values);
        if (best < 0 || v > best_var || (v == best_var && k < best)) {
            best = k;
            best_var = v;
        }
    }
    return best;
}

bool select_mode(double delta_direct_best, double delta_hop1_best, double delta_hop2_best) {
    return std::min(delta_hop1_best, delta_hop2_best) > delta_direct_best;
}

std::optional<MaxSnrChoice> maxsnr_select(std::span<const UserId> candidates,
                                          const ChannelRealization& chan,
                                          std::span<const std::uint8_t> unassigned_hop1,
                                          std::span<const std::uint8_t> unassigned_hop2,
                                          std::span<const RelayId> eligible_relays,
                                          bool allow_subslot2_direct) {
    if (candidates.empty()) throw std::domain_error("maxsnr_select: no candidates");
    std::optional<MaxSnrChoice> best;
    for (UserId m : candidates) {
        const auto choice = best_choice_for_user(m, chan, unassigned_hop1, unassigned_hop2,
                                                 eligible_relays, allow_subslot2_direct);
        if (!choice) continue;
        if (!best || choice->value > best->value ||
            (choice->value == best->value && choice->user < best->user))
            best = choice;
    }
    return best;
}

Allocation schedule_slot(SchedulerPolicy policy, const ChannelRealization& chan,
                         const Topology& topo, const SystemConfig& cfg, bool multi_round) {
    if (chan.num_users() != topo.num_users || chan.num_relays() != topo.num_relays ||
        chan.num_subchannels() != cfg.num_subchannels)
        throw std::domain_error("schedule_slot: realization does not match topology/config");

    Allocation alloc;
    alloc.mode_of.assign(static_cast<std::size_t>(topo.num_users), std::nullopt);
    Pools pools(cfg.num_subchannels);

    std::vector<RelayId> relays(static_cast<std::size_t>(topo.num_relays));
    std::iota(relays.begin(), relays.end(), 0);

    auto round = [&](std::vector<UserId>& unserved) {
        return policy == SchedulerPolicy::RelayVariance
                   ? variance_round(alloc, pools, unserved, chan, relays, multi_round)
                   : maxsnr_round(alloc, pools, unserved, chan, relays, multi_round);
    };

    std::vector<UserId> unserved(static_cast<std::size_t>(topo.num_users));
    std::iota(unserved.begin(), unserved.end(), 0);
    int commits = round(unserved);

    while (multi_round && commits > 0 && pools.open1 + pools.open2 > 0) {
        unserved.resize(static_cast<std::size_t>(topo.num_users));
        std::iota(unserved.begin(), unserved.end(), 0);
        commits = round(unserved);
    }
    return alloc;
}

std::optional<std::string> check_allocation(const Allocation& alloc, const Topology& topo,
                                            const SystemConfig& cfg, bool require_c3) {
    const int N = cfg.num_subchannels;
    const int M = topo.num_users;
    const int K = topo.num_relays;

    if (static_cast<int>(alloc.mode_of.size()) != M)
        return "mode_of size does not match num_users";

    for (const auto& d : alloc.direct) {
        if (d.subchannel < 0 || d.subchannel >= N) return "C1: direct subchannel out of range";
        if (d.user < 0 || d.user >= M) return "C1: direct user out of range";
        if (d.subslot != 0 && d.subslot != 1) return "C1: direct subslot out of range";
    }
    for (const auto& h : alloc.relay_hop1) {
        if (h.subchannel < 0 || h.subchannel >= N) return "C1: hop-1 subchannel out of range";
        if (h.relay < 0 || h.relay >= K) return "C1: hop-1 relay out of range";
    }
    for (const auto& h : alloc.relay_hop2) {
        if (h.subchannel < 0 || h.subchannel >= N) return "C1: hop-2 subchannel out of range";
        if (h.relay < 0 || h.relay >= K) return "C1: hop-2 relay out of range";
        if (h.user < 0 || h.user >= M) return "C1: hop-2 user out of range";
    }

    std::vector<int> sub1(static_cast<std::size_t>(N), 0), sub2(static_cast<std::size_t>(N), 0);
    for (const auto& d : alloc.direct) ++(d.subslot == 0 ? sub1 : sub2)[d.subchannel];
    for (const auto& h : alloc.relay_hop1) ++sub1[h.subchannel];
    for (const auto& h : alloc.relay_hop2) ++sub2[h.subchannel];
    for (SubchannelId n = 0; n < N; ++n) {
        if (sub1[n] > 1) return "C2: subchannel " + std::to_string(n) + " reused in sub-slot 1";
        if (sub2[n] > 1) return "C2: subchannel " + std::to_string(n) + " reused in sub-slot 2";
    }

    std::vector<int> hop1_of(static_cast<std::size_t>(K), 0), hop2_of(static_cast<std::size_t>(K), 0);
    for (const auto& h : alloc.relay_hop1) ++hop1_of[h.relay];
    for (const auto& h : alloc.relay_hop2) ++hop2_of[h.relay];
    for (RelayId k = 0; k < K; ++k)
        if (hop1_of[k] != hop2_of[k])
            return "relay " + std::to_string(k) + " has unpaired hop assignments";

    std::vector<int> uses(static_cast<std::size_t>(M), 0);
    for (const auto& d : alloc.direct) ++uses[d.user];
    for (const auto& h : alloc.relay_hop2) ++uses[h.user];
    for (UserId m = 0; m < M; ++m) {
        if (alloc.mode_of[m].has_value() != (uses[m] > 0))
            return "mode_of[" + std::to_string(m) + "] disagrees with assignments";
        if (!require_c3) continue;
        if (uses[m] > 1) return "C3: user " + std::to_string(m) + " assigned more than once";
        if (!alloc.mode_of[m]) continue;
        const CommMode mode = *alloc.mode_of[m];
        bool consistent;
        if (mode.is_relayed()) {
            consistent = std::any_of(alloc.relay_hop2.begin(), alloc.relay_hop2.end(),
                                     [&](const Hop2Assignment& h) {
                                         return h.user == m && h.relay == mode.relay;
                                     });
        } else {
            consistent = std::any_of(alloc.direct.begin(), alloc.direct.end(),
                                     [&](const DirectAssignment& d) { return d.user == m; });
        }
        if (!consistent) return "mode_of[" + std::to_string(m) + "] does not match its assignment";
    }
    return std::nullopt;
}

const char* policy_name(SchedulerPolicy policy) {
    return policy == SchedulerPolicy::RelayVariance ? "variance" : "maxsnr";
}

}  // namespace relaysim
