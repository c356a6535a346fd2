#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relaysim/channel.hpp"
#include "relaysim/config.hpp"

namespace relaysim {

enum class SchedulerPolicy { RelayVariance, RelayMaxSnr };

struct DirectAssignment {
    SubchannelId subchannel;
    UserId user;
    int subslot;  // 0 or 1

    friend bool operator==(const DirectAssignment&, const DirectAssignment&) = default;
};

struct Hop1Assignment {
    SubchannelId subchannel;
    RelayId relay;

    friend bool operator==(const Hop1Assignment&, const Hop1Assignment&) = default;
};

struct Hop2Assignment {
    SubchannelId subchannel;
    RelayId relay;
    UserId user;

    friend bool operator==(const Hop2Assignment&, const Hop2Assignment&) = default;
};

// Binary assignment indicators for one slot. Entry presence is the indicator;
// sub-slot 1 carries direct(subslot=0) and relay_hop1, sub-slot 2 carries
// direct(subslot=1) and relay_hop2.
struct Allocation {
    std::vector<DirectAssignment> direct;
    std::vector<Hop1Assignment> relay_hop1;
    std::vector<Hop2Assignment> relay_hop2;
    std::vector<std::optional<CommMode>> mode_of;  // per user; nullopt = unserved

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

// Population variance (divisor = count) of the given SNR values.
double variance_metric(std::span<const double> snrs);

// Argmax of variance over the candidates; ties go to the lowest user index.
// variance_of is indexed by user id and must cover every candidate.
UserId select_user(std::span<const UserId> candidates, std::span<const double> variance_of);

// Argmax of snrs over subchannels with unassigned[n] != 0; ties go to the
// lowest subchannel index.
SubchannelId best_subchannel(std::span<const double> snrs,
                             std::span<const std::uint8_t> unassigned);

// Picks the eligible relay whose second-hop SNR vector toward `user`, restricted
// to the unassigned hop-2 subchannels, has the largest variance. Ties go to the
// lowest relay index.
RelayId select_relay(UserId user, const ChannelRealization& chan,
                     std::span<const std::uint8_t> unassigned_hop2,
                     std::span<const RelayId> eligible_relays);

// True when the relay path wins: min(hop1, hop2) strictly above the direct SNR.
bool select_mode(double delta_direct_best, double delta_hop1_best, double delta_hop2_best);

// One committed max-SNR choice. For a direct choice only direct_subchannel /
// direct_subslot are meaningful; for a relayed one, relay plus the two hop
// subchannels.
struct MaxSnrChoice {
    UserId user = -1;
    bool relayed = false;
    SubchannelId direct_subchannel = -1;
    int direct_subslot = 0;
    RelayId relay = -1;
    SubchannelId hop1_subchannel = -1;
    SubchannelId hop2_subchannel = -1;
    double value = 0.0;  // end-to-end SNR of the choice

    friend bool operator==(const MaxSnrChoice&, const MaxSnrChoice&) = default;
};

// Returns the candidate user with the largest best end-to-end SNR over the
// unassigned subchannels, together with its maximizing assignment. Per hop the
// best subchannel is the argmax over the corresponding pool; a relay path is
// worth min(best hop1, best hop2); direct wins ties against relayed. Ties break
// to the lowest user, subchannel, and relay index. Returns nullopt when no
// candidate has any feasible assignment. allow_subslot2_direct additionally
// offers direct transmission in sub-slot 2 (drawn from the hop-2 pool), used by
// the multi-round scheduler.
std::optional<MaxSnrChoice> maxsnr_select(std::span<const UserId> candidates,
                                          const ChannelRealization& chan,
                                          std::span<const std::uint8_t> unassigned_hop1,
                                          std::span<const std::uint8_t> unassigned_hop2,
                                          std::span<const RelayId> eligible_relays,
                                          bool allow_subslot2_direct = false);

// Builds the slot allocation under the given policy. Default mode serves each
// user at most once per slot; multi_round keeps running extra rounds (and lets
// direct traffic use sub-slot 2) until the subchannel pools are exhausted.
Allocation schedule_slot(SchedulerPolicy policy, const ChannelRealization& chan,
                         const Topology& topo, const SystemConfig& cfg,
                         bool multi_round = false);

// Verifies the allocation invariants: indicator well-formedness (C1), per
// sub-slot subchannel exclusivity (C2), at most one assignment per user (C3,
// waived when require_c3 is false), and the relayed hop pairing. Returns the
// first violation found.
std::optional<std::string> check_allocation(const Allocation& alloc, const Topology& topo,
                                            const SystemConfig& cfg, bool require_c3 = true);

const char* policy_name(SchedulerPolicy policy);

}  // namespace relaysim
