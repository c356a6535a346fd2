#pragma once

#include <cstdint>
#include <vector>

#include "relaysim/config.hpp"

namespace relaysim {

// Mean linear SNR per link class plus the RNG seed for a run.
struct ChannelParams {
    double mean_snr_direct = 10.0;
    double mean_snr_first_hop = 10.0;
    double mean_snr_second_hop = 10.0;
    std::uint64_t seed = 1;
};

// Linear SNR of every link for one slot. Direct links carry one value per
// sub-slot; the relay hops are tied to their sub-slot by the frame structure
// (BS->RS in sub-slot 1, RS->MS in sub-slot 2).
class ChannelRealization {
public:
    ChannelRealization(int num_subchannels, int num_users, int num_relays);

    double direct(SubchannelId n, UserId m, int subslot) const {
        return direct_[(static_cast<std::size_t>(n) * num_users_ + m) * 2 + subslot];
    }
    double hop1(SubchannelId n, RelayId k) const {
        return hop1_[static_cast<std::size_t>(n) * num_relays_ + k];
    }
    double hop2(SubchannelId n, RelayId k, UserId m) const {
        return hop2_[(static_cast<std::size_t>(n) * num_relays_ + k) * num_users_ + m];
    }

    void set_direct(SubchannelId n, UserId m, int subslot, double snr) {
        direct_[(static_cast<std::size_t>(n) * num_users_ + m) * 2 + subslot] = snr;
    }
    void set_hop1(SubchannelId n, RelayId k, double snr) {
        hop1_[static_cast<std::size_t>(n) * num_relays_ + k] = snr;
    }
    void set_hop2(SubchannelId n, RelayId k, UserId m, double snr) {
        hop2_[(static_cast<std::size_t>(n) * num_relays_ + k) * num_users_ + m] = snr;
    }

    int num_subchannels() const { return num_subchannels_; }
    int num_users() const { return num_users_; }
    int num_relays() const { return num_relays_; }

    friend bool operator==(const ChannelRealization& a, const ChannelRealization& b) {
        return a.num_subchannels_ == b.num_subchannels_ && a.num_users_ == b.num_users_ &&
               a.num_relays_ == b.num_relays_ && a.direct_ == b.direct_ && a.hop1_ == b.hop1_ &&
               a.hop2_ == b.hop2_;
    }

private:
    int num_subchannels_;
    int num_users_;
    int num_relays_;
    std::vector<double> direct_;  // [n][m][subslot]
    std::vector<double> hop1_;    // [n][k]
    std::vector<double> hop2_;    // [n][k][m]
};

// SNR gap Gamma = -ln(5 BER)/1.6. Requires ber_target in (0, 0.2).
double snr_gap(double ber_target);

// Shannon rate of one subchannel under the SNR gap: (W/N) log2(1 + snr/Gamma), bit/s.
double link_capacity(double snr, const SystemConfig& cfg);

// Draws every link SNR i.i.d. Exponential(class mean). Pure function of
// (params, cfg, topo, slot_index): the generator is keyed on
// (seed, slot_index, link class), so slots can be evaluated in any order.
ChannelRealization draw_channel(const ChannelParams& params, const SystemConfig& cfg,
                                const Topology& topo, std::int64_t slot_index);

}  // namespace relaysim
