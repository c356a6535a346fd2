#include "relaysim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace relaysim {
namespace {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based generator keyed on (seed, slot, stream). Any slot and link
// class can be regenerated independently, in any order.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::int64_t slot, std::uint64_t stream)
        : key_(mix64(mix64(seed ^ 0x243f6a8885a308d3ULL) ^
                     mix64(static_cast<std::uint64_t>(slot)) ^
                     mix64(stream * 0x452821e638d01377ULL))) {}

    std::uint64_t next_u64() { return mix64(key_ + ++counter_ * 0x9e3779b97f4a7c15ULL); }

    // Uniform on [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double next_exponential(double mean) { return -mean * std::log1p(-next_unit()); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

constexpr std::uint64_t kStreamDirect = 1;
constexpr std::uint64_t kStreamHop1 = 2;
constexpr std::uint64_t kStreamHop2 = 3;

}  // namespace

ChannelRealization::ChannelRealization(int num_subchannels, int num_users, int num_relays)
    : num_subchannels_(num_subchannels),
      num_users_(num_users),
      num_relays_(num_relays),
      direct_(static_cast<std::size_t>(num_subchannels) * num_users * 2, 0.0),
      hop1_(static_cast<std::size_t>(num_subchannels) * num_relays, 0.0),
      hop2_(static_cast<std::size_t>(num_subchannels) * num_relays * num_users, 0.0) {
    if (num_subchannels < 1 || num_users < 0 || num_relays < 0)
        throw std::domain_error("ChannelRealization: bad dimensions");
}

double snr_gap(double ber_target) {
    if (!(ber_target > 0.0 && ber_target < 0.2))
        throw std::domain_error("snr_gap: ber_target must lie in (0, 0.2)");
    return -std::log(5.0 * ber_target) / 1.6;
}

double link_capacity(double snr, const SystemConfig& cfg) {
    if (!(snr >= 0.0)) throw std::domain_error("link_capacity: snr must be nonnegative");
    const double gap = snr_gap(cfg.ber_target);
    return cfg.bandwidth_hz / cfg.num_subchannels * std::log2(1.0 + snr / gap);
}

ChannelRealization draw_channel(const ChannelParams& params, const SystemConfig& cfg,
                                const Topology& topo, std::int64_t slot_index) {
    if (!(params.mean_snr_direct > 0.0 && params.mean_snr_first_hop > 0.0 &&
          params.mean_snr_second_hop > 0.0))
        throw std::domain_error("draw_channel: mean SNRs must be positive");

    ChannelRealization chan(cfg.num_subchannels, topo.num_users, topo.num_relays);

    CounterRng direct_rng(params.seed, slot_index, kStreamDirect);
    for (SubchannelId n = 0; n < cfg.num_subchannels; ++n)
        for (UserId m = 0; m < topo.num_users; ++m)
            for (int subslot = 0; subslot < 2; ++subslot)
                chan.set_direct(n, m, subslot,
                                direct_rng.next_exponential(params.mean_snr_direct));

    CounterRng hop1_rng(params.seed, slot_index, kStreamHop1);
    for (SubchannelId n = 0; n < cfg.num_subchannels; ++n)
        for (RelayId k = 0; k < topo.num_relays; ++k)
            chan.set_hop1(n, k, hop1_rng.next_exponential(params.mean_snr_first_hop));

    CounterRng hop2_rng(params.seed, slot_index, kStreamHop2);
    for (SubchannelId n = 0; n < cfg.num_subchannels; ++n)
        for (RelayId k = 0; k < topo.num_relays; ++k)
            for (UserId m = 0; m < topo.num_users; ++m)
                chan.set_hop2(n, k, m, hop2_rng.next_exponential(params.mean_snr_second_hop));

    return chan;
}

}  // namespace relaysim
