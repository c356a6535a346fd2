#pragma once

#include <optional>
#include <string>

namespace relaysim {

// Physical and frame-level parameters of the cell. Defaults follow the
// 10 MHz / 128-subchannel setup the simulator is calibrated for.
struct SystemConfig {
    double bandwidth_hz = 10e6;     // total bandwidth W
    int num_subchannels = 128;      // N orthogonal subchannels of width W/N
    double total_power_w = 1.0;     // BS transmit power, split uniformly over subchannels
    double relay_power_w = 1.0;     // per-relay transmit power, same uniform split
    double ber_target = 1e-3;       // target bit-error rate, must lie in (0, 0.2)
    double noise_psd = 4e-21;       // noise power spectral density n0 [W/Hz]
    int avg_window = 100;           // moving-average window T [slots]
    int symbols_per_subframe = 48;  // OFDMA symbols per downlink sub-frame (descriptive only)
};

struct Topology {
    int num_users = 10;  // M mobile stations
    int num_relays = 6;  // K relay stations; 0 degenerates to a direct-only cell
};

// Dense zero-based indices.
using UserId = int;
using RelayId = int;
using SubchannelId = int;

// Communication mode assigned to a user for one slot.
struct CommMode {
    enum class Kind { Direct, Relayed };

    Kind kind = Kind::Direct;
    RelayId relay = -1;  // meaningful only when kind == Relayed

    static CommMode direct() { return {Kind::Direct, -1}; }
    static CommMode relayed(RelayId k) { return {Kind::Relayed, k}; }
    bool is_relayed() const { return kind == Kind::Relayed; }

    friend bool operator==(const CommMode& a, const CommMode& b) {
        if (a.kind != b.kind) return false;
        return a.kind == Kind::Direct || a.relay == b.relay;
    }
};

// Returns std::nullopt when every invariant holds, otherwise a message
// naming the first violated one.
std::optional<std::string> validate_config(const SystemConfig& cfg, const Topology& topo);

}  // namespace relaysim
