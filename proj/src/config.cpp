#include "relaysim/config.hpp"

#include <string>

namespace relaysim {

std::optional<std::string> validate_config(const SystemConfig& cfg, const Topology& topo) {
    if (!(cfg.bandwidth_hz > 0.0)) return "bandwidth_hz must be positive";
    if (cfg.num_subchannels < 1) return "num_subchannels must be at least 1";
    if (!(cfg.total_power_w > 0.0)) return "total_power_w must be positive";
    if (!(cfg.relay_power_w > 0.0)) return "relay_power_w must be positive";
    if (!(cfg.ber_target > 0.0 && cfg.ber_target < 0.2))
        return "ber_target must lie in (0, 0.2)";
    if (!(cfg.noise_psd > 0.0)) return "noise_psd must be positive";
    if (cfg.avg_window < 1) return "avg_window must be at least 1";
    if (cfg.symbols_per_subframe < 1) return "symbols_per_subframe must be at least 1";
    if (topo.num_users < 1) return "num_users must be at least 1";
    if (topo.num_relays < 0) return "num_relays must be nonnegative";
    return std::nullopt;
}

}  // namespace relaysim
