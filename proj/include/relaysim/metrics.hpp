#pragma once

#include <span>
#include <vector>

namespace relaysim {

// Aggregate view of one simulation run. jain_relays is NaN when no relay
// carried any traffic (including num_relays == 0).
struct RunSummary {
    double mean_system_capacity = 0.0;  // bit/s, averaged over slots
    double cumulative_capacity = 0.0;   // frame objective: sum of per-slot capacities
    double jain_users = 0.0;            // over final moving-average rates
    double jain_relays = 0.0;           // over cumulative per-relay throughput
    std::vector<double> per_slot_capacity;
};

// Jain's fairness index (sum x)^2 / (n * sum x^2). Requires a nonempty,
// nonnegative vector with at least one positive entry.
double jain_index(std::span<const double> values);

RunSummary summarize_run(std::span<const double> per_slot_capacity,
                         std::span<const double> final_avg_rate,
                         std::span<const double> relay_throughput);

}  // namespace relaysim
