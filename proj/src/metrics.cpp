#include "relaysim/metrics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "relaysim/rates.hpp"

namespace relaysim {
namespace {

// Quiet-NaN variant for observability paths where a degenerate vector (no
// relays, nothing served yet) is data, not a caller bug.
double jain_or_nan(std::span<const double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    double sum = 0.0, sum_sq = 0.0;
    for (double x : values) {
        sum += x;
        sum_sq += x * x;
    }
    if (sum_sq <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sum * sum / (static_cast<double>(values.size()) * sum_sq);
}

}  // namespace

double jain_index(std::span<const double> values) {
    if (values.empty()) throw std::domain_error("jain_index: empty vector");
    for (double x : values)
        if (!(x >= 0.0)) throw std::domain_error("jain_index: negative value");
    const double j = jain_or_nan(values);
    if (std::isnan(j)) throw std::domain_error("jain_index: all values are zero");
    return j;
}

RunSummary summarize_run(std::span<const double> per_slot_capacity,
                         std::span<const double> final_avg_rate,
                         std::span<const double> relay_throughput) {
    if (per_slot_capacity.empty()) throw std::domain_error("summarize_run: no recorded slots");

    RunSummary summary;
    summary.per_slot_capacity.assign(per_slot_capacity.begin(), per_slot_capacity.end());
    summary.cumulative_capacity = frame_objective(per_slot_capacity);
    summary.mean_system_capacity =
        summary.cumulative_capacity / static_cast<double>(per_slot_capacity.size());
    summary.jain_users = jain_or_nan(final_avg_rate);
    summary.jain_relays = jain_or_nan(relay_throughput);
    return summary;
}

}  // namespace relaysim
