#include "relaysim/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <utility>

#include "json.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace relaysim {
namespace {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read config file '" + path.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw ParseError("error while reading '" + path.string() + "'");
    return text;
}

std::uint64_t seed_offset_from_env() {
    const char* raw = std::getenv("SIM_SEED_OFFSET");
    if (!raw || !*raw) return 0;
    long long offset = 0;
    const std::string_view text(raw);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), offset);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError("SIM_SEED_OFFSET: expected an integer, got '" + std::string(text) + "'");
    return static_cast<std::uint64_t>(offset);
}

ScenarioConfig resolve_scenario(const RunFlags& flags) {
    ScenarioConfig scenario =
        flags.config_path.empty() ? default_scenario() : parse_scenario(read_file(flags.config_path));
    if (!flags.policy.empty()) scenario.policies = parse_policy_selection(flags.policy);
    if (flags.num_slots != 0) {
        if (flags.num_slots < 1) throw ParseError("--slots must be at least 1");
        scenario.num_slots = flags.num_slots;
    }
    if (!flags.seed_spec.empty()) scenario.seeds = parse_seed_spec(flags.seed_spec);

    const std::uint64_t offset = seed_offset_from_env();
    for (std::uint64_t& seed : scenario.seeds) seed += offset;
    return scenario;
}

// All-or-nothing output: every temp file is written and flushed before any
// final name appears.
void write_files_atomically(const fs::path& out_dir,
                            const std::vector<std::pair<std::string, std::string>>& files) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + out_dir.string() +
                                     "': " + ec.message());

    std::vector<std::pair<fs::path, fs::path>> staged;
    auto discard = [&] {
        std::error_code ignore;
        for (const auto& [tmp, final_path] : staged) fs::remove(tmp, ignore);
    };
    for (const auto& [name, content] : files) {
        const fs::path final_path = out_dir / name;
        const fs::path tmp = out_dir / (name + ".tmp");
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.close();
        if (!out) {
            discard();
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
        staged.emplace_back(tmp, final_path);
    }
    for (const auto& [tmp, final_path] : staged) {
        fs::rename(tmp, final_path, ec);
        if (ec) {
            discard();
            throw std::runtime_error("cannot move '" + tmp.string() + "' into place: " +
                                     ec.message());
        }
    }
}

std::string per_slot_csv(const ScenarioConfig& scenario,
                         const std::vector<std::pair<SchedulerPolicy, BatchResult>>& batches) {
    std::string csv = "slot,policy,seed,system_capacity_bps,direct_bps,relay_bps,jain_users_inst\n";
    for (const auto& [policy, batch] : batches) {
        for (std::size_t i = 0; i < batch.runs.size(); ++i) {
            const std::uint64_t seed = scenario.seeds[i];
            for (const SlotRecord& rec : batch.runs[i].slots) {
                double direct = 0.0, relay = 0.0;
                for (double r : rec.rates.direct_rate) direct += r;
                for (double r : rec.rates.effective_rate) relay += r;
                csv += std::to_string(rec.slot);
                csv += ',';
                csv += policy_name(policy);
                csv += ',';
                csv += std::to_string(seed);
                csv += ',';
                csv += format_double(rec.rates.system_capacity);
                csv += ',';
                csv += format_double(direct);
                csv += ',';
                csv += format_double(relay);
                csv += ',';
                csv += format_double(rec.jain_users_inst);
                csv += '\n';
            }
        }
    }
    return csv;
}

ordered_json json_mean_std(const MeanStd& ms) {
    return ordered_json{{"mean", ms.mean}, {"stddev", ms.stddev}};
}

ordered_json summary_json(const ScenarioConfig& scenario,
                          const std::vector<std::pair<SchedulerPolicy, BatchResult>>& batches) {
    ordered_json doc;
    for (const auto& [policy, batch] : batches) {
        ordered_json section;
        section["num_seeds"] = batch.aggregate.num_seeds;
        section["num_slots"] = scenario.num_slots;
        section["multi_round"] = scenario.multi_round;
        section["mean_system_capacity_bps"] = json_mean_std(batch.aggregate.mean_capacity);
        section["cumulative_capacity_bits"] = json_mean_std(batch.aggregate.cumulative_capacity);
        section["jain_users"] = json_mean_std(batch.aggregate.jain_users);
        section["jain_relays"] = json_mean_std(batch.aggregate.jain_relays);
        ordered_json per_seed = ordered_json::array();
        for (std::size_t i = 0; i < batch.runs.size(); ++i) {
            const RunSummary& s = batch.runs[i].summary;
            per_seed.push_back({{"seed", scenario.seeds[i]},
                                {"mean_system_capacity_bps", s.mean_system_capacity},
                                {"cumulative_capacity_bits", s.cumulative_capacity},
                                {"jain_users", s.jain_users},
                                {"jain_relays", s.jain_relays}});
        }
        section["per_seed"] = std::move(per_seed);
        doc[policy_name(policy)] = std::move(section);
    }

    if (batches.size() == 2) {
        const BatchResult* variance = nullptr;
        const BatchResult* maxsnr = nullptr;
        for (const auto& [policy, batch] : batches)
            (policy == SchedulerPolicy::RelayVariance ? variance : maxsnr) = &batch;
        if (variance && maxsnr) {
            int wins = 0;
            const std::size_t pairs = std::min(variance->runs.size(), maxsnr->runs.size());
            for (std::size_t i = 0; i < pairs; ++i)
                if (variance->runs[i].summary.jain_users > maxsnr->runs[i].summary.jain_users)
                    ++wins;
            doc["comparison"] = {
                {"cumulative_capacity_ratio", variance->aggregate.cumulative_capacity.mean /
                                                  maxsnr->aggregate.cumulative_capacity.mean},
                {"jain_users_mean_delta",
                 variance->aggregate.jain_users.mean - maxsnr->aggregate.jain_users.mean},
                {"paired_seeds", static_cast<int>(pairs)},
                {"jain_users_paired_wins", wins},
            };
        }
    }
    return doc;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string csv = "axis,value,policy,mean_capacity_bps,jain_users,jain_relays,stddev_capacity\n";
    for (const SweepRow& row : rows) {
        csv += sweep_axis_name(row.axis);
        csv += ',';
        csv += std::to_string(row.value);
        csv += ',';
        csv += policy_name(row.policy);
        csv += ',';
        csv += format_double(row.aggregate.mean_capacity.mean);
        csv += ',';
        csv += format_double(row.aggregate.jain_users.mean);
        csv += ',';
        csv += format_double(row.aggregate.jain_relays.mean);
        csv += ',';
        csv += format_double(row.aggregate.mean_capacity.stddev);
        csv += '\n';
    }
    return csv;
}

int report_error(const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
}

}  // namespace

int cmd_run(const RunFlags& flags) {
    try {
        const ScenarioConfig scenario = resolve_scenario(flags);
        RunOptions options;
        options.verify_constraints = flags.verify;

        std::vector<std::pair<SchedulerPolicy, BatchResult>> batches;
        for (SchedulerPolicy policy : scenario.policies)
            batches.emplace_back(policy, run_batch(scenario, policy, options));

        write_files_atomically(flags.out_dir,
                               {{"per_slot.csv", per_slot_csv(scenario, batches)},
                                {"summary.json", summary_json(scenario, batches).dump(2) + "\n"}});

        for (const auto& [policy, batch] : batches)
            std::cout << policy_name(policy) << ": mean capacity "
                      << format_double(batch.aggregate.mean_capacity.mean)
                      << " bit/s, jain users " << format_double(batch.aggregate.jain_users.mean)
                      << ", jain relays " << format_double(batch.aggregate.jain_relays.mean)
                      << " (" << batch.aggregate.num_seeds << " seeds x " << scenario.num_slots
                      << " slots)\n";
        std::cout << "wrote " << (fs::path(flags.out_dir) / "per_slot.csv").string() << ", "
                  << (fs::path(flags.out_dir) / "summary.json").string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        return report_error(e);
    }
}

int cmd_sweep(const SweepFlags& flags) {
    try {
        const ScenarioConfig scenario = resolve_scenario(flags.base);
        RunOptions options;
        options.verify_constraints = flags.base.verify;

        SweepAxis axis;
        if (flags.axis == "relays") axis = SweepAxis::Relays;
        else if (flags.axis == "users") axis = SweepAxis::Users;
        else throw ParseError("--axis must be 'relays' or 'users', got '" + flags.axis + "'");
        if (flags.values.empty()) throw ParseError("--values must be nonempty");

        const std::vector<SweepRow> rows = sweep(scenario, axis, flags.values, options);
        write_files_atomically(flags.base.out_dir, {{"sweep.csv", sweep_csv(rows)}});

        std::cout << "wrote " << (fs::path(flags.base.out_dir) / "sweep.csv").string() << " ("
                  << rows.size() << " rows)\n";
        return 0;
    } catch (const std::exception& e) {
        return report_error(e);
    }
}

int cmd_oracle() {
    try {
        // Two users, two subchannels, no relays. Per-subchannel direct SNRs:
        // user 0 sees {60, 10}, user 1 sees {80, 70}. Greedy best-SNR serves
        // user 1 first and collects 80 + 10 = 90; variance order serves user 0
        // first and collects 60 + 70 = 130.
        ChannelRealization fixture(2, 2, 0);
        const double snr[2][2] = {{60.0, 10.0}, {80.0, 70.0}};
        for (UserId m = 0; m < 2; ++m)
            for (SubchannelId n = 0; n < 2; ++n)
                for (int subslot = 0; subslot < 2; ++subslot)
                    fixture.set_direct(n, m, subslot, snr[m][n]);

        ScenarioConfig scenario = default_scenario();
        scenario.system.num_subchannels = 2;
        scenario.topology = {2, 0};
        scenario.num_slots = 1;
        scenario.seeds = {0};

        RunOptions options;
        options.verify_constraints = true;
        options.fixed_realization = &fixture;

        const double variance_sum =
            run(scenario, SchedulerPolicy::RelayVariance, 0, options).slots[0].digest.assigned_snr_sum;
        const double maxsnr_sum =
            run(scenario, SchedulerPolicy::RelayMaxSnr, 0, options).slots[0].digest.assigned_snr_sum;

        std::cout << "variance: " << format_double(variance_sum) << ", maxsnr: "
                  << format_double(maxsnr_sum) << '\n';
        if (variance_sum == 130.0 && maxsnr_sum == 90.0) return 0;
        std::cerr << "expected variance: 130, maxsnr: 90\n";
        return 1;
    } catch (const std::exception& e) {
        return report_error(e);
    }
}

}  // namespace relaysim
