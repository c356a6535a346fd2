#include "relaysim/scenario.hpp"

#include <cctype>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <string>

namespace relaysim {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw ParseError("line " + std::to_string(line) + ": " + message);
}

double parse_double(std::string_view value, int line, std::string_view key) {
    const std::string buf(value);
    char* end = nullptr;
    errno = 0;
    const double out = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty() || errno == ERANGE)
        fail(line, "key '" + std::string(key) + "': expected a number, got '" + buf + "'");
    return out;
}

int parse_int(std::string_view value, int line, std::string_view key) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        fail(line, "key '" + std::string(key) + "': expected an integer, got '" +
                       std::string(value) + "'");
    return out;
}

bool parse_bool(std::string_view value, int line, std::string_view key) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail(line, "key '" + std::string(key) + "': expected true/false, got '" + std::string(value) +
                   "'");
}

std::uint64_t parse_u64(std::string_view value) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ParseError("seed spec: expected an unsigned integer, got '" + std::string(value) +
                         "'");
    return out;
}

}  // namespace

ScenarioConfig default_scenario() {
    ScenarioConfig scenario;
    scenario.seeds.resize(20);
    std::iota(scenario.seeds.begin(), scenario.seeds.end(), 1);
    return scenario;
}

std::vector<std::uint64_t> parse_seed_spec(std::string_view spec) {
    std::vector<std::uint64_t> seeds;
    std::string_view rest = trim(spec);
    if (rest.empty()) throw ParseError("seed spec: empty");
    while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        std::string_view item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty()) throw ParseError("seed spec: empty list entry");
        const std::size_t dots = item.find("..");
        if (dots == std::string_view::npos) {
            seeds.push_back(parse_u64(item));
            continue;
        }
        const std::uint64_t lo = parse_u64(trim(item.substr(0, dots)));
        const std::uint64_t hi = parse_u64(trim(item.substr(dots + 2)));
        if (hi < lo) throw ParseError("seed spec: descending range '" + std::string(item) + "'");
        for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    }
    return seeds;
}

std::vector<SchedulerPolicy> parse_policy_selection(std::string_view name) {
    if (name == "variance") return {SchedulerPolicy::RelayVariance};
    if (name == "maxsnr") return {SchedulerPolicy::RelayMaxSnr};
    if (name == "both") return {SchedulerPolicy::RelayVariance, SchedulerPolicy::RelayMaxSnr};
    throw ParseError("policy: expected variance, maxsnr or both, got '" + std::string(name) + "'");
}

ScenarioConfig parse_scenario(std::string_view text) {
    ScenarioConfig scenario = default_scenario();
    std::string section;
    int line_no = 0;

    std::string_view rest = text;
    while (!rest.empty()) {
        const std::size_t eol = rest.find('\n');
        std::string_view line = rest.substr(0, eol);
        rest = eol == std::string_view::npos ? std::string_view{} : rest.substr(eol + 1);
        ++line_no;

        const std::size_t comment = line.find('#');
        if (comment != std::string_view::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "system" && section != "topology" && section != "channel" &&
                section != "run")
                fail(line_no, "unknown section '" + section + "'");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (section.empty()) fail(line_no, "key '" + key + "' appears before any section");

        if (section == "system") {
            SystemConfig& sys = scenario.system;
            if (key == "bandwidth_hz") sys.bandwidth_hz = parse_double(value, line_no, key);
            else if (key == "num_subchannels") sys.num_subchannels = parse_int(value, line_no, key);
            else if (key == "total_power_w") sys.total_power_w = parse_double(value, line_no, key);
            else if (key == "relay_power_w") sys.relay_power_w = parse_double(value, line_no, key);
            else if (key == "ber_target") sys.ber_target = parse_double(value, line_no, key);
            else if (key == "noise_psd") sys.noise_psd = parse_double(value, line_no, key);
            else if (key == "avg_window") sys.avg_window = parse_int(value, line_no, key);
            else if (key == "symbols_per_subframe")
                sys.symbols_per_subframe = parse_int(value, line_no, key);
            else fail(line_no, "unknown key '" + key + "' in [system]");
        } else if (section == "topology") {
            if (key == "num_users") scenario.topology.num_users = parse_int(value, line_no, key);
            else if (key == "num_relays")
                scenario.topology.num_relays = parse_int(value, line_no, key);
            else fail(line_no, "unknown key '" + key + "' in [topology]");
        } else if (section == "channel") {
            ChannelParams& ch = scenario.channel;
            if (key == "mean_snr_direct") ch.mean_snr_direct = parse_double(value, line_no, key);
            else if (key == "mean_snr_first_hop")
                ch.mean_snr_first_hop = parse_double(value, line_no, key);
            else if (key == "mean_snr_second_hop")
                ch.mean_snr_second_hop = parse_double(value, line_no, key);
            else fail(line_no, "unknown key '" + key + "' in [channel]");
        } else {
            if (key == "num_slots") scenario.num_slots = parse_int(value, line_no, key);
            else if (key == "seeds") {
                try {
                    scenario.seeds = parse_seed_spec(value);
                } catch (const ParseError& e) {
                    fail(line_no, e.what());
                }
            } else if (key == "policy") {
                try {
                    scenario.policies = parse_policy_selection(value);
                } catch (const ParseError& e) {
                    fail(line_no, e.what());
                }
            } else if (key == "multi_round")
                scenario.multi_round = parse_bool(value, line_no, key);
            else fail(line_no, "unknown key '" + key + "' in [run]");
        }
    }

    if (auto err = validate_config(scenario.system, scenario.topology))
        throw ParseError("invalid scenario: " + *err);
    if (scenario.num_slots < 1) throw ParseError("invalid scenario: num_slots must be at least 1");
    if (scenario.seeds.empty()) throw ParseError("invalid scenario: seeds must be nonempty");
    if (!(scenario.channel.mean_snr_direct > 0.0 && scenario.channel.mean_snr_first_hop > 0.0 &&
          scenario.channel.mean_snr_second_hop > 0.0))
        throw ParseError("invalid scenario: mean SNRs must be positive");
    return scenario;
}

}  // namespace relaysim
