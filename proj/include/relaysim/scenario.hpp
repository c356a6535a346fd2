#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relaysim/sim.hpp"

namespace relaysim {

// Scenario document or flag parsing failure; the message carries line/key context.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The documented default scenario: 10 MHz over 128 subchannels, 10 users,
// 6 relays, 10 (linear) mean SNR on every link class, 1000 slots, seeds 1..20,
// both policies.
ScenarioConfig default_scenario();

// Parses an INI-style scenario document with [system], [topology], [channel]
// and [run] sections. Missing keys keep the defaults above; unknown keys, bad
// values and invariant violations raise ParseError with line context.
ScenarioConfig parse_scenario(std::string_view text);

// Seed list syntax: comma-separated integers or a..b ranges, e.g. "1..20" or "3,9..11".
std::vector<std::uint64_t> parse_seed_spec(std::string_view spec);

// "variance" | "maxsnr" | "both"
std::vector<SchedulerPolicy> parse_policy_selection(std::string_view name);

}  // namespace relaysim
