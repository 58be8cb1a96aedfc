/*
 * Copyright 2026 The tasdn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tasdn/controller/controller.hpp"
#include "tasdn/ids/ids.hpp"
#include "tasdn/topology/topology.hpp"

namespace tasdn::scenario {

using net::ChannelKind;
using net::Protocol;
using net::SimTime;

inline constexpr int kFormatVersion = 1;

enum class IdsMode : std::uint8_t { Inline, Async };

/// Constant-rate flow. ICMP flows are echo requests; the receiver answers each.
struct TrafficFlow {
    std::string src;  // host name (H3) or ip
    std::string dst;
    SimTime start;
    std::optional<SimTime> stop;
    double rate_pps = 100.0;
    std::uint32_t size_bytes = 98;
    Protocol protocol = Protocol::Icmp;

    bool operator==(const TrafficFlow&) const = default;
};

/// One flow per disjoint host pair (H1->H2, H3->H4, ...), sized to the topology.
struct PairsPattern {
    SimTime start;
    std::optional<SimTime> stop;
    double rate_pps = 100.0;
    std::uint32_t size_bytes = 98;
    Protocol protocol = Protocol::Icmp;

    bool operator==(const PairsPattern&) const = default;
};

struct Directive {
    enum class Kind : std::uint8_t { FailLink, RestoreLink, SetTrust, SetPenalty, SetRecovery, SetThreshold };
    Kind kind = Kind::FailLink;
    SimTime at;
    std::string target;  // host for link directives, node for set_trust
    ChannelKind channel = ChannelKind::Primary;
    ids::FindingKind finding = ids::FindingKind::RateAnomaly;
    double value = 0.0;

    bool operator==(const Directive&) const = default;
};

std::string_view to_string(Directive::Kind k);

struct ScenarioConfig {
    int version = kFormatVersion;
    std::string name = "scenario";
    std::uint64_t seed = 1;
    SimTime duration{20'000'000};
    topology::TopologySpec topology;

    SimTime control_latency{500};
    SimTime detection_delay{1000};
    std::uint32_t control_msg_bytes = 128;
    double threshold = controller::kDefaultThreshold;
    double initial_trust = controller::kInitialTrust;
    controller::QuarantineMode quarantine_mode = controller::QuarantineMode::Redirect;
    std::optional<SimTime> idle_timeout;

    IdsMode ids_mode = IdsMode::Async;
    // Mirror every rule-forwarded payload packet to the IDS, not only packet-ins.
    bool ids_tap_all = true;
    ids::IdsConfig ids;

    std::vector<TrafficFlow> traffic;
    std::optional<PairsPattern> pairs;
    std::vector<Directive> directives;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Checks the config against itself and its topology size. Throws
/// ValidationError naming the violated invariant.
void validate(const ScenarioConfig& config);

/// Throws ParseError (with line) on malformed input, ValidationError on a
/// well-formed but invalid scenario.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Emits the canonical form; parse_scenario(serialize(c)) == c.
std::string serialize(const ScenarioConfig& config);

/// Traffic after expanding the pairs pattern for the configured host count.
std::vector<TrafficFlow> expanded_traffic(const ScenarioConfig& config);

}  // namespace tasdn::scenario
