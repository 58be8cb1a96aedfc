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

#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "tasdn/net/types.hpp"

namespace tasdn::net {

struct PortBinding {
    LinkId link = 0;
    // Direction a frame leaving the switch through this port travels on the link.
    Direction egress = Direction::Down;
    // Host-facing port (as opposed to an inter-switch or IDS/controller port).
    bool edge = false;
    std::string peer;
};

struct ForwardTo {
    PortId out_port;
    bool operator==(const ForwardTo&) const = default;
};
struct FloodTo {
    std::vector<PortId> ports;
    bool operator==(const FloodTo&) const = default;
};
struct EscalatePacketIn {
    bool operator==(const EscalatePacketIn&) const = default;
};
using ForwardAction = std::variant<ForwardTo, FloodTo, EscalatePacketIn>;

struct SwitchState {
    SwitchId id = SwitchId::S1;
    std::map<PortId, PortBinding> ports;
    // Keyed by (match, priority): at most one rule each.
    std::map<std::pair<FlowMatch, int>, FlowRule> flow_table;
    std::map<Ip, PortId> mac_ip_table;

    bool has_port(PortId p) const { return ports.count(p) != 0; }

    /// Highest-priority rule for the match, if any.
    const FlowRule* lookup(const FlowMatch& match) const;

    /// Returns true if the rule was added, false for an identical re-install.
    /// Throws DuplicateRule on a conflicting action at the same (match,
    /// priority) and std::out_of_range if out_port is not on this switch.
    bool install(const FlowRule& rule);

    /// Removes every rule satisfying pred and returns them.
    std::vector<FlowRule> remove_if(const std::function<bool(const FlowRule&)>& pred);

    std::vector<PortId> edge_ports() const;
};

/// Data-plane decision for a frame entering on in_port. Learns src_ip ->
/// in_port, then: rule hit -> Forward; ARP miss -> Flood (all ports but
/// in_port); anything else -> PacketIn. Updates the hit rule's last_hit to t.
/// Throws std::out_of_range if in_port does not exist.
ForwardAction switch_forward(SwitchState& sw, const Packet& packet, PortId in_port, SimTime t);

}  // namespace tasdn::net
