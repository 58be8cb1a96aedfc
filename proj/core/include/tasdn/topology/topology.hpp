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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tasdn/net/link.hpp"
#include "tasdn/net/switch.hpp"
#include "tasdn/net/types.hpp"

namespace tasdn::topology {

using net::ChannelKind;
using net::Ip;
using net::LinkId;
using net::PortId;
using net::SwitchId;

struct TopologySpec {
    int n_hosts = 15;
    std::map<ChannelKind, net::LinkSpec> link_overrides;
    std::uint64_t seed = 1;

    net::LinkSpec link_spec(ChannelKind c) const;
    bool operator==(const TopologySpec&) const = default;
};

struct HostAttachment {
    net::NodeAddress address;
    LinkId primary_link = -1;
    LinkId fallback_link = -1;
    PortId s1_port = -1;
    PortId s2_port = -1;
};

/// Built network. Ports on S1 and S2: 1..n for hosts H1..Hn, n+1 toward S3.
/// S3: 1 -> S1, 2 -> S2, 3 -> IDS, 4 -> controller.
struct Network {
    std::vector<HostAttachment> hosts;
    net::NodeAddress ids;
    net::NodeAddress controller;
    std::vector<net::Link> links;
    std::map<SwitchId, net::SwitchState> switches;
    LinkId s1_s3_link = -1;
    LinkId s2_s3_link = -1;
    LinkId ids_link = -1;
    LinkId controller_link = -1;

    const HostAttachment* host_by_ip(const Ip& ip) const;
    const HostAttachment* host_by_name(const std::string& name) const;
    net::Link& link(LinkId id) { return links.at(static_cast<std::size_t>(id)); }
    const net::Link& link(LinkId id) const { return links.at(static_cast<std::size_t>(id)); }
    net::SwitchState& sw(SwitchId id) { return switches.at(id); }
    const net::SwitchState& sw(SwitchId id) const { return switches.at(id); }

    /// Host name ("H3") or dotted-quad to ip; nullopt if neither matches.
    std::optional<Ip> resolve(const std::string& host_or_ip) const;
};

std::string host_ip(int index);  // 10.0.0.<index>, index is 1-based
inline const Ip kIdsIp = "10.0.1.1";
inline const Ip kControllerIp = "10.0.1.2";

/// Throws InvalidSpec if n_hosts < 2 or an override is invalid.
Network build(const TopologySpec& spec);

struct Violation {
    enum class Kind : std::uint8_t {
        MissingPrimary,
        MissingFallback,
        WrongChannel,
        DuplicateIp,
        MissingCoreLink,
        BadRoleCount,
        DanglingPort,
    };
    Kind kind;
    std::string element;

    bool operator==(const Violation&) const = default;
};

std::string_view to_string(Violation::Kind k);

std::vector<Violation> validate(const Network& network);

/// One line per node, switch port and link.
void export_text(const Network& network, std::ostream& os);

}  // namespace tasdn::topology
