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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tasdn/sim/time.hpp"

namespace tasdn::net {

using sim::SimTime;

/// Dotted-quad IPv4 address; trust is keyed by it.
using Ip = std::string;
using PortId = int;
using LinkId = int;

enum class NodeRole : std::uint8_t { Host, Ids, Controller };

struct NodeAddress {
    int node_id = 0;
    Ip ip;
    NodeRole role = NodeRole::Host;
    std::string name;
};

enum class ChannelKind : std::uint8_t { Primary, Fallback, Core };
enum class LinkState : std::uint8_t { Up, Down };

/// Up is from the link's lower endpoint (host, aggregation switch, IDS or
/// controller) toward the switch above it; Down is the reverse.
enum class Direction : std::uint8_t { Up, Down };

enum class Protocol : std::uint8_t { Arp, Icmp, Ipv4Data };

enum class SwitchId : std::uint8_t { S1, S2, S3 };

std::string_view to_string(ChannelKind c);
std::string_view to_string(LinkState s);
std::string_view to_string(Direction d);
std::string_view to_string(Protocol p);
std::string_view to_string(SwitchId s);
std::string_view to_string(NodeRole r);

std::optional<ChannelKind> parse_channel(std::string_view s);
std::optional<Protocol> parse_protocol(std::string_view s);

struct LinkSpec {
    std::int64_t down_bps = 0;
    std::int64_t up_bps = 0;
    SimTime prop_delay;
    double loss_p = 0.0;
    ChannelKind channel = ChannelKind::Core;
    LinkState state = LinkState::Up;

    std::int64_t bandwidth(Direction d) const { return d == Direction::Up ? up_bps : down_bps; }

    /// Table defaults: Primary 50M/10M 1.5%, Fallback 5M/1M 6%, Core 1G/200M 1%.
    static LinkSpec defaults(ChannelKind channel);

    /// Throws InvalidSpec unless bandwidths > 0 and 0 <= loss_p < 1.
    void validate() const;

    bool operator==(const LinkSpec&) const = default;
};

/// Serialization time of `bytes` at `bps`, rounded up to whole microseconds.
SimTime serialization_delay(std::uint32_t bytes, std::int64_t bps);

struct Packet {
    std::uint64_t pkt_id = 0;
    Ip src_ip;
    Ip dst_ip;
    Protocol protocol = Protocol::Ipv4Data;
    std::uint32_t size = 0;
    SimTime created_at;
    std::vector<ChannelKind> channel_trace;
    // ICMP echo reply (no further reply is generated on delivery).
    bool is_reply = false;

    bool is_payload() const { return protocol != Protocol::Arp; }
};

struct FlowMatch {
    Ip src_ip;
    Ip dst_ip;

    auto operator<=>(const FlowMatch&) const = default;
    bool touches(const Ip& ip) const { return src_ip == ip || dst_ip == ip; }
    FlowMatch reversed() const { return FlowMatch{dst_ip, src_ip}; }
};

struct FlowRule {
    FlowMatch match;
    PortId out_port = 0;
    ChannelKind channel = ChannelKind::Primary;
    int priority = 10;
    SimTime installed_at;
    std::optional<SimTime> idle_timeout;
    SimTime last_hit;

    /// Same forwarding behaviour (timestamps ignored).
    bool same_action(const FlowRule& o) const {
        return match == o.match && out_port == o.out_port && channel == o.channel && priority == o.priority;
    }
};

}  // namespace tasdn::net
