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

#include "tasdn/net/link.hpp"

#include <algorithm>
#include <string>

#include "tasdn/sim/errors.hpp"

namespace tasdn::net {

std::string_view to_string(ChannelKind c) {
    switch (c) {
        case ChannelKind::Primary: return "primary";
        case ChannelKind::Fallback: return "fallback";
        case ChannelKind::Core: return "core";
    }
    return "?";
}

std::string_view to_string(LinkState s) { return s == LinkState::Up ? "up" : "down"; }
std::string_view to_string(Direction d) { return d == Direction::Up ? "up" : "down"; }

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::Arp: return "arp";
        case Protocol::Icmp: return "icmp";
        case Protocol::Ipv4Data: return "ipv4";
    }
    return "?";
}

std::string_view to_string(SwitchId s) {
    switch (s) {
        case SwitchId::S1: return "S1";
        case SwitchId::S2: return "S2";
        case SwitchId::S3: return "S3";
    }
    return "?";
}

std::string_view to_string(NodeRole r) {
    switch (r) {
        case NodeRole::Host: return "host";
        case NodeRole::Ids: return "ids";
        case NodeRole::Controller: return "controller";
    }
    return "?";
}

std::optional<ChannelKind> parse_channel(std::string_view s) {
    if (s == "primary") return ChannelKind::Primary;
    if (s == "fallback") return ChannelKind::Fallback;
    if (s == "core") return ChannelKind::Core;
    return std::nullopt;
}

std::optional<Protocol> parse_protocol(std::string_view s) {
    if (s == "arp") return Protocol::Arp;
    if (s == "icmp") return Protocol::Icmp;
    if (s == "ipv4") return Protocol::Ipv4Data;
    return std::nullopt;
}

std::string_view to_string(TxOutcome::Kind k) {
    switch (k) {
        case TxOutcome::Kind::Delivered: return "delivered";
        case TxOutcome::Kind::Lost: return "lost";
        case TxOutcome::Kind::LinkDown: return "linkdown";
    }
    return "?";
}

LinkSpec LinkSpec::defaults(ChannelKind channel) {
    LinkSpec s;
    s.channel = channel;
    switch (channel) {
        case ChannelKind::Primary:
            s.down_bps = 50'000'000;
            s.up_bps = 10'000'000;
            s.loss_p = 0.015;
            s.prop_delay = SimTime{2000};
            break;
        case ChannelKind::Fallback:
            s.down_bps = 5'000'000;
            s.up_bps = 1'000'000;
            s.loss_p = 0.06;
            s.prop_delay = SimTime{500};
            break;
        case ChannelKind::Core:
            s.down_bps = 1'000'000'000;
            s.up_bps = 200'000'000;
            s.loss_p = 0.01;
            s.prop_delay = SimTime{50};
            break;
    }
    return s;
}

void LinkSpec::validate() const {
    if (down_bps <= 0 || up_bps <= 0) {
        throw InvalidSpec("link bandwidth must be positive");
    }
    if (!(loss_p >= 0.0 && loss_p < 1.0)) {
        throw InvalidSpec("link loss probability must lie in [0, 1)");
    }
    if (prop_delay < SimTime::zero()) {
        throw InvalidSpec("link propagation delay must be non-negative");
    }
}

SimTime serialization_delay(std::uint32_t bytes, std::int64_t bps) {
    const std::int64_t bit_us = static_cast<std::int64_t>(bytes) * 8 * 1'000'000;
    return SimTime{(bit_us + bps - 1) / bps};
}

TxOutcome transmit(Packet& packet, const LinkSpec& link, Direction direction, SimTime t, sim::RngStream& rng) {
    if (link.state == LinkState::Down) {
        return TxOutcome{TxOutcome::Kind::LinkDown, t};
    }
    const SimTime arrival = t + link.prop_delay + serialization_delay(packet.size, link.bandwidth(direction));
    if (rng.bernoulli(link.loss_p)) {
        return TxOutcome{TxOutcome::Kind::Lost, arrival};
    }
    packet.channel_trace.push_back(link.channel);
    return TxOutcome{TxOutcome::Kind::Delivered, arrival};
}

Link::Link(LinkId id, std::string name, std::string lower, std::string upper, LinkSpec spec, std::uint64_t seed)
    : id_(id),
      name_(std::move(name)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      spec_(spec),
      rng_(seed, "link/" + name_) {}

TxOutcome Link::send(Packet& packet, Direction direction, SimTime t) {
    auto& busy = busy_until_[static_cast<std::size_t>(direction)];
    if (!up()) {
        return transmit(packet, spec_, direction, t, rng_);
    }
    const SimTime start = std::max(t, busy);
    busy = start + serialization_delay(packet.size, spec_.bandwidth(direction));
    return transmit(packet, spec_, direction, start, rng_);
}

std::optional<LinkStateChange> Link::set_state(LinkState state, SimTime t, SimTime detection_delay) {
    if (spec_.state == state) return std::nullopt;
    spec_.state = state;
    if (state == LinkState::Down) {
        busy_until_ = {};
    }
    return LinkStateChange{id_, state, t, t + detection_delay};
}

}  // namespace tasdn::net
