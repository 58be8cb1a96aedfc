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

#include <array>
#include <optional>
#include <string>

#include "tasdn/net/types.hpp"
#include "tasdn/sim/rng.hpp"

namespace tasdn::net {

struct TxOutcome {
    enum class Kind : std::uint8_t { Delivered, Lost, LinkDown };
    Kind kind = Kind::LinkDown;
    // Valid for Delivered and Lost (the instant the frame would have arrived).
    SimTime arrival;

    bool delivered() const { return kind == Kind::Delivered; }
};

std::string_view to_string(TxOutcome::Kind k);

/// Single-frame transmission starting at `t` on an idle link: LinkDown if the
/// link is down, otherwise a Bernoulli(loss_p) drop, otherwise delivery at
/// t + prop_delay + ceil(8 * size / bw). Appends the channel to the packet's
/// trace on delivery.
TxOutcome transmit(Packet& packet, const LinkSpec& link, Direction direction, SimTime t, sim::RngStream& rng);

struct LinkStateChange {
    LinkId link = 0;
    LinkState state = LinkState::Up;
    SimTime occurred_at;
    SimTime notify_at;
};

/// A link instance with its own loss stream and per-direction FIFO occupancy.
class Link {
public:
    Link(LinkId id, std::string name, std::string lower, std::string upper, LinkSpec spec, std::uint64_t seed);

    LinkId id() const { return id_; }
    const std::string& name() const { return name_; }
    const std::string& lower() const { return lower_; }
    const std::string& upper() const { return upper_; }
    const LinkSpec& spec() const { return spec_; }
    LinkSpec& mutable_spec() { return spec_; }
    bool up() const { return spec_.state == LinkState::Up; }

    /// Queues the frame behind whatever is still serializing in that direction.
    TxOutcome send(Packet& packet, Direction direction, SimTime t);

    /// Applies a state change at t. Returns the controller notification, or
    /// nothing if the link was already in that state.
    std::optional<LinkStateChange> set_state(LinkState state, SimTime t, SimTime detection_delay);

    SimTime busy_until(Direction d) const { return busy_until_[static_cast<std::size_t>(d)]; }

private:
    LinkId id_;
    std::string name_;
    std::string lower_;
    std::string upper_;
    LinkSpec spec_;
    sim::RngStream rng_;
    std::array<SimTime, 2> busy_until_{};
};

}  // namespace tasdn::net
