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
#include <optional>
#include <vector>

#include "tasdn/controller/controller.hpp"
#include "tasdn/net/link.hpp"
#include "tasdn/net/types.hpp"

namespace tasdn::metrics {

using controller::HostPair;
using net::ChannelKind;
using net::Ip;
using net::SimTime;

/// How a frame came to be put on a link.
enum class HopAuth : std::uint8_t { HostEgress, Rule, PacketOut, ArpFlood };

struct HopRecord {
    SimTime sent_at;
    SimTime arrival;
    std::uint64_t pkt_id = 0;
    net::LinkId link = 0;
    ChannelKind channel = ChannelKind::Core;
    net::TxOutcome::Kind outcome = net::TxOutcome::Kind::Delivered;
    bool payload = false;
    HopAuth auth = HopAuth::HostEgress;
    Ip src_ip;
    Ip dst_ip;
    // The primary rule matching (src, dst) existed at the egress switch.
    bool primary_rule_present = false;
};

struct DeliveryRecord {
    SimTime at;
    std::uint64_t pkt_id = 0;
    Ip src_ip;
    Ip dst_ip;
    SimTime created_at;
    std::vector<ChannelKind> channels;

    bool used(ChannelKind c) const;
};

struct TriggerRecord {
    enum class Kind : std::uint8_t { LinkDown, TrustDrop, Readmission };
    std::uint64_t id = 0;
    Kind kind = Kind::LinkDown;
    SimTime at;
    Ip ip;
    std::vector<HostPair> affected;
};

struct RuleInstallRecord {
    SimTime requested_at;
    SimTime completed_at;
    net::SwitchId sw = net::SwitchId::S1;
    net::FlowMatch match;
    ChannelKind channel = ChannelKind::Primary;
    std::optional<std::uint64_t> trigger_id;
    // Set for installs answering a table miss; the miss instant is `miss_at`.
    bool from_packet_in = false;
    SimTime miss_at;
    bool idempotent = false;
};

struct PacketInRecord {
    SimTime at;
    std::uint64_t pkt_id = 0;
    Ip src_ip;
    Ip dst_ip;
    net::SwitchId sw = net::SwitchId::S1;
};

struct DropRecord {
    SimTime at;
    std::uint64_t pkt_id = 0;
    Ip src_ip;
    Ip dst_ip;
};

/// A threshold crossing as seen by the IDS; `at` is when it was caused.
struct CrossingRecord {
    SimTime at;
    Ip ip;
    double old_score = 0;
    double new_score = 0;
    bool downward = false;
};

/// Time from which the controller's quarantine actions for `ip` take effect.
struct EnforcementRecord {
    SimTime at;
    Ip ip;
};

/// Typed measurement log of one run. KPIs are computed from it after the run.
struct Journal {
    int n_hosts = 0;
    SimTime end;
    std::vector<HopRecord> hops;
    std::vector<DeliveryRecord> deliveries;
    std::vector<TriggerRecord> triggers;
    std::vector<RuleInstallRecord> installs;
    std::vector<PacketInRecord> packet_ins;
    std::vector<DropRecord> drops;
    std::vector<CrossingRecord> crossings;
    std::vector<EnforcementRecord> enforcements;
};

}  // namespace tasdn::metrics
