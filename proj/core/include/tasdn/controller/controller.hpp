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
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "tasdn/controller/trust_table.hpp"
#include "tasdn/net/switch.hpp"
#include "tasdn/net/types.hpp"

namespace tasdn::controller {

using net::ChannelKind;
using net::FlowMatch;
using net::FlowRule;
using net::LinkId;
using net::LinkState;
using net::PortId;
using net::SimTime;
using net::SwitchId;

enum class GateDecision : std::uint8_t { PermitPrimary, Quarantine };

/// Primary use requires both endpoints at or above the threshold.
GateDecision trust_gate(double src_score, double dst_score, double threshold);

enum class QuarantineMode : std::uint8_t { Redirect, DropAll };

struct InstallFlow {
    SwitchId sw;
    FlowRule rule;
    // The controller already had this exact rule on record.
    bool idempotent = false;
};

/// Removes rules on `sw` of the given channel whose match touches any of `touching`.
struct DeleteFlows {
    SwitchId sw;
    ChannelKind channel;
    std::vector<Ip> touching;

    bool matches(const FlowRule& rule) const;
};

struct DropPacket {
    SwitchId sw;
    std::uint64_t pkt_id;
};

struct ForwardPacket {
    SwitchId sw;
    std::uint64_t pkt_id;
    PortId out_port;
};

struct MirrorToIds {
    std::uint64_t pkt_id;
};

/// Packet-out on the listed ports of `sw`; used while the destination is unknown.
struct FloodPacket {
    SwitchId sw;
    std::uint64_t pkt_id;
    std::vector<PortId> ports;
};

using ControlAction = std::variant<InstallFlow, DeleteFlows, DropPacket, ForwardPacket, MirrorToIds, FloodPacket>;

std::string describe(const ControlAction& action);

struct PacketInMeta {
    std::uint64_t pkt_id = 0;
    Ip src_ip;
    Ip dst_ip;
    net::Protocol protocol = net::Protocol::Icmp;
    PortId in_port = 0;
    SwitchId sw = SwitchId::S1;
};

/// Where a host attaches; known to the controller from topology discovery.
struct HostBinding {
    PortId s1_port = -1;
    PortId s2_port = -1;
    LinkId primary_link = -1;
    LinkId fallback_link = -1;
};

struct ControllerConfig {
    double threshold = kDefaultThreshold;
    double initial_trust = kInitialTrust;
    SimTime control_latency{500};
    QuarantineMode quarantine_mode = QuarantineMode::Redirect;
    std::optional<SimTime> idle_timeout;
    int rule_priority = 10;
};

struct InstallAck {
    SimTime requested_at;
    SimTime completes_at;
    bool idempotent = false;
};

struct DecisionRecord {
    SimTime at;
    std::string event;
    Ip src_ip;
    Ip dst_ip;
    std::optional<double> src_trust;
    std::optional<double> dst_trust;
    std::string decision;
    std::vector<ControlAction> actions;
};

/// Unordered host pair, stored with the smaller ip first.
struct HostPair {
    Ip a;
    Ip b;
    static HostPair of(const Ip& x, const Ip& y) { return x < y ? HostPair{x, y} : HostPair{y, x}; }
    auto operator<=>(const HostPair&) const = default;
};

/// Trust-aware control plane. A deterministic state machine: every entry
/// point returns the action list for the engine to apply; the controller's
/// mirror of the switch flow tables is updated as actions are emitted.
class Controller {
public:
    Controller(ControllerConfig config, std::map<Ip, HostBinding> hosts, std::set<SwitchId> switches,
               std::map<SwitchId, SimTime> flow_mod_transit);

    const ControllerConfig& config() const { return config_; }
    TrustTable& trust() { return trust_; }
    const TrustTable& trust() const { return trust_; }

    /// Packet-in handling. Always mirrors to the IDS first, then gates on trust.
    /// Throws UnknownSwitch if meta.sw is not part of the topology.
    std::vector<ControlAction> on_packet_in(const PacketInMeta& meta, SimTime t);

    /// Applies new_score to the controller's table and reacts to a downward
    /// threshold crossing. Upward crossings never restore primary rules.
    std::vector<ControlAction> on_trust_change(const Ip& ip, double old_score, double new_score, SimTime t);

    /// Primary-link failure of a host; other links are a logged no-op.
    std::vector<ControlAction> on_link_down(LinkId link, SimTime t);
    std::vector<ControlAction> on_link_up(LinkId link, SimTime t);

    /// Records the rule in the controller's view of `sw`. Throws DuplicateRule
    /// on a conflicting action at the same (match, priority).
    InstallAck install_flow(const FlowRule& rule, SwitchId sw, SimTime t);

    /// Switch-reported removal (idle expiry).
    void flow_removed(SwitchId sw, const FlowRule& rule);

    /// (src, dst, channel) for every rule the controller has installed.
    std::set<std::tuple<Ip, Ip, ChannelKind>> pending_flows() const;
    const std::map<std::pair<FlowMatch, int>, FlowRule>& rules(SwitchId sw) const;

    /// Host pairs with at least one rule of `channel` touching ip.
    std::set<HostPair> active_pairs(const Ip& ip, ChannelKind channel) const;

    std::optional<ChannelKind> last_channel(const HostPair& pair) const;
    bool link_up(LinkId link) const;
    const std::optional<std::pair<SwitchId, PortId>> location(const Ip& ip) const;
    SimTime flow_mod_transit(SwitchId sw) const { return flow_mod_transit_.at(sw); }

    const std::vector<DecisionRecord>& decisions() const { return decisions_; }

private:
    std::vector<ControlAction> reroute_to_fallback(const std::set<HostPair>& pairs, const std::vector<Ip>& touching,
                                                   SimTime t, bool redirect, std::optional<DropPacket> drop);
    bool redirect() const { return config_.quarantine_mode == QuarantineMode::Redirect; }
    void emit_install(std::vector<ControlAction>& out, SwitchId sw, const FlowMatch& match, PortId port,
                      ChannelKind channel, SimTime t);
    void emit_delete(std::vector<ControlAction>& out, const DeleteFlows& del);
    bool primary_usable(const Ip& ip) const;
    std::optional<LinkId> host_of_primary(LinkId link, Ip* ip) const;

    ControllerConfig config_;
    TrustTable trust_;
    std::map<Ip, HostBinding> hosts_;
    std::set<SwitchId> switches_;
    std::map<SwitchId, SimTime> flow_mod_transit_;
    std::map<Ip, std::pair<SwitchId, PortId>> host_locations_;
    std::map<LinkId, LinkState> link_status_;
    std::map<SwitchId, std::map<std::pair<FlowMatch, int>, FlowRule>> rules_;
    std::map<HostPair, ChannelKind> last_channel_;
    std::vector<DecisionRecord> decisions_;
};

/// `time_us,event,src_ip,dst_ip,src_trust,dst_trust,decision,actions`
void write_decision_log(const std::vector<DecisionRecord>& records, std::ostream& os);

}  // namespace tasdn::controller
