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

#include "tasdn/controller/controller.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "tasdn/sim/errors.hpp"

namespace tasdn::controller {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string join_ips(const std::vector<Ip>& ips) {
    std::string out;
    for (const auto& ip : ips) {
        if (!out.empty()) out += '|';
        out += ip;
    }
    return out;
}

}  // namespace

GateDecision trust_gate(double src_score, double dst_score, double threshold) {
    return (src_score >= threshold && dst_score >= threshold) ? GateDecision::PermitPrimary
                                                              : GateDecision::Quarantine;
}

bool DeleteFlows::matches(const FlowRule& rule) const {
    if (rule.channel != channel) return false;
    return std::any_of(touching.begin(), touching.end(), [&](const Ip& ip) { return rule.match.touches(ip); });
}

std::string describe(const ControlAction& action) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const InstallFlow& a) {
                       os << "install:" << net::to_string(a.sw) << ':' << a.rule.match.src_ip << '>'
                          << a.rule.match.dst_ip << ':' << net::to_string(a.rule.channel) << ":p" << a.rule.out_port;
                   },
                   [&](const DeleteFlows& a) {
                       os << "delete:" << net::to_string(a.sw) << ':' << net::to_string(a.channel) << ':'
                          << join_ips(a.touching);
                   },
                   [&](const DropPacket& a) { os << "drop:" << net::to_string(a.sw) << ":pkt" << a.pkt_id; },
                   [&](const ForwardPacket& a) {
                       os << "forward:" << net::to_string(a.sw) << ":pkt" << a.pkt_id << ":p" << a.out_port;
                   },
                   [&](const MirrorToIds& a) { os << "mirror:pkt" << a.pkt_id; },
                   [&](const FloodPacket& a) {
                       os << "flood:" << net::to_string(a.sw) << ":pkt" << a.pkt_id << ':' << a.ports.size()
                          << "ports";
                   },
               },
               action);
    return os.str();
}

Controller::Controller(ControllerConfig config, std::map<Ip, HostBinding> hosts, std::set<SwitchId> switches,
                       std::map<SwitchId, SimTime> flow_mod_transit)
    : config_(config),
      trust_(config.threshold, config.initial_trust),
      hosts_(std::move(hosts)),
      switches_(std::move(switches)),
      flow_mod_transit_(std::move(flow_mod_transit)) {
    for (const auto& [ip, h] : hosts_) {
        trust_.score(ip);
        link_status_[h.primary_link] = LinkState::Up;
        link_status_[h.fallback_link] = LinkState::Up;
    }
    for (auto sw : switches_) {
        rules_[sw];
        flow_mod_transit_.try_emplace(sw, SimTime::zero());
    }
}

bool Controller::primary_usable(const Ip& ip) const {
    auto it = hosts_.find(ip);
    return it != hosts_.end() && link_up(it->second.primary_link);
}

bool Controller::link_up(LinkId link) const {
    auto it = link_status_.find(link);
    return it == link_status_.end() || it->second == LinkState::Up;
}

const std::optional<std::pair<SwitchId, PortId>> Controller::location(const Ip& ip) const {
    auto it = host_locations_.find(ip);
    if (it == host_locations_.end()) return std::nullopt;
    return it->second;
}

std::optional<ChannelKind> Controller::last_channel(const HostPair& pair) const {
    auto it = last_channel_.find(pair);
    if (it == last_channel_.end()) return std::nullopt;
    return it->second;
}

const std::map<std::pair<FlowMatch, int>, FlowRule>& Controller::rules(SwitchId sw) const { return rules_.at(sw); }

std::set<std::tuple<Ip, Ip, ChannelKind>> Controller::pending_flows() const {
    std::set<std::tuple<Ip, Ip, ChannelKind>> out;
    for (const auto& [sw, table] : rules_) {
        for (const auto& [key, rule] : table) out.emplace(rule.match.src_ip, rule.match.dst_ip, rule.channel);
    }
    return out;
}

std::set<HostPair> Controller::active_pairs(const Ip& ip, ChannelKind channel) const {
    std::set<HostPair> out;
    for (const auto& [sw, table] : rules_) {
        for (const auto& [key, rule] : table) {
            if (rule.channel == channel && rule.match.touches(ip)) {
                out.insert(HostPair::of(rule.match.src_ip, rule.match.dst_ip));
            }
        }
    }
    return out;
}

InstallAck Controller::install_flow(const FlowRule& rule, SwitchId sw, SimTime t) {
    if (!switches_.count(sw)) {
        throw UnknownSwitch("install_flow on unknown switch " + std::string(net::to_string(sw)));
    }
    auto& table = rules_[sw];
    const auto key = std::make_pair(rule.match, rule.priority);
    const SimTime done = t + config_.control_latency + flow_mod_transit_.at(sw);
    auto it = table.find(key);
    if (it != table.end()) {
        if (!it->second.same_action(rule)) {
            throw DuplicateRule(std::string(net::to_string(sw)) + ": conflicting rule for " + rule.match.src_ip +
                                "->" + rule.match.dst_ip);
        }
        return InstallAck{t, done, true};
    }
    FlowRule stored = rule;
    stored.installed_at = done;
    stored.last_hit = done;
    table.emplace(key, stored);
    return InstallAck{t, done, false};
}

void Controller::flow_removed(SwitchId sw, const FlowRule& rule) {
    auto it = rules_.find(sw);
    if (it == rules_.end()) return;
    auto r = it->second.find({rule.match, rule.priority});
    if (r != it->second.end() && r->second.same_action(rule)) it->second.erase(r);
}

void Controller::emit_install(std::vector<ControlAction>& out, SwitchId sw, const FlowMatch& match, PortId port,
                              ChannelKind channel, SimTime t) {
    FlowRule rule;
    rule.match = match;
    rule.out_port = port;
    rule.channel = channel;
    rule.priority = config_.rule_priority;
    rule.idle_timeout = config_.idle_timeout;
    const auto ack = install_flow(rule, sw, t);
    rule.installed_at = ack.completes_at;
    rule.last_hit = ack.completes_at;
    last_channel_[HostPair::of(match.src_ip, match.dst_ip)] = channel;
    out.emplace_back(InstallFlow{sw, rule, ack.idempotent});
}

void Controller::emit_delete(std::vector<ControlAction>& out, const DeleteFlows& del) {
    auto it = rules_.find(del.sw);
    if (it != rules_.end()) {
        std::erase_if(it->second, [&](const auto& kv) { return del.matches(kv.second); });
    }
    out.emplace_back(del);
}

std::vector<ControlAction> Controller::reroute_to_fallback(const std::set<HostPair>& pairs,
                                                           const std::vector<Ip>& touching, SimTime t, bool redirect,
                                                           std::optional<DropPacket> drop) {
    // Withdraw, then drop, then redirect.
    std::vector<ControlAction> out;
    emit_delete(out, DeleteFlows{SwitchId::S1, ChannelKind::Primary, touching});
    if (drop) out.emplace_back(*drop);
    if (!redirect) return out;
    for (const auto& p : pairs) {
        auto a = hosts_.find(p.a);
        auto b = hosts_.find(p.b);
        if (a == hosts_.end() || b == hosts_.end()) continue;
        emit_install(out, SwitchId::S2, FlowMatch{p.a, p.b}, b->second.s2_port, ChannelKind::Fallback, t);
        emit_install(out, SwitchId::S2, FlowMatch{p.b, p.a}, a->second.s2_port, ChannelKind::Fallback, t);
    }
    return out;
}

std::vector<ControlAction> Controller::on_packet_in(const PacketInMeta& meta, SimTime t) {
    if (!switches_.count(meta.sw)) {
        throw UnknownSwitch("packet-in from unknown switch " + std::to_string(static_cast<int>(meta.sw)));
    }
    std::vector<ControlAction> out;
    out.emplace_back(MirrorToIds{meta.pkt_id});

    auto src_host = hosts_.find(meta.src_ip);
    if (src_host != hosts_.end()) {
        const auto& b = src_host->second;
        if ((meta.sw == SwitchId::S1 && meta.in_port == b.s1_port) ||
            (meta.sw == SwitchId::S2 && meta.in_port == b.s2_port)) {
            host_locations_[meta.src_ip] = {meta.sw, meta.in_port};
        }
    }

    const double s = trust_.score(meta.src_ip);
    const double d = trust_.score(meta.dst_ip);
    DecisionRecord rec{t, "packet_in", meta.src_ip, meta.dst_ip, s, d, "", {}};
    auto dst_host = hosts_.find(meta.dst_ip);

    if (trust_gate(s, d, trust_.threshold()) == GateDecision::Quarantine) {
        std::vector<Ip> untrusted;
        if (s < trust_.threshold()) untrusted.push_back(meta.src_ip);
        if (d < trust_.threshold()) untrusted.push_back(meta.dst_ip);
        std::set<HostPair> pairs;
        if (src_host != hosts_.end() && dst_host != hosts_.end()) pairs.insert(HostPair::of(meta.src_ip, meta.dst_ip));
        auto actions = reroute_to_fallback(pairs, untrusted, t, redirect(), DropPacket{meta.sw, meta.pkt_id});
        out.insert(out.end(), actions.begin(), actions.end());
        rec.decision = "quarantine";
    } else if (src_host == hosts_.end() || dst_host == hosts_.end()) {
        out.emplace_back(DropPacket{meta.sw, meta.pkt_id});
        rec.decision = "no_route";
    } else if (primary_usable(meta.src_ip) && primary_usable(meta.dst_ip)) {
        auto loc = host_locations_.find(meta.dst_ip);
        if (loc == host_locations_.end() || loc->second.first != SwitchId::S1) {
            FloodPacket flood{meta.sw, meta.pkt_id, {}};
            for (const auto& [ip, b] : hosts_) {
                const PortId p = meta.sw == SwitchId::S2 ? b.s2_port : b.s1_port;
                if (p != meta.in_port) flood.ports.push_back(p);
            }
            std::sort(flood.ports.begin(), flood.ports.end());
            out.emplace_back(std::move(flood));
            rec.decision = "flood";
        } else {
            const auto pair = HostPair::of(meta.src_ip, meta.dst_ip);
            const bool readmit = last_channel(pair) == ChannelKind::Fallback;
            const PortId fwd_port = dst_host->second.s1_port;
            emit_install(out, SwitchId::S1, FlowMatch{meta.src_ip, meta.dst_ip}, fwd_port, ChannelKind::Primary, t);
            emit_install(out, SwitchId::S1, FlowMatch{meta.dst_ip, meta.src_ip}, src_host->second.s1_port,
                         ChannelKind::Primary, t);
            if (meta.sw == SwitchId::S1) {
                out.emplace_back(ForwardPacket{meta.sw, meta.pkt_id, fwd_port});
            } else {
                out.emplace_back(DropPacket{meta.sw, meta.pkt_id});
            }
            rec.decision = readmit ? "readmit_primary" : "permit_primary";
        }
    } else {
        // Trusted, but an endpoint has lost its primary link.
        const PortId fwd_port = dst_host->second.s2_port;
        emit_install(out, SwitchId::S2, FlowMatch{meta.src_ip, meta.dst_ip}, fwd_port, ChannelKind::Fallback, t);
        emit_install(out, SwitchId::S2, FlowMatch{meta.dst_ip, meta.src_ip}, src_host->second.s2_port,
                     ChannelKind::Fallback, t);
        if (meta.sw == SwitchId::S2) {
            out.emplace_back(ForwardPacket{meta.sw, meta.pkt_id, fwd_port});
        } else {
            out.emplace_back(DropPacket{meta.sw, meta.pkt_id});
        }
        rec.decision = "permit_fallback";
    }
    rec.actions = out;
    decisions_.push_back(std::move(rec));
    return out;
}

std::vector<ControlAction> Controller::on_trust_change(const Ip& ip, double old_score, double new_score, SimTime t) {
    trust_.set(ip, new_score);
    const TrustChange change{ip, old_score, new_score};
    DecisionRecord rec{t, "trust_change", ip, "", new_score, std::nullopt, "none", {}};
    std::vector<ControlAction> out;
    if (change.crossed_down(trust_.threshold())) {
        const auto pairs = active_pairs(ip, ChannelKind::Primary);
        if (!pairs.empty()) out = reroute_to_fallback(pairs, {ip}, t, redirect(), std::nullopt);
        rec.decision = "quarantine";
    } else if (change.crossed_up(trust_.threshold())) {
        rec.decision = "readmit_deferred";
    }
    rec.actions = out;
    decisions_.push_back(std::move(rec));
    return out;
}

std::optional<LinkId> Controller::host_of_primary(LinkId link, Ip* ip) const {
    for (const auto& [h, b] : hosts_) {
        if (b.primary_link == link) {
            *ip = h;
            return link;
        }
    }
    return std::nullopt;
}

std::vector<ControlAction> Controller::on_link_down(LinkId link, SimTime t) {
    Ip ip;
    DecisionRecord rec{t, "link_down", "", "", std::nullopt, std::nullopt, "ignored", {}};
    std::vector<ControlAction> out;
    if (!host_of_primary(link, &ip)) {
        link_status_[link] = LinkState::Down;
        decisions_.push_back(std::move(rec));
        return out;
    }
    rec.src_ip = ip;
    if (link_status_[link] == LinkState::Down) {
        rec.decision = "duplicate";
        decisions_.push_back(std::move(rec));
        return out;
    }
    link_status_[link] = LinkState::Down;
    const auto pairs = active_pairs(ip, ChannelKind::Primary);
    // Link failover always redirects; drop_all only applies to untrusted nodes.
    if (!pairs.empty()) out = reroute_to_fallback(pairs, {ip}, t, true, std::nullopt);
    rec.decision = "failover";
    rec.actions = out;
    decisions_.push_back(std::move(rec));
    return out;
}

std::vector<ControlAction> Controller::on_link_up(LinkId link, SimTime t) {
    link_status_[link] = LinkState::Up;
    decisions_.push_back(DecisionRecord{t, "link_up", "", "", std::nullopt, std::nullopt, "none", {}});
    return {};
}

void write_decision_log(const std::vector<DecisionRecord>& records, std::ostream& os) {
    os << "time_us,event,src_ip,dst_ip,src_trust,dst_trust,decision,actions\n";
    for (const auto& r : records) {
        os << r.at.us() << ',' << r.event << ',' << r.src_ip << ',' << r.dst_ip << ',';
        if (r.src_trust) os << *r.src_trust;
        os << ',';
        if (r.dst_trust) os << *r.dst_trust;
        os << ',' << r.decision << ',';
        for (std::size_t i = 0; i < r.actions.size(); ++i) {
            if (i) os << ';';
            os << describe(r.actions[i]);
        }
        os << '\n';
    }
}

}  // namespace tasdn::controller
