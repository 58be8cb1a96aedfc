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

#include "tasdn/scenario/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "tasdn/sim/errors.hpp"

namespace tasdn::scenario {

using controller::ControlAction;
using controller::HostPair;
using metrics::HopAuth;
using net::Direction;
using net::Ip;
using net::LinkId;
using net::Packet;
using net::PortId;
using net::SwitchId;
using sim::Event;
using sim::EventKind;

namespace {

constexpr std::uint32_t kArpBytes = 42;
constexpr SimTime kArpRetry{200'000};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Event payloads.
struct SendTick {
    std::size_t flow = 0;
    std::uint64_t k = 0;
};
struct ArpRetry {
    int host = 0;
    Ip target;
    std::uint64_t arp_id = 0;
};
struct Arrival {
    Packet packet;
    LinkId link = 0;
    Direction dir = Direction::Up;
};
struct PacketInEvent {
    controller::PacketInMeta meta;
    SimTime miss_at;
    std::uint32_t size = 0;
};
struct ApplyAction {
    ControlAction action;
};
struct MirrorObserve {
    ids::PacketMeta meta;
};
struct ActivateFallback {
    int host = 0;
};
struct LinkNotice {
    net::LinkStateChange change;
    std::optional<std::uint64_t> trigger;
};
struct Expiry {
    SwitchId sw = SwitchId::S1;
    net::FlowRule rule;
};

struct FlowPlan {
    Ip src;
    Ip dst;
    int src_host = 0;
    SimTime start;
    SimTime stop;  // exclusive
    double rate_pps = 0;
    std::uint32_t size = 0;
    net::Protocol protocol = net::Protocol::Icmp;
};

struct HostState {
    std::set<Ip> resolved;
    std::map<Ip, std::deque<Packet>> awaiting_arp;
    std::map<Ip, std::uint64_t> arp_outstanding;
    std::deque<Packet> held;
    bool fallback_active = false;
    std::set<std::uint64_t> seen_arp;
};

struct LinkEnd {
    enum class Kind : std::uint8_t { Host, Switch, Sink };
    Kind kind = Kind::Sink;
    int host = 0;
    SwitchId sw = SwitchId::S1;
    PortId port = 0;
};

SimTime hop_time(const net::Link& link, Direction dir, std::uint32_t bytes) {
    return link.spec().prop_delay + net::serialization_delay(bytes, link.spec().bandwidth(dir));
}

std::string ip_pair(const Ip& a, const Ip& b) { return a + ">" + b; }

}  // namespace

struct Simulation::State {
    ScenarioConfig config;
    topology::Network net;
    sim::Engine engine;
    std::optional<controller::Controller> ctrl;
    ids::Ids ids;
    metrics::Journal journal;

    std::vector<FlowPlan> flows;
    std::vector<HostState> hosts;
    std::map<Ip, int> host_index;
    std::map<std::pair<LinkId, Direction>, LinkEnd> ends;
    std::map<std::pair<SwitchId, std::uint64_t>, std::pair<Packet, PortId>> buffered;
    std::map<SwitchId, SimTime> to_ctrl;
    std::map<SwitchId, SimTime> from_ctrl;
    SimTime ids_transit;
    std::uint64_t next_pkt = 1;
    std::uint64_t next_trigger = 1;
    bool ran = false;

    explicit State(ScenarioConfig c)
        : config(std::move(c)),
          net(topology::build(config.topology)),
          ids(config.ids, config.threshold, config.initial_trust) {
        setup();
    }

    SimTime now() const { return engine.now(); }
    SimTime ctl() const { return config.control_latency; }
    const topology::HostAttachment& host(int h) const { return net.hosts.at(static_cast<std::size_t>(h)); }

    void setup();
    void schedule_start();
    void finish(RunResult& out);

    template <class F>
    void guarded(const Event& e, F&& f);

    // Data plane.
    Packet new_packet(const Ip& src, const Ip& dst, net::Protocol proto, std::uint32_t size, bool reply);
    void host_originate(int h, Packet pkt);
    void send_arp_request(int h, const Ip& target);
    void host_egress(int h, Packet pkt);
    void flush_held(int h);
    void resolve(int h, const Ip& ip);
    void transmit_hop(LinkId id, Direction dir, Packet pkt, HopAuth auth);
    void send_from_switch(SwitchId sw, PortId port, const Packet& pkt, HopAuth auth);
    void host_receive(int h, Packet pkt);
    void switch_receive(SwitchId swid, PortId port, Packet pkt);

    // Control plane.
    void ids_observe(const ids::PacketMeta& meta, SimTime t);
    void publish(const std::vector<ids::TrustEvent>& events, SimTime t);
    void apply(const std::vector<ControlAction>& actions, SimTime t, std::optional<std::uint64_t> trigger,
               std::optional<SimTime> miss_at);
    void apply_at_switch(const ControlAction& action);

    // Handlers.
    void on_packet_event(const Event& e);
    void on_packet_in(const PacketInEvent& ev);
    void on_control(const Event& e);
    void on_link_notice(const LinkNotice& n);
    void on_directive(const Directive& d);
    void on_tick();
    void on_expiry(const Expiry& e);
};

template <class F>
void Simulation::State::guarded(const Event& e, F&& f) {
    try {
        f();
    } catch (const ScenarioError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ScenarioError("at " + std::to_string(e.at.us()) + "us, " + std::string(sim::to_string(e.kind)) + " '" +
                            e.summary + "': " + ex.what());
    }
}

void Simulation::State::setup() {
    const auto& core_ctrl = net.link(net.controller_link);
    const std::uint32_t cm = config.control_msg_bytes;
    const std::pair<SwitchId, LinkId> uplinks[] = {{SwitchId::S1, net.s1_s3_link}, {SwitchId::S2, net.s2_s3_link}};
    for (const auto& [sw, id] : uplinks) {
        const auto& l = net.link(id);
        to_ctrl[sw] = hop_time(l, Direction::Up, cm) + hop_time(core_ctrl, Direction::Down, cm);
        from_ctrl[sw] = hop_time(core_ctrl, Direction::Up, cm) + hop_time(l, Direction::Down, cm);
    }
    to_ctrl[SwitchId::S3] = hop_time(core_ctrl, Direction::Down, cm);
    from_ctrl[SwitchId::S3] = hop_time(core_ctrl, Direction::Up, cm);
    ids_transit = hop_time(core_ctrl, Direction::Up, cm) + hop_time(net.link(net.ids_link), Direction::Down, cm);

    std::map<Ip, controller::HostBinding> bindings;
    hosts.resize(net.hosts.size());
    for (std::size_t i = 0; i < net.hosts.size(); ++i) {
        const auto& h = net.hosts[i];
        host_index[h.address.ip] = static_cast<int>(i);
        bindings[h.address.ip] = controller::HostBinding{h.s1_port, h.s2_port, h.primary_link, h.fallback_link};
        ends[{h.primary_link, Direction::Down}] = LinkEnd{LinkEnd::Kind::Host, static_cast<int>(i)};
        ends[{h.fallback_link, Direction::Down}] = LinkEnd{LinkEnd::Kind::Host, static_cast<int>(i)};
    }
    for (const auto& [sid, sw] : net.switches) {
        for (const auto& [port, b] : sw.ports) {
            // A frame entering the switch travels against the port's egress direction.
            const Direction in = b.egress == Direction::Up ? Direction::Down : Direction::Up;
            ends[{b.link, in}] = LinkEnd{LinkEnd::Kind::Switch, 0, sid, port};
        }
    }

    controller::ControllerConfig cc;
    cc.threshold = config.threshold;
    cc.initial_trust = config.initial_trust;
    cc.control_latency = config.control_latency;
    cc.quarantine_mode = config.quarantine_mode;
    cc.idle_timeout = config.idle_timeout;
    ctrl.emplace(cc, std::move(bindings), std::set<SwitchId>{SwitchId::S1, SwitchId::S2, SwitchId::S3}, from_ctrl);

    journal.n_hosts = config.topology.n_hosts;
    journal.end = config.duration;

    for (const auto& f : expanded_traffic(config)) {
        FlowPlan p;
        p.src = *net.resolve(f.src);
        p.dst = *net.resolve(f.dst);
        p.src_host = host_index.at(p.src);
        p.start = f.start;
        p.stop = f.stop ? std::min(*f.stop, config.duration + SimTime{1}) : config.duration + SimTime{1};
        p.rate_pps = f.rate_pps;
        p.size = f.size_bytes;
        p.protocol = f.protocol;
        flows.push_back(std::move(p));
    }

    engine.on(EventKind::PacketArrival, [this](const Event& e) { guarded(e, [&] { on_packet_event(e); }); });
    engine.on(EventKind::PacketInToController, [this](const Event& e) {
        guarded(e, [&] { on_packet_in(std::any_cast<const PacketInEvent&>(e.payload)); });
    });
    engine.on(EventKind::ControlAction, [this](const Event& e) { guarded(e, [&] { on_control(e); }); });
    engine.on(EventKind::LinkStateChange, [this](const Event& e) {
        guarded(e, [&] { on_link_notice(std::any_cast<const LinkNotice&>(e.payload)); });
    });
    auto directive = [this](const Event& e) {
        guarded(e, [&] { on_directive(std::any_cast<const Directive&>(e.payload)); });
    };
    engine.on(EventKind::TrustOverride, directive);
    engine.on(EventKind::ScenarioDirective, directive);
    engine.on(EventKind::RecoveryTick, [this](const Event& e) { guarded(e, [&] { on_tick(); }); });
    engine.on(EventKind::FlowExpiry, [this](const Event& e) {
        guarded(e, [&] { on_expiry(std::any_cast<const Expiry&>(e.payload)); });
    });
}

void Simulation::State::schedule_start() {
    for (const auto& d : config.directives) {
        std::string summary = "directive " + std::string(to_string(d.kind));
        if (!d.target.empty()) summary += " " + d.target;
        const auto kind =
            d.kind == Directive::Kind::SetTrust ? EventKind::TrustOverride : EventKind::ScenarioDirective;
        engine.schedule(d.at, kind, d, std::move(summary));
    }
    for (std::size_t i = 0; i < flows.size(); ++i) {
        if (flows[i].start < flows[i].stop) {
            engine.schedule(flows[i].start, EventKind::PacketArrival, SendTick{i, 0},
                            "send flow " + std::to_string(i) + " #0");
        }
    }
    if (config.ids.tick <= config.duration) {
        engine.schedule(config.ids.tick, EventKind::RecoveryTick, {}, "ids tick");
    }
}

Packet Simulation::State::new_packet(const Ip& src, const Ip& dst, net::Protocol proto, std::uint32_t size,
                                     bool reply) {
    Packet p;
    p.pkt_id = next_pkt++;
    p.src_ip = src;
    p.dst_ip = dst;
    p.protocol = proto;
    p.size = size;
    p.created_at = now();
    p.is_reply = reply;
    return p;
}

void Simulation::State::host_originate(int h, Packet pkt) {
    auto& hs = hosts[static_cast<std::size_t>(h)];
    const Ip dst = pkt.dst_ip;
    if (hs.resolved.count(dst)) {
        host_egress(h, std::move(pkt));
        return;
    }
    hs.awaiting_arp[dst].push_back(std::move(pkt));
    if (!hs.arp_outstanding.count(dst)) send_arp_request(h, dst);
}

void Simulation::State::send_arp_request(int h, const Ip& target) {
    auto& hs = hosts[static_cast<std::size_t>(h)];
    Packet arp = new_packet(host(h).address.ip, target, net::Protocol::Arp, kArpBytes, false);
    hs.arp_outstanding[target] = arp.pkt_id;
    engine.schedule(now() + kArpRetry, EventKind::PacketArrival, ArpRetry{h, target, arp.pkt_id},
                    "arp timeout " + host(h).address.name + " " + target);
    host_egress(h, std::move(arp));
}

void Simulation::State::host_egress(int h, Packet pkt) {
    const auto& att = host(h);
    auto& hs = hosts[static_cast<std::size_t>(h)];
    const bool redirected = net.sw(SwitchId::S2).lookup(net::FlowMatch{pkt.src_ip, pkt.dst_ip}) != nullptr;
    if (redirected) {
        transmit_hop(att.fallback_link, Direction::Up, std::move(pkt), HopAuth::HostEgress);
    } else if (net.link(att.primary_link).up()) {
        transmit_hop(att.primary_link, Direction::Up, std::move(pkt), HopAuth::HostEgress);
    } else if (hs.fallback_active) {
        transmit_hop(att.fallback_link, Direction::Up, std::move(pkt), HopAuth::HostEgress);
    } else {
        hs.held.push_back(std::move(pkt));
    }
}

void Simulation::State::flush_held(int h) {
    auto held = std::move(hosts[static_cast<std::size_t>(h)].held);
    hosts[static_cast<std::size_t>(h)].held.clear();
    for (auto& p : held) host_egress(h, std::move(p));
}

void Simulation::State::resolve(int h, const Ip& ip) {
    auto& hs = hosts[static_cast<std::size_t>(h)];
    if (!hs.resolved.insert(ip).second) return;
    hs.arp_outstanding.erase(ip);
    auto it = hs.awaiting_arp.find(ip);
    if (it == hs.awaiting_arp.end()) return;
    auto waiting = std::move(it->second);
    hs.awaiting_arp.erase(it);
    for (auto& p : waiting) host_egress(h, std::move(p));
}

void Simulation::State::transmit_hop(LinkId id, Direction dir, Packet pkt, HopAuth auth) {
    auto& link = net.link(id);
    const SimTime t = now();
    const auto out = link.send(pkt, dir, t);
    metrics::HopRecord rec;
    rec.sent_at = t;
    rec.arrival = out.arrival;
    rec.pkt_id = pkt.pkt_id;
    rec.link = id;
    rec.channel = link.spec().channel;
    rec.outcome = out.kind;
    rec.payload = pkt.is_payload();
    rec.auth = auth;
    rec.src_ip = pkt.src_ip;
    rec.dst_ip = pkt.dst_ip;
    if (rec.payload) {
        const auto* r = net.sw(SwitchId::S1).lookup(net::FlowMatch{pkt.src_ip, pkt.dst_ip});
        rec.primary_rule_present = r != nullptr && r->channel == net::ChannelKind::Primary;
    }
    journal.hops.push_back(std::move(rec));
    if (!out.delivered()) return;
    std::string summary = "rx pkt " + std::to_string(pkt.pkt_id) + " " + link.name() + " " +
                          std::string(net::to_string(dir));
    engine.schedule(out.arrival, EventKind::PacketArrival, Arrival{std::move(pkt), id, dir}, std::move(summary));
}

void Simulation::State::send_from_switch(SwitchId sw, PortId port, const Packet& pkt, HopAuth auth) {
    const auto& b = net.sw(sw).ports.at(port);
    transmit_hop(b.link, b.egress, pkt, auth);
}

void Simulation::State::host_receive(int h, Packet pkt) {
    auto& hs = hosts[static_cast<std::size_t>(h)];
    const Ip& me = host(h).address.ip;
    if (pkt.protocol == net::Protocol::Arp) {
        if (!hs.seen_arp.insert(pkt.pkt_id).second || pkt.dst_ip != me) return;
        resolve(h, pkt.src_ip);
        if (!pkt.is_reply) host_egress(h, new_packet(me, pkt.src_ip, net::Protocol::Arp, kArpBytes, true));
        return;
    }
    if (pkt.dst_ip != me) return;
    journal.deliveries.push_back(
        metrics::DeliveryRecord{now(), pkt.pkt_id, pkt.src_ip, pkt.dst_ip, pkt.created_at, pkt.channel_trace});
    resolve(h, pkt.src_ip);
    if (pkt.protocol == net::Protocol::Icmp && !pkt.is_reply) {
        host_originate(h, new_packet(me, pkt.src_ip, net::Protocol::Icmp, pkt.size, true));
    }
}

void Simulation::State::switch_receive(SwitchId swid, PortId port, Packet pkt) {
    auto& sw = net.sw(swid);
    const auto action = net::switch_forward(sw, pkt, port, now());
    std::visit(overloaded{
                   [&](const net::ForwardTo& f) {
                       if (pkt.is_payload() && config.ids_tap_all) {
                           ids_observe(ids::PacketMeta{pkt.src_ip, pkt.dst_ip, pkt.protocol, pkt.size}, now());
                       }
                       send_from_switch(swid, f.out_port, pkt, HopAuth::Rule);
                   },
                   [&](const net::FloodTo& f) {
                       for (PortId p : f.ports) send_from_switch(swid, p, pkt, HopAuth::ArpFlood);
                   },
                   [&](const net::EscalatePacketIn&) {
                       if (swid == SwitchId::S3) {
                           // The core switch carries no host rules; stray payload stops here.
                           journal.drops.push_back(metrics::DropRecord{now(), pkt.pkt_id, pkt.src_ip, pkt.dst_ip});
                           return;
                       }
                       journal.packet_ins.push_back(
                           metrics::PacketInRecord{now(), pkt.pkt_id, pkt.src_ip, pkt.dst_ip, swid});
                       PacketInEvent ev{
                           controller::PacketInMeta{pkt.pkt_id, pkt.src_ip, pkt.dst_ip, pkt.protocol, port, swid},
                           now(), pkt.size};
                       std::string summary = "packet_in " + std::string(net::to_string(swid)) + " pkt " +
                                             std::to_string(pkt.pkt_id) + " " + ip_pair(pkt.src_ip, pkt.dst_ip);
                       buffered[{swid, pkt.pkt_id}] = {std::move(pkt), port};
                       engine.schedule(now() + to_ctrl.at(swid), EventKind::PacketInToController, std::move(ev),
                                       std::move(summary));
                   },
               },
               action);
}

void Simulation::State::ids_observe(const ids::PacketMeta& meta, SimTime t) {
    ids.observe(meta, t);
    if (config.ids_mode == IdsMode::Inline) publish(ids.take_all_unpublished(), t);
}

void Simulation::State::publish(const std::vector<ids::TrustEvent>& events, SimTime t) {
    // Only the latest score per node reaches the controller.
    std::map<Ip, double> latest;
    std::vector<Ip> order;
    for (const auto& ev : events) {
        if (!latest.count(ev.change.ip)) order.push_back(ev.change.ip);
        latest[ev.change.ip] = ev.change.new_score;
    }
    for (const auto& ip : order) {
        const double old_score = ctrl->trust().peek(ip);
        const double new_score = latest[ip];
        if (old_score == new_score) continue;
        const bool down = controller::TrustChange{ip, old_score, new_score}.crossed_down(ctrl->trust().threshold());
        std::vector<HostPair> affected;
        if (down) {
            const auto pairs = ctrl->active_pairs(ip, net::ChannelKind::Primary);
            affected.assign(pairs.begin(), pairs.end());
        }
        const auto actions = ctrl->on_trust_change(ip, old_score, new_score, t);
        std::optional<std::uint64_t> trigger;
        if (down) {
            trigger = next_trigger++;
            journal.triggers.push_back(
                metrics::TriggerRecord{*trigger, metrics::TriggerRecord::Kind::TrustDrop, t, ip, std::move(affected)});
            journal.enforcements.push_back(metrics::EnforcementRecord{t + ctl(), ip});
        }
        apply(actions, t, trigger, std::nullopt);
    }
}

void Simulation::State::apply(const std::vector<ControlAction>& actions, SimTime t,
                              std::optional<std::uint64_t> trigger, std::optional<SimTime> miss_at) {
    for (const auto& a : actions) {
        std::visit(overloaded{
                       [&](const controller::InstallFlow& i) {
                           metrics::RuleInstallRecord r;
                           r.requested_at = t;
                           r.completed_at = i.rule.installed_at;
                           r.sw = i.sw;
                           r.match = i.rule.match;
                           r.channel = i.rule.channel;
                           r.trigger_id = trigger;
                           r.from_packet_in = miss_at.has_value();
                           r.miss_at = miss_at.value_or(SimTime::zero());
                           r.idempotent = i.idempotent;
                           journal.installs.push_back(std::move(r));
                           engine.schedule(i.rule.installed_at, EventKind::ControlAction, ApplyAction{a},
                                           "flow_mod " + controller::describe(a));
                       },
                       [&](const controller::MirrorToIds&) {},
                       [&](const auto& other) {
                           engine.schedule(t + ctl() + from_ctrl.at(other.sw), EventKind::ControlAction,
                                           ApplyAction{a}, "flow_mod " + controller::describe(a));
                       },
                   },
                   a);
    }
}

void Simulation::State::apply_at_switch(const ControlAction& action) {
    auto take = [&](SwitchId sw, std::uint64_t id) -> std::optional<std::pair<Packet, PortId>> {
        auto it = buffered.find({sw, id});
        if (it == buffered.end()) return std::nullopt;
        auto out = std::move(it->second);
        buffered.erase(it);
        return out;
    };
    std::visit(overloaded{
                   [&](const controller::InstallFlow& i) {
                       auto& sw = net.sw(i.sw);
                       if (sw.install(i.rule) && i.rule.idle_timeout) {
                           engine.schedule(i.rule.installed_at + *i.rule.idle_timeout, EventKind::FlowExpiry,
                                           Expiry{i.sw, i.rule}, "expiry check " + controller::describe(action));
                       }
                       if (i.sw == SwitchId::S2) {
                           for (const Ip* ip : {&i.rule.match.src_ip, &i.rule.match.dst_ip}) {
                               auto h = host_index.find(*ip);
                               if (h != host_index.end()) flush_held(h->second);
                           }
                       }
                   },
                   [&](const controller::DeleteFlows& d) { net.sw(d.sw).remove_if([&](const auto& r) { return d.matches(r); }); },
                   [&](const controller::DropPacket& d) {
                       if (auto p = take(d.sw, d.pkt_id)) {
                           journal.drops.push_back(
                               metrics::DropRecord{now(), d.pkt_id, p->first.src_ip, p->first.dst_ip});
                       }
                   },
                   [&](const controller::ForwardPacket& f) {
                       if (auto p = take(f.sw, f.pkt_id)) send_from_switch(f.sw, f.out_port, p->first, HopAuth::PacketOut);
                   },
                   [&](const controller::FloodPacket& f) {
                       if (auto p = take(f.sw, f.pkt_id)) {
                           for (PortId port : f.ports) send_from_switch(f.sw, port, p->first, HopAuth::PacketOut);
                       }
                   },
                   [&](const controller::MirrorToIds&) {},
               },
               action);
}

void Simulation::State::on_packet_event(const Event& e) {
    if (const auto* tick = std::any_cast<SendTick>(&e.payload)) {
        const auto& f = flows[tick->flow];
        host_originate(f.src_host, new_packet(f.src, f.dst, f.protocol, f.size, false));
        const auto k = tick->k + 1;
        const SimTime next =
            f.start + SimTime{static_cast<std::int64_t>(std::floor(static_cast<double>(k) * 1e6 / f.rate_pps))};
        if (next < f.stop) {
            engine.schedule(next, EventKind::PacketArrival, SendTick{tick->flow, k},
                            "send flow " + std::to_string(tick->flow) + " #" + std::to_string(k));
        }
    } else if (const auto* retry = std::any_cast<ArpRetry>(&e.payload)) {
        auto& hs = hosts[static_cast<std::size_t>(retry->host)];
        auto it = hs.arp_outstanding.find(retry->target);
        if (it != hs.arp_outstanding.end() && it->second == retry->arp_id) send_arp_request(retry->host, retry->target);
    } else {
        const auto& a = std::any_cast<const Arrival&>(e.payload);
        auto it = ends.find({a.link, a.dir});
        // IDS and controller ports only sink broadcast traffic.
        if (it == ends.end()) return;
        const auto& end = it->second;
        switch (end.kind) {
            case LinkEnd::Kind::Host: host_receive(end.host, a.packet); break;
            case LinkEnd::Kind::Switch: switch_receive(end.sw, end.port, a.packet); break;
            case LinkEnd::Kind::Sink: break;
        }
    }
}

void Simulation::State::on_packet_in(const PacketInEvent& ev) {
    const SimTime t = now();
    const auto actions = ctrl->on_packet_in(ev.meta, t);
    const auto& rec = ctrl->decisions().back();
    std::optional<std::uint64_t> trigger;
    if (rec.decision == "quarantine") {
        for (const Ip* ip : {&ev.meta.src_ip, &ev.meta.dst_ip}) {
            if (ctrl->trust().peek(*ip) < ctrl->trust().threshold()) {
                journal.enforcements.push_back(metrics::EnforcementRecord{t + ctl(), *ip});
            }
        }
    } else if (rec.decision == "readmit_primary") {
        trigger = next_trigger++;
        journal.triggers.push_back(metrics::TriggerRecord{*trigger, metrics::TriggerRecord::Kind::Readmission,
                                                          ev.miss_at, ev.meta.src_ip,
                                                          {HostPair::of(ev.meta.src_ip, ev.meta.dst_ip)}});
    }
    apply(actions, t, trigger, ev.miss_at);

    const ids::PacketMeta meta{ev.meta.src_ip, ev.meta.dst_ip, ev.meta.protocol, ev.size};
    if (config.ids_mode == IdsMode::Inline) {
        ids_observe(meta, t);
    } else {
        engine.schedule(t + ctl() + ids_transit, EventKind::ControlAction, MirrorObserve{meta},
                        "mirror pkt " + std::to_string(ev.meta.pkt_id));
    }
}

void Simulation::State::on_control(const Event& e) {
    if (const auto* a = std::any_cast<ApplyAction>(&e.payload)) {
        apply_at_switch(a->action);
    } else if (const auto* m = std::any_cast<MirrorObserve>(&e.payload)) {
        ids_observe(m->meta, now());
    } else {
        const auto& act = std::any_cast<const ActivateFallback&>(e.payload);
        hosts[static_cast<std::size_t>(act.host)].fallback_active = true;
        flush_held(act.host);
    }
}

void Simulation::State::on_link_notice(const LinkNotice& n) {
    const SimTime t = now();
    if (n.change.state == net::LinkState::Up) {
        ctrl->on_link_up(n.change.link, t);
        return;
    }
    apply(ctrl->on_link_down(n.change.link, t), t, n.trigger, std::nullopt);
    for (std::size_t i = 0; i < net.hosts.size(); ++i) {
        if (net.hosts[i].primary_link == n.change.link) {
            engine.schedule(t + ctl() + from_ctrl.at(SwitchId::S2), EventKind::ControlAction,
                            ActivateFallback{static_cast<int>(i)}, "activate fallback " + net.hosts[i].address.name);
        }
    }
}

void Simulation::State::on_directive(const Directive& d) {
    const SimTime t = now();
    switch (d.kind) {
        case Directive::Kind::FailLink:
        case Directive::Kind::RestoreLink: {
            const Ip ip = *net.resolve(d.target);
            const int h = host_index.at(ip);
            const bool primary = d.channel == net::ChannelKind::Primary;
            const LinkId id = primary ? host(h).primary_link : host(h).fallback_link;
            const bool fail = d.kind == Directive::Kind::FailLink;
            std::vector<HostPair> affected;
            if (fail && primary) {
                const auto pairs = ctrl->active_pairs(ip, net::ChannelKind::Primary);
                affected.assign(pairs.begin(), pairs.end());
            }
            const auto note =
                net.link(id).set_state(fail ? net::LinkState::Down : net::LinkState::Up, t, config.detection_delay);
            if (!note) return;
            std::optional<std::uint64_t> trigger;
            if (fail && primary) {
                trigger = next_trigger++;
                journal.triggers.push_back(metrics::TriggerRecord{*trigger, metrics::TriggerRecord::Kind::LinkDown, t,
                                                                  ip, std::move(affected)});
            }
            engine.schedule(note->notify_at, EventKind::LinkStateChange, LinkNotice{*note, trigger},
                            std::string("link ") + (fail ? "down " : "up ") + net.link(id).name());
            if (!fail) flush_held(h);
            return;
        }
        case Directive::Kind::SetTrust:
            ids.override_trust(*net.resolve(d.target), d.value, t);
            if (config.ids_mode == IdsMode::Inline) publish(ids.take_all_unpublished(), t);
            return;
        case Directive::Kind::SetPenalty: {
            auto& p = ids.config().penalties;
            switch (d.finding) {
                case ids::FindingKind::RateAnomaly: p.rate_anomaly = d.value; break;
                case ids::FindingKind::ProtocolViolation: p.protocol_violation = d.value; break;
                case ids::FindingKind::UnauthorizedAccess: p.unauthorized_access = d.value; break;
            }
            return;
        }
        case Directive::Kind::SetRecovery: ids.config().recovery_rate = d.value; return;
        case Directive::Kind::SetThreshold:
            ids.trust().set_threshold(d.value);
            ctrl->trust().set_threshold(d.value);
            return;
    }
}

void Simulation::State::on_tick() {
    const SimTime t = now();
    if (config.ids_mode == IdsMode::Async) {
        // Whatever the IDS concluded at this instant goes out with the next tick.
        publish(ids.take_unpublished(t), t);
        ids.tick(t);
    } else {
        ids.tick(t);
        publish(ids.take_all_unpublished(), t);
    }
    const SimTime next = t + config.ids.tick;
    if (next <= config.duration) engine.schedule(next, EventKind::RecoveryTick, {}, "ids tick");
}

void Simulation::State::on_expiry(const Expiry& e) {
    auto& sw = net.sw(e.sw);
    auto it = sw.flow_table.find({e.rule.match, e.rule.priority});
    // Stale check for a rule that has since been replaced.
    if (it == sw.flow_table.end() || !it->second.same_action(e.rule) ||
        it->second.installed_at != e.rule.installed_at) {
        return;
    }
    const SimTime timeout = *it->second.idle_timeout;
    if (now() - it->second.last_hit >= timeout) {
        const net::FlowRule removed = it->second;
        sw.flow_table.erase(it);
        ctrl->flow_removed(e.sw, removed);
    } else {
        engine.schedule(it->second.last_hit + timeout, EventKind::FlowExpiry, e, "expiry recheck");
    }
}

void Simulation::State::finish(RunResult& out) {
    for (const auto& c : ids.crossings()) {
        journal.crossings.push_back(metrics::CrossingRecord{c.at, c.change.ip, c.change.old_score,
                                                            c.change.new_score,
                                                            c.change.new_score < c.change.old_score});
    }
    out.report = metrics::compute_report(journal);
    out.trace = engine.trace();
    out.journal = journal;
    out.decisions = ctrl->decisions();
    out.events_processed = engine.processed_count();
}

Simulation::Simulation(ScenarioConfig config) {
    validate(config);
    config.topology.seed = config.seed;
    s_ = std::make_unique<State>(std::move(config));
}

Simulation::~Simulation() = default;

void Simulation::set_tracing(bool enabled) { s_->engine.set_tracing(enabled); }

RunResult Simulation::run() {
    if (s_->ran) throw std::logic_error("Simulation::run called twice");
    s_->ran = true;
    s_->schedule_start();
    s_->engine.run_until(s_->config.duration);
    RunResult out;
    s_->finish(out);
    return out;
}

const ScenarioConfig& Simulation::config() const { return s_->config; }
const topology::Network& Simulation::network() const { return s_->net; }
const controller::Controller& Simulation::controller() const { return *s_->ctrl; }
const ids::Ids& Simulation::ids() const { return s_->ids; }
const metrics::Journal& Simulation::journal() const { return s_->journal; }
SimTime Simulation::transit_from_controller(net::SwitchId sw) const { return s_->from_ctrl.at(sw); }
SimTime Simulation::transit_to_controller(net::SwitchId sw) const { return s_->to_ctrl.at(sw); }

RunResult run(const ScenarioConfig& config) {
    Simulation sim(config);
    return sim.run();
}

}  // namespace tasdn::scenario
