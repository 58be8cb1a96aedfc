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

#include "tasdn/topology/topology.hpp"

#include <ostream>
#include <set>
#include <string>

#include "tasdn/sim/errors.hpp"

namespace tasdn::topology {

using net::Direction;
using net::Link;
using net::LinkSpec;
using net::NodeRole;
using net::PortBinding;

net::LinkSpec TopologySpec::link_spec(ChannelKind c) const {
    auto it = link_overrides.find(c);
    if (it != link_overrides.end()) {
        LinkSpec s = it->second;
        s.channel = c;
        return s;
    }
    return LinkSpec::defaults(c);
}

std::string host_ip(int index) { return "10.0.0." + std::to_string(index); }

const HostAttachment* Network::host_by_ip(const Ip& ip) const {
    for (const auto& h : hosts) {
        if (h.address.ip == ip) return &h;
    }
    return nullptr;
}

const HostAttachment* Network::host_by_name(const std::string& name) const {
    for (const auto& h : hosts) {
        if (h.address.name == name) return &h;
    }
    return nullptr;
}

std::optional<Ip> Network::resolve(const std::string& host_or_ip) const {
    if (const auto* h = host_by_name(host_or_ip)) return h->address.ip;
    if (const auto* h = host_by_ip(host_or_ip)) return h->address.ip;
    if (host_or_ip == ids.ip || host_or_ip == ids.name) return ids.ip;
    return std::nullopt;
}

Network build(const TopologySpec& spec) {
    if (spec.n_hosts < 2) {
        throw InvalidSpec("topology needs at least 2 hosts, got " + std::to_string(spec.n_hosts));
    }
    for (const auto& [channel, s] : spec.link_overrides) {
        spec.link_spec(channel).validate();
    }

    Network net;
    const int n = spec.n_hosts;
    auto& s1 = net.switches[SwitchId::S1];
    auto& s2 = net.switches[SwitchId::S2];
    auto& s3 = net.switches[SwitchId::S3];
    s1.id = SwitchId::S1;
    s2.id = SwitchId::S2;
    s3.id = SwitchId::S3;

    auto add_link = [&](const std::string& lower, const std::string& upper, ChannelKind c) {
        const auto id = static_cast<LinkId>(net.links.size());
        net.links.emplace_back(id, lower + "-" + upper, lower, upper, spec.link_spec(c), spec.seed);
        return id;
    };

    for (int k = 1; k <= n; ++k) {
        HostAttachment h;
        h.address = net::NodeAddress{k, host_ip(k), NodeRole::Host, "H" + std::to_string(k)};
        h.primary_link = add_link(h.address.name, "S1", ChannelKind::Primary);
        h.fallback_link = add_link(h.address.name, "S2", ChannelKind::Fallback);
        h.s1_port = k;
        h.s2_port = k;
        s1.ports[k] = PortBinding{h.primary_link, Direction::Down, true, h.address.name};
        s2.ports[k] = PortBinding{h.fallback_link, Direction::Down, true, h.address.name};
        net.hosts.push_back(std::move(h));
    }

    net.ids = net::NodeAddress{n + 1, kIdsIp, NodeRole::Ids, "IDS"};
    net.controller = net::NodeAddress{n + 2, kControllerIp, NodeRole::Controller, "CTRL"};

    net.s1_s3_link = add_link("S1", "S3", ChannelKind::Core);
    net.s2_s3_link = add_link("S2", "S3", ChannelKind::Core);
    net.ids_link = add_link("IDS", "S3", ChannelKind::Core);
    net.controller_link = add_link("CTRL", "S3", ChannelKind::Core);

    s1.ports[n + 1] = PortBinding{net.s1_s3_link, Direction::Up, false, "S3"};
    s2.ports[n + 1] = PortBinding{net.s2_s3_link, Direction::Up, false, "S3"};
    s3.ports[1] = PortBinding{net.s1_s3_link, Direction::Down, false, "S1"};
    s3.ports[2] = PortBinding{net.s2_s3_link, Direction::Down, false, "S2"};
    s3.ports[3] = PortBinding{net.ids_link, Direction::Down, false, "IDS"};
    s3.ports[4] = PortBinding{net.controller_link, Direction::Down, false, "CTRL"};
    return net;
}

std::string_view to_string(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::MissingPrimary: return "MissingPrimary";
        case Violation::Kind::MissingFallback: return "MissingFallback";
        case Violation::Kind::WrongChannel: return "WrongChannel";
        case Violation::Kind::DuplicateIp: return "DuplicateIp";
        case Violation::Kind::MissingCoreLink: return "MissingCoreLink";
        case Violation::Kind::BadRoleCount: return "BadRoleCount";
        case Violation::Kind::DanglingPort: return "DanglingPort";
    }
    return "?";
}

std::vector<Violation> validate(const Network& network) {
    std::vector<Violation> out;
    const auto n_links = static_cast<LinkId>(network.links.size());
    auto valid_link = [&](LinkId id) { return id >= 0 && id < n_links; };

    auto check_host_link = [&](const HostAttachment& h, LinkId id, ChannelKind want, Violation::Kind missing) {
        if (!valid_link(id) || network.link(id).lower() != h.address.name) {
            out.push_back({missing, h.address.name});
            return;
        }
        if (network.link(id).spec().channel != want) {
            out.push_back({Violation::Kind::WrongChannel, network.link(id).name()});
        }
    };

    std::set<Ip> seen;
    auto check_ip = [&](const net::NodeAddress& a) {
        if (!seen.insert(a.ip).second) out.push_back({Violation::Kind::DuplicateIp, a.name + "=" + a.ip});
    };

    for (const auto& h : network.hosts) {
        check_host_link(h, h.primary_link, ChannelKind::Primary, Violation::Kind::MissingPrimary);
        check_host_link(h, h.fallback_link, ChannelKind::Fallback, Violation::Kind::MissingFallback);
        if (h.address.role != NodeRole::Host) out.push_back({Violation::Kind::BadRoleCount, h.address.name});
        check_ip(h.address);
    }
    check_ip(network.ids);
    check_ip(network.controller);
    if (network.ids.role != NodeRole::Ids) out.push_back({Violation::Kind::BadRoleCount, "ids"});
    if (network.controller.role != NodeRole::Controller) out.push_back({Violation::Kind::BadRoleCount, "controller"});

    const std::pair<LinkId, const char*> core[] = {{network.s1_s3_link, "S1-S3"},
                                                    {network.s2_s3_link, "S2-S3"},
                                                    {network.ids_link, "IDS-S3"},
                                                    {network.controller_link, "CTRL-S3"}};
    for (const auto& [id, name] : core) {
        if (!valid_link(id) || network.link(id).spec().channel != ChannelKind::Core) {
            out.push_back({Violation::Kind::MissingCoreLink, name});
        }
    }

    for (const auto& [sid, sw] : network.switches) {
        for (const auto& [port, b] : sw.ports) {
            if (!valid_link(b.link)) {
                out.push_back({Violation::Kind::DanglingPort,
                               std::string(net::to_string(sid)) + ":" + std::to_string(port)});
            }
        }
    }
    return out;
}

void export_text(const Network& network, std::ostream& os) {
    for (const auto& h : network.hosts) {
        os << "node " << h.address.name << ' ' << h.address.ip << ' ' << net::to_string(h.address.role)
           << " primary=S1:" << h.s1_port << " fallback=S2:" << h.s2_port << '\n';
    }
    for (const auto* a : {&network.ids, &network.controller}) {
        os << "node " << a->name << ' ' << a->ip << ' ' << net::to_string(a->role) << '\n';
    }
    for (const auto& [sid, sw] : network.switches) {
        for (const auto& [port, b] : sw.ports) {
            os << "port " << net::to_string(sid) << ':' << port << " link=" << network.link(b.link).name()
               << " peer=" << b.peer << (b.edge ? " edge" : "") << '\n';
        }
    }
    for (const auto& l : network.links) {
        const auto& s = l.spec();
        os << "link " << l.id() << ' ' << l.name() << ' ' << net::to_string(s.channel) << " down_bps=" << s.down_bps
           << " up_bps=" << s.up_bps << " prop_delay_us=" << s.prop_delay.us() << " loss_p=" << s.loss_p << ' '
           << net::to_string(s.state) << '\n';
    }
}

}  // namespace tasdn::topology
