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

#include <gtest/gtest.h>

#include <algorithm>
#include <queue>
#include <sstream>

#include "tasdn/sim/errors.hpp"
#include "tasdn/topology/topology.hpp"

using namespace tasdn;
using namespace tasdn::topology;

namespace {

// Nodes reachable from `start` over links whose channel is allowed.
std::set<std::string> reachable(const Network& net, const std::string& start, std::set<ChannelKind> allowed) {
    std::set<std::string> seen{start};
    std::queue<std::string> todo;
    todo.push(start);
    while (!todo.empty()) {
        const auto at = todo.front();
        todo.pop();
        for (const auto& l : net.links) {
            if (!allowed.count(l.spec().channel)) continue;
            std::string next;
            if (l.lower() == at) next = l.upper();
            if (l.upper() == at) next = l.lower();
            if (!next.empty() && seen.insert(next).second) todo.push(next);
        }
    }
    return seen;
}

}  // namespace

TEST(Build, FifteenHosts) {
    const auto net = build(TopologySpec{15, {}, 1});
    EXPECT_EQ(net.hosts.size(), 15u);
    EXPECT_EQ(net.switches.size(), 3u);
    EXPECT_EQ(net.links.size(), 34u);
    EXPECT_TRUE(validate(net).empty());
}

TEST(Build, LinkCountFormula) {
    for (int n : {2, 3, 7, 30, 50}) {
        const auto net = build(TopologySpec{n, {}, 1});
        EXPECT_EQ(net.links.size(), static_cast<std::size_t>(2 * n + 4)) << n;
        EXPECT_TRUE(validate(net).empty()) << n;
    }
}

TEST(Build, TooSmall) {
    EXPECT_THROW(build(TopologySpec{1, {}, 1}), InvalidSpec);
    EXPECT_THROW(build(TopologySpec{0, {}, 1}), InvalidSpec);
}

TEST(Build, AddressesAndPorts) {
    const auto net = build(TopologySpec{4, {}, 1});
    EXPECT_EQ(net.hosts[3].address.ip, "10.0.0.4");
    EXPECT_EQ(net.hosts[3].address.name, "H4");
    EXPECT_EQ(net.ids.ip, kIdsIp);
    EXPECT_EQ(net.controller.ip, kControllerIp);
    EXPECT_EQ(net.sw(SwitchId::S1).edge_ports(), (std::vector<PortId>{1, 2, 3, 4}));
    EXPECT_EQ(net.sw(SwitchId::S3).ports.size(), 4u);
    EXPECT_EQ(net.link(net.hosts[0].primary_link).spec().channel, ChannelKind::Primary);
    EXPECT_EQ(net.link(net.hosts[0].fallback_link).spec().channel, ChannelKind::Fallback);
    EXPECT_EQ(net.resolve("H2"), "10.0.0.2");
    EXPECT_EQ(net.resolve("10.0.0.3"), "10.0.0.3");
    EXPECT_FALSE(net.resolve("H9").has_value());
}

TEST(Build, EveryHostReachesEveryOtherOnEachChannel) {
    const auto net = build(TopologySpec{6, {}, 1});
    const auto via_primary = reachable(net, "H1", {ChannelKind::Primary});
    const auto via_fallback = reachable(net, "H1", {ChannelKind::Fallback});
    for (const auto& h : net.hosts) {
        EXPECT_TRUE(via_primary.count(h.address.name));
        EXPECT_TRUE(via_fallback.count(h.address.name));
    }
    // The two channels only meet at S3.
    EXPECT_FALSE(via_primary.count("S2"));
    const auto all = reachable(net, "H1", {ChannelKind::Primary, ChannelKind::Fallback, ChannelKind::Core});
    EXPECT_TRUE(all.count("IDS"));
    EXPECT_TRUE(all.count("CTRL"));
}

TEST(Build, OverridesApply) {
    TopologySpec spec{3, {}, 1};
    auto s = net::LinkSpec::defaults(ChannelKind::Fallback);
    s.prop_delay = sim::SimTime{900};
    spec.link_overrides[ChannelKind::Fallback] = s;
    const auto net = build(spec);
    EXPECT_EQ(net.link(net.hosts[2].fallback_link).spec().prop_delay.us(), 900);
    s.loss_p = 2.0;
    spec.link_overrides[ChannelKind::Fallback] = s;
    EXPECT_THROW(build(spec), InvalidSpec);
}

TEST(Validate, MissingFallback) {
    auto net = build(TopologySpec{3, {}, 1});
    net.hosts[1].fallback_link = -1;
    EXPECT_EQ(validate(net), (std::vector<Violation>{{Violation::Kind::MissingFallback, "H2"}}));
}

TEST(Validate, DuplicateIp) {
    auto net = build(TopologySpec{3, {}, 1});
    net.hosts[2].address.ip = net.hosts[0].address.ip;
    const auto v = validate(net);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].kind, Violation::Kind::DuplicateIp);
}

TEST(Validate, WrongChannelOnPrimary) {
    auto net = build(TopologySpec{2, {}, 1});
    std::swap(net.hosts[0].primary_link, net.hosts[0].fallback_link);
    const auto v = validate(net);
    EXPECT_EQ(std::count_if(v.begin(), v.end(), [](const Violation& x) { return x.kind == Violation::Kind::WrongChannel; }),
              2);
}

TEST(Export, OneLinePerElement) {
    const auto net = build(TopologySpec{2, {}, 1});
    std::ostringstream os;
    export_text(net, os);
    const auto text = os.str();
    int node = 0, port = 0, link = 0;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("node ", 0) == 0) ++node;
        if (line.rfind("port ", 0) == 0) ++port;
        if (line.rfind("link ", 0) == 0) ++link;
    }
    EXPECT_EQ(node, 4);
    EXPECT_EQ(port, 3 + 3 + 4);
    EXPECT_EQ(link, 8);
    EXPECT_NE(text.find("node H1 10.0.0.1 host primary=S1:1 fallback=S2:1"), std::string::npos);
}
