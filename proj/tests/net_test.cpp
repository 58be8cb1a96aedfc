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

#include <cmath>

#include "tasdn/net/link.hpp"
#include "tasdn/net/switch.hpp"
#include "tasdn/sim/errors.hpp"

using namespace tasdn;
using namespace tasdn::net;
using namespace tasdn::sim::literals;

namespace {

Packet pkt(std::uint32_t size, Protocol proto = Protocol::Icmp, Ip src = "10.0.0.1", Ip dst = "10.0.0.2") {
    Packet p;
    p.pkt_id = 1;
    p.src_ip = std::move(src);
    p.dst_ip = std::move(dst);
    p.protocol = proto;
    p.size = size;
    return p;
}

LinkSpec lossless(std::int64_t bps, SimTime prop) {
    LinkSpec s;
    s.down_bps = bps;
    s.up_bps = bps;
    s.prop_delay = prop;
    s.loss_p = 0.0;
    s.channel = ChannelKind::Fallback;
    return s;
}

SwitchState four_port_switch() {
    SwitchState sw;
    sw.id = SwitchId::S1;
    for (PortId p = 1; p <= 4; ++p) sw.ports[p] = PortBinding{p, Direction::Down, true, "H" + std::to_string(p)};
    return sw;
}

FlowRule rule(Ip src, Ip dst, PortId port, ChannelKind c = ChannelKind::Primary, int prio = 10) {
    FlowRule r;
    r.match = {std::move(src), std::move(dst)};
    r.out_port = port;
    r.channel = c;
    r.priority = prio;
    return r;
}

}  // namespace

TEST(LinkSpec, Defaults) {
    const auto p = LinkSpec::defaults(ChannelKind::Primary);
    EXPECT_EQ(p.down_bps, 50'000'000);
    EXPECT_EQ(p.up_bps, 10'000'000);
    EXPECT_DOUBLE_EQ(p.loss_p, 0.015);
    const auto f = LinkSpec::defaults(ChannelKind::Fallback);
    EXPECT_EQ(f.down_bps, 5'000'000);
    EXPECT_EQ(f.up_bps, 1'000'000);
    EXPECT_DOUBLE_EQ(f.loss_p, 0.06);
    const auto c = LinkSpec::defaults(ChannelKind::Core);
    EXPECT_EQ(c.down_bps, 1'000'000'000);
    EXPECT_EQ(c.up_bps, 200'000'000);
    EXPECT_DOUBLE_EQ(c.loss_p, 0.01);
}

TEST(LinkSpec, ValidateRejectsBadValues) {
    auto s = LinkSpec::defaults(ChannelKind::Core);
    s.loss_p = 1.0;
    EXPECT_THROW(s.validate(), InvalidSpec);
    s = LinkSpec::defaults(ChannelKind::Core);
    s.up_bps = 0;
    EXPECT_THROW(s.validate(), InvalidSpec);
}

TEST(Serialization, RoundsUp) {
    EXPECT_EQ(serialization_delay(1250, 1'000'000), 10000_us);
    EXPECT_EQ(serialization_delay(98, 1'000'000), 784_us);
    EXPECT_EQ(serialization_delay(98, 5'000'000), 157_us);  // 156.8
    EXPECT_EQ(serialization_delay(128, 1'000'000'000), 2_us);  // 1.024
}

TEST(Transmit, HandComputedArrival) {
    sim::RngStream rng(1, "t");
    auto p = pkt(1250);
    const auto out = transmit(p, lossless(1'000'000, 2000_us), Direction::Up, 100_us, rng);
    ASSERT_TRUE(out.delivered());
    EXPECT_EQ(out.arrival, 100_us + 2000_us + 10000_us);
    EXPECT_EQ(p.channel_trace, std::vector<ChannelKind>{ChannelKind::Fallback});
}

TEST(Transmit, DownLinkRefuses) {
    sim::RngStream rng(1, "t");
    auto s = lossless(1'000'000, 1_us);
    s.state = LinkState::Down;
    auto p = pkt(64);
    EXPECT_EQ(transmit(p, s, Direction::Down, 0_us, rng).kind, TxOutcome::Kind::LinkDown);
    EXPECT_TRUE(p.channel_trace.empty());
}

TEST(Transmit, PrimaryLossWithinThreeSigma) {
    // 10000 * 0.015 = 150, sigma = sqrt(10000 * 0.015 * 0.985) ~ 12.16
    sim::RngStream rng(2024, "link/H1-S1");
    const auto spec = LinkSpec::defaults(ChannelKind::Primary);
    int lost = 0;
    for (int i = 0; i < 10000; ++i) {
        auto p = pkt(98);
        lost += transmit(p, spec, Direction::Up, 0_us, rng).kind == TxOutcome::Kind::Lost ? 1 : 0;
    }
    EXPECT_GE(lost, 104);
    EXPECT_LE(lost, 196);
}

TEST(Link, FifoOccupancy) {
    Link l(0, "H1-S2", "H1", "S2", lossless(1'000'000, 500_us), 1);
    auto a = pkt(98);
    auto b = pkt(98);
    const auto first = l.send(a, Direction::Up, 0_us);
    const auto second = l.send(b, Direction::Up, 0_us);
    EXPECT_EQ(first.arrival, 1284_us);
    EXPECT_EQ(second.arrival, 2068_us);  // waits 784 us behind the first
    auto c = pkt(98);
    EXPECT_EQ(l.send(c, Direction::Down, 0_us).arrival, 1284_us);  // other direction is independent
}

TEST(Link, StateChangesNotifyOnce) {
    Link l(3, "H1-S1", "H1", "S1", LinkSpec::defaults(ChannelKind::Primary), 1);
    const auto down = l.set_state(LinkState::Down, 5_s, 2250_us);
    ASSERT_TRUE(down.has_value());
    EXPECT_EQ(down->notify_at, 5_s + 2250_us);
    EXPECT_EQ(down->link, 3);
    EXPECT_FALSE(l.set_state(LinkState::Down, 6_s, 2250_us).has_value());
    auto p = pkt(98);
    EXPECT_EQ(l.send(p, Direction::Up, 6_s).kind, TxOutcome::Kind::LinkDown);
    const auto up = l.set_state(LinkState::Up, 7_s, 1000_us);
    ASSERT_TRUE(up.has_value());
    EXPECT_EQ(up->state, LinkState::Up);
}

TEST(Link, SameSeedSameLosses) {
    Link a(0, "H2-S1", "H2", "S1", LinkSpec::defaults(ChannelKind::Primary), 77);
    Link b(0, "H2-S1", "H2", "S1", LinkSpec::defaults(ChannelKind::Primary), 77);
    for (int i = 0; i < 2000; ++i) {
        auto p = pkt(98);
        auto q = pkt(98);
        EXPECT_EQ(a.send(p, Direction::Up, SimTime{i * 1000}).kind, b.send(q, Direction::Up, SimTime{i * 1000}).kind);
    }
}

TEST(Switch, RuleHitForwards) {
    auto sw = four_port_switch();
    ASSERT_TRUE(sw.install(rule("10.0.0.1", "10.0.0.2", 3)));
    EXPECT_EQ(switch_forward(sw, pkt(98), 1, 10_us), ForwardAction{ForwardTo{3}});
    EXPECT_EQ(sw.lookup({"10.0.0.1", "10.0.0.2"})->last_hit, 10_us);
    EXPECT_EQ(sw.mac_ip_table.at("10.0.0.1"), 1);
}

TEST(Switch, ArpMissFloodsOtherPorts) {
    auto sw = four_port_switch();
    const ForwardAction expect = FloodTo{{1, 3, 4}};
    EXPECT_EQ(switch_forward(sw, pkt(42, Protocol::Arp), 2, 0_us), expect);
}

TEST(Switch, IcmpMissEscalates) {
    auto sw = four_port_switch();
    EXPECT_EQ(switch_forward(sw, pkt(98), 1, 0_us), ForwardAction{EscalatePacketIn{}});
}

TEST(Switch, UnknownIngressPort) {
    auto sw = four_port_switch();
    EXPECT_THROW(switch_forward(sw, pkt(98), 9, 0_us), std::out_of_range);
}

TEST(Switch, InstallSemantics) {
    auto sw = four_port_switch();
    EXPECT_TRUE(sw.install(rule("a", "b", 2)));
    EXPECT_FALSE(sw.install(rule("a", "b", 2)));
    EXPECT_THROW(sw.install(rule("a", "b", 3)), DuplicateRule);
    EXPECT_THROW(sw.install(rule("a", "c", 7)), std::out_of_range);
    EXPECT_TRUE(sw.install(rule("a", "b", 4, ChannelKind::Primary, 20)));
    EXPECT_EQ(sw.lookup({"a", "b"})->out_port, 4);  // highest priority wins
}

TEST(Switch, RemoveIf) {
    auto sw = four_port_switch();
    sw.install(rule("a", "b", 2));
    sw.install(rule("b", "a", 1));
    sw.install(rule("c", "d", 4, ChannelKind::Fallback));
    const auto removed = sw.remove_if([](const FlowRule& r) { return r.match.touches("a"); });
    EXPECT_EQ(removed.size(), 2u);
    EXPECT_EQ(sw.flow_table.size(), 1u);
}
