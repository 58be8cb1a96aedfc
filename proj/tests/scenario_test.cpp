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
#include <random>
#include <sstream>

#include "tasdn/scenario/config.hpp"
#include "tasdn/scenario/simulation.hpp"
#include "tasdn/scenario/sweep.hpp"
#include "tasdn/sim/errors.hpp"

using namespace tasdn;
using namespace tasdn::scenario;
using namespace tasdn::sim::literals;

namespace {

std::string path(const std::string& name) { return std::string(TASDN_SCENARIO_DIR) + "/" + name; }

const char* kMinimal = R"(
version: 1
duration_us: 1000000
topology:
  n_hosts: 15
traffic:
  - {src: H1, dst: H2}
)";

ScenarioConfig minimal() { return parse_scenario(kMinimal); }

std::string csv_of(const metrics::KpiReport& r) {
    std::ostringstream os;
    metrics::emit_csv(std::vector{r}, os);
    return os.str();
}

}  // namespace

TEST(Load, MinimalFillsDefaults) {
    const auto c = minimal();
    EXPECT_EQ(c.topology.n_hosts, 15);
    EXPECT_EQ(c.topology.link_spec(ChannelKind::Primary), net::LinkSpec::defaults(ChannelKind::Primary));
    EXPECT_EQ(c.topology.link_spec(ChannelKind::Fallback), net::LinkSpec::defaults(ChannelKind::Fallback));
    EXPECT_EQ(c.threshold, 50);
    EXPECT_EQ(c.initial_trust, 100);
    ASSERT_EQ(c.traffic.size(), 1u);
    EXPECT_EQ(c.traffic[0].protocol, net::Protocol::Icmp);
    EXPECT_EQ(c.ids_mode, IdsMode::Async);
}

TEST(Load, DirectiveAfterEnd) {
    EXPECT_THROW(parse_scenario(std::string(kMinimal) +
                                "directives:\n  - {at_us: 2000000, fail_link: {host: H1, channel: primary}}\n"),
                 ValidationError);
}

TEST(Load, UnknownNodeInSetTrust) {
    EXPECT_THROW(parse_scenario(std::string(kMinimal) + "directives:\n  - {at_us: 10, set_trust: {node: 10.0.0.99, score: 30}}\n"),
                 ValidationError);
    EXPECT_THROW(parse_scenario(std::string(kMinimal) + "directives:\n  - {at_us: 10, set_trust: {node: H16, score: 30}}\n"),
                 ValidationError);
}

TEST(Load, OtherInvariants) {
    EXPECT_THROW(parse_scenario("duration_us: 10\ntopology: {n_hosts: 1}\n"), ValidationError);
    EXPECT_THROW(parse_scenario(std::string(kMinimal) + "controller: {threshold: 120}\n"), ValidationError);
    EXPECT_THROW(parse_scenario("duration_us: 10\ntopology: {n_hosts: 2}\ntraffic: [{src: H1, dst: H1}]\n"),
                 ValidationError);
    EXPECT_THROW(parse_scenario(std::string(kMinimal) +
                                "directives:\n  - {at_us: 20, set_recovery: {per_s: 1}}\n  - {at_us: 10, set_recovery: {per_s: 2}}\n"),
                 ValidationError);
}

TEST(Load, ParseErrorsCarryLine) {
    try {
        parse_scenario("version: 1\nduration_us: 100\ntopology:\n  n_hosts: 3\n  colour: red\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 5);
        EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
    }
    try {
        parse_scenario("version: 1\nduration_us: [1,\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_GE(e.line(), 2);
    }
    EXPECT_THROW(parse_scenario("duration_us: soon\ntopology: {n_hosts: 3}\n"), ParseError);
    EXPECT_THROW(load_scenario("/nonexistent.scn"), IoError);
}

TEST(Load, ShippedScenariosRoundTrip) {
    for (const char* name : {"failover_link.scn", "malicious_h4.scn", "baseline.scn", "sweep.scn"}) {
        const auto c = load_scenario(path(name));
        EXPECT_EQ(parse_scenario(serialize(c)), c) << name;
        EXPECT_EQ(serialize(parse_scenario(serialize(c))), serialize(c)) << name;
    }
}

TEST(Load, RandomConfigsRoundTrip) {
    std::mt19937_64 gen(2718);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        ScenarioConfig c;
        c.name = "r" + std::to_string(i);
        c.seed = gen();
        c.duration = SimTime{static_cast<std::int64_t>(1'000'000 + gen() % 50'000'000)};
        c.topology.n_hosts = 2 + static_cast<int>(gen() % 60);
        c.topology.seed = c.seed;
        if (gen() % 2) {
            auto s = net::LinkSpec::defaults(ChannelKind::Fallback);
            s.loss_p = std::round(unit(gen) * 9000) / 100 / 100.0;
            s.prop_delay = SimTime{static_cast<std::int64_t>(gen() % 9000)};
            s.up_bps = 1 + static_cast<std::int64_t>(gen() % 100'000'000);
            c.topology.link_overrides[ChannelKind::Fallback] = s;
        }
        c.threshold = std::round(unit(gen) * 1000) / 10;
        c.ids.recovery_rate = unit(gen) * 5;
        c.ids_mode = gen() % 2 ? IdsMode::Inline : IdsMode::Async;
        c.ids_tap_all = gen() % 2;
        c.quarantine_mode = gen() % 2 ? controller::QuarantineMode::Redirect : controller::QuarantineMode::DropAll;
        if (gen() % 2) c.idle_timeout = SimTime{static_cast<std::int64_t>(1 + gen() % 10'000'000)};
        if (gen() % 3 == 0) c.ids.acl = std::set<std::pair<net::Ip, net::Ip>>{{"10.0.0.1", "10.0.0.2"}};
        const int n = c.topology.n_hosts;
        for (int f = 0; f < 3; ++f) {
            TrafficFlow flow;
            flow.src = "H" + std::to_string(1 + gen() % n);
            flow.dst = "10.0.0." + std::to_string(1 + gen() % n);
            if (*topology::build({n, {}, 1}).resolve(flow.src) == flow.dst) continue;
            flow.start = SimTime{static_cast<std::int64_t>(gen() % c.duration.us())};
            if (gen() % 2) flow.stop = flow.start + SimTime{static_cast<std::int64_t>(gen() % 1000000)};
            flow.rate_pps = 0.5 + unit(gen) * 500;
            flow.protocol = gen() % 2 ? net::Protocol::Icmp : net::Protocol::Ipv4Data;
            c.traffic.push_back(flow);
        }
        if (gen() % 2) c.pairs = PairsPattern{SimTime{5}, std::nullopt, 33.3, 200, net::Protocol::Icmp};
        SimTime at = SimTime::zero();
        for (int d = 0; d < 4; ++d) {
            at += SimTime{static_cast<std::int64_t>(gen() % (c.duration.us() / 5))};
            Directive dir;
            dir.at = at;
            dir.kind = static_cast<Directive::Kind>(gen() % 6);
            dir.target = "H" + std::to_string(1 + gen() % n);
            dir.channel = gen() % 2 ? ChannelKind::Primary : ChannelKind::Fallback;
            dir.finding = static_cast<ids::FindingKind>(gen() % 3);
            dir.value = 1 + std::floor(unit(gen) * 99);
            if (dir.kind == Directive::Kind::SetPenalty || dir.kind == Directive::Kind::SetRecovery ||
                dir.kind == Directive::Kind::SetThreshold) {
                dir.target.clear();
            }
            if (dir.kind != Directive::Kind::FailLink && dir.kind != Directive::Kind::RestoreLink) {
                dir.channel = ChannelKind::Primary;
            } else {
                dir.value = 0;
            }
            if (dir.kind != Directive::Kind::SetPenalty) dir.finding = ids::FindingKind::RateAnomaly;
            c.directives.push_back(dir);
        }
        ASSERT_NO_THROW(validate(c)) << serialize(c);
        ASSERT_EQ(serialize(parse_scenario(serialize(c))), serialize(c));
        ASSERT_EQ(parse_scenario(serialize(c)), c) << serialize(c);
    }
}

TEST(Run, BaselineStaysOnPrimary) {
    const auto r = run(load_scenario(path("baseline.scn")));
    const auto& c = r.report.counters;
    ASSERT_TRUE(c.count(ChannelKind::Primary));
    const auto& p = c.at(ChannelKind::Primary);
    const double n = static_cast<double>(p.lost + p.delivered);
    const double sigma = std::sqrt(0.015 * 0.985 / n);
    ASSERT_TRUE(r.report.loss_primary);
    EXPECT_NEAR(*r.report.loss_primary, 0.015, 3 * sigma);
    EXPECT_FALSE(c.count(ChannelKind::Fallback));
    EXPECT_FALSE(r.report.loss_fallback.has_value());
    for (const auto& d : r.journal.deliveries) ASSERT_FALSE(d.used(ChannelKind::Fallback));
}

TEST(Run, FailoverMatchesClosedForm) {
    Simulation sim(load_scenario(path("failover_link.scn")));
    const auto r = sim.run();
    const auto& cfg = sim.config();
    const auto& net = sim.network();
    const auto& up = net.link(net.hosts[0].fallback_link).spec();
    const auto& down = net.link(net.hosts[1].fallback_link).spec();
    const auto ser = [](std::uint32_t bytes, std::int64_t bps) {
        return static_cast<std::int64_t>(std::ceil(bytes * 8.0 * 1e6 / static_cast<double>(bps)));
    };
    const std::int64_t transit = ser(98, up.up_bps) + up.prop_delay.us() + ser(98, down.down_bps) + down.prop_delay.us();
    const std::int64_t expect = cfg.detection_delay.us() + cfg.control_latency.us() +
                                sim.transit_from_controller(net::SwitchId::S2).us() + transit;
    ASSERT_TRUE(r.report.fallback_delay_us);
    EXPECT_NEAR(*r.report.fallback_delay_us, static_cast<double>(expect), 1.0);
    ASSERT_TRUE(r.report.routing_adaptability_us);
    EXPECT_LE(*r.report.routing_adaptability_us, *r.report.fallback_delay_us);
}

TEST(Run, HostTrafficMovesToFallbackAfterSetTrust) {
    const auto r = run(load_scenario(path("malicious_h4.scn")));
    ASSERT_FALSE(r.journal.enforcements.empty());
    const SimTime enforced = r.journal.enforcements.front().at;
    EXPECT_GT(enforced, 2_s);
    int after = 0;
    for (const auto& d : r.journal.deliveries) {
        if (d.created_at < enforced || (d.src_ip != "10.0.0.4" && d.dst_ip != "10.0.0.4")) continue;
        ++after;
        for (auto ch : d.channels) ASSERT_EQ(ch, ChannelKind::Fallback) << d.pkt_id;
    }
    EXPECT_GT(after, 1000);
    // Unrelated flow untouched.
    for (const auto& d : r.journal.deliveries) {
        if (d.src_ip == "10.0.0.1") ASSERT_FALSE(d.used(ChannelKind::Fallback));
    }
}

TEST(Run, InlineTransitionIsControlLatency) {
    auto c = load_scenario(path("malicious_h4.scn"));
    c.ids_mode = IdsMode::Inline;
    const auto r = run(c);
    ASSERT_TRUE(r.report.trust_transition_us);
    EXPECT_EQ(*r.report.trust_transition_us, static_cast<double>(c.control_latency.us()));
}

TEST(Run, DeterministicForSameSeed) {
    for (const char* name : {"failover_link.scn", "malicious_h4.scn"}) {
        const auto c = load_scenario(path(name));
        const auto a = run(c);
        const auto b = run(c);
        EXPECT_EQ(a.trace.hash(), b.trace.hash()) << name;
        EXPECT_EQ(csv_of(a.report), csv_of(b.report)) << name;
    }
}

TEST(Run, SeedChangesLosses) {
    auto c = load_scenario(path("failover_link.scn"));
    const auto a = run(c);
    c.seed += 1;
    const auto b = run(c);
    EXPECT_NE(a.trace.hash(), b.trace.hash());
}

TEST(Run, EachDirectiveTracedOnceAtItsTime) {
    auto c = load_scenario(path("sweep.scn"));
    c.directives.push_back(Directive{Directive::Kind::RestoreLink, 9_s, "H1", ChannelKind::Primary, {}, 0});
    c.directives.push_back(Directive{Directive::Kind::SetThreshold, 10_s, "", ChannelKind::Primary, {}, 55});
    const auto r = run(c);
    for (const auto& d : c.directives) {
        int hits = 0;
        for (const auto& rec : r.trace.records()) {
            if (rec.summary.rfind("directive " + std::string(to_string(d.kind)), 0) == 0) {
                ++hits;
                EXPECT_EQ(rec.time_us, d.at.us());
            }
        }
        EXPECT_EQ(hits, 1) << to_string(d.kind);
    }
}

TEST(Run, RulesReusedAfterFirstPacket) {
    const auto r = run(load_scenario(path("baseline.scn")));
    std::map<std::pair<net::Ip, net::Ip>, SimTime> installed;
    for (const auto& i : r.journal.installs) {
        auto key = std::make_pair(i.match.src_ip, i.match.dst_ip);
        if (!installed.count(key)) installed[key] = i.completed_at;
    }
    ASSERT_FALSE(installed.empty());
    for (const auto& p : r.journal.packet_ins) {
        auto it = installed.find({p.src_ip, p.dst_ip});
        ASSERT_NE(it, installed.end());
        ASSERT_LT(p.at, it->second) << p.src_ip << ">" << p.dst_ip;
    }
}

TEST(Run, ControllerViewMatchesSwitches) {
    Simulation sim(load_scenario(path("failover_link.scn")));
    sim.run();
    for (auto sw : {net::SwitchId::S1, net::SwitchId::S2, net::SwitchId::S3}) {
        const auto& mine = sim.controller().rules(sw);
        const auto& theirs = sim.network().sw(sw).flow_table;
        ASSERT_EQ(mine.size(), theirs.size()) << net::to_string(sw);
        for (const auto& [key, rule] : mine) {
            auto it = theirs.find(key);
            ASSERT_NE(it, theirs.end());
            EXPECT_TRUE(it->second.same_action(rule));
        }
    }
}

TEST(Run, PrimaryHopsAlwaysAuthorized) {
    const auto r = run(load_scenario(path("malicious_h4.scn")));
    for (const auto& h : r.journal.hops) {
        if (!h.payload || h.channel != ChannelKind::Primary || h.auth != metrics::HopAuth::Rule) continue;
        ASSERT_TRUE(h.primary_rule_present) << h.pkt_id;
    }
}

TEST(Run, IdleRulesExpire) {
    auto c = load_scenario(path("failover_link.scn"));
    c.directives.clear();
    c.traffic[0].stop = 2_s;
    c.idle_timeout = 1_s;
    Simulation sim(c);
    sim.run();
    EXPECT_TRUE(sim.network().sw(net::SwitchId::S1).flow_table.empty());
    EXPECT_TRUE(sim.controller().rules(net::SwitchId::S1).empty());
}

TEST(Run, RestoredLinkCarriesNewFlows) {
    auto c = load_scenario(path("failover_link.scn"));
    c.directives.push_back(Directive{Directive::Kind::RestoreLink, 8_s, "H1", ChannelKind::Primary, {}, 0});
    c.traffic.push_back(TrafficFlow{"H1", "H5", 9_s, std::nullopt, 50, 98, net::Protocol::Icmp});
    const auto r = run(c);
    int primary = 0;
    for (const auto& d : r.journal.deliveries) {
        if (d.src_ip == "10.0.0.1" && d.dst_ip == "10.0.0.5" && d.used(ChannelKind::Primary)) ++primary;
    }
    EXPECT_GT(primary, 400);
}

TEST(Run, RateAttackerQuarantinedOrganically) {
    auto c = load_scenario(path("baseline.scn"));
    c.pairs.reset();
    c.traffic = {TrafficFlow{"H6", "H7", 100_ms, std::nullopt, 400, 98, net::Protocol::Icmp}};
    const auto r = run(c);
    ASSERT_FALSE(r.journal.crossings.empty());
    EXPECT_TRUE(r.journal.crossings.front().downward);
    EXPECT_EQ(r.journal.crossings.front().ip, "10.0.0.6");
    ASSERT_TRUE(r.report.trust_transition_us);
}

TEST(Run, SimulationRunsOnce) {
    Simulation sim(minimal());
    sim.run();
    EXPECT_THROW(sim.run(), std::logic_error);
}

TEST(Sweep, RowsOrderedBySize) {
    auto c = load_scenario(path("sweep.scn"));
    c.duration = 9_s;
    const auto s = sweep(c, {30, 15});
    ASSERT_EQ(s.reports.size(), 2u);
    EXPECT_EQ(s.csv.substr(0, s.csv.find('\n')), metrics::kCsvHeader);
    EXPECT_LT(s.csv.find("\n15,"), s.csv.find("\n30,"));
    EXPECT_EQ(sweep(c, {15}).reports.size(), 1u);
}

TEST(Sweep, Errors) {
    const auto c = minimal();
    EXPECT_THROW(sweep(c, {1}), ValidationError);
    EXPECT_THROW(sweep(c, {}), ValidationError);
    EXPECT_EQ(parse_sizes("15,30,50"), (std::vector<int>{15, 30, 50}));
    EXPECT_THROW(parse_sizes("15,x"), ValidationError);
    EXPECT_THROW(parse_sizes(""), ValidationError);
}
