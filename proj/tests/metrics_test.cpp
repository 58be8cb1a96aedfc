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
#include <sstream>

#include "tasdn/metrics/kpi.hpp"
#include "tasdn/sim/errors.hpp"

using namespace tasdn;
using namespace tasdn::metrics;
using namespace tasdn::sim::literals;

namespace {

const HostPair kPair = HostPair::of("10.0.0.1", "10.0.0.2");

DeliveryRecord delivery(SimTime at, std::vector<ChannelKind> channels) {
    return DeliveryRecord{at, 1, "10.0.0.1", "10.0.0.2", at, std::move(channels)};
}

HopRecord hop(ChannelKind c, net::TxOutcome::Kind k, SimTime arrival = 1_ms) {
    HopRecord h;
    h.channel = c;
    h.outcome = k;
    h.payload = true;
    h.arrival = arrival;
    return h;
}

RuleInstallRecord install(SimTime done, std::optional<std::uint64_t> trigger, bool idempotent = false) {
    RuleInstallRecord r;
    r.completed_at = done;
    r.trigger_id = trigger;
    r.idempotent = idempotent;
    return r;
}

}  // namespace

TEST(FallbackDelay, SumOfConfiguredDelays) {
    // detection 1000 + control 500 + fallback transit 3200
    Journal j;
    j.triggers.push_back({1, TriggerRecord::Kind::LinkDown, 5_s, "10.0.0.1", {kPair}});
    j.deliveries.push_back(delivery(5_s - 1_ms, {ChannelKind::Fallback, ChannelKind::Fallback}));
    j.deliveries.push_back(delivery(5_s + 2_ms, {ChannelKind::Primary, ChannelKind::Primary}));
    j.deliveries.push_back(delivery(5_s + 4700_us, {ChannelKind::Fallback, ChannelKind::Fallback}));
    EXPECT_EQ(fallback_delay(j, j.triggers[0]), 4700_us);
}

TEST(FallbackDelay, UnrelatedPairIgnored) {
    Journal j;
    j.triggers.push_back({1, TriggerRecord::Kind::LinkDown, 0_us, "10.0.0.1", {kPair}});
    j.deliveries.push_back(DeliveryRecord{1_ms, 1, "10.0.0.3", "10.0.0.4", 0_us, {ChannelKind::Fallback}});
    EXPECT_THROW(fallback_delay(j, j.triggers[0]), NoFallbackObserved);
}

TEST(FallbackDelay, NoActiveFlows) {
    Journal j;
    j.triggers.push_back({1, TriggerRecord::Kind::LinkDown, 0_us, "10.0.0.1", {}});
    EXPECT_THROW(fallback_delay(j, j.triggers[0]), NoFallbackObserved);
}

TEST(FallbackDelay, ReportAveragesTriggers) {
    Journal j;
    j.triggers.push_back({1, TriggerRecord::Kind::LinkDown, 1_s, "10.0.0.1", {kPair}});
    j.triggers.push_back({2, TriggerRecord::Kind::TrustDrop, 2_s, "10.0.0.1", {kPair}});
    j.deliveries.push_back(delivery(1_s + 4_ms, {ChannelKind::Fallback}));
    j.deliveries.push_back(delivery(2_s + 6_ms, {ChannelKind::Fallback}));
    const auto r = compute_report(j);
    ASSERT_TRUE(r.fallback_delay_us);
    EXPECT_DOUBLE_EQ(*r.fallback_delay_us, 5000.0);
    EXPECT_EQ(r.fallback_unobserved, 0);
}

TEST(TrustTransition, ConstructedOverride) {
    Journal j;
    j.crossings.push_back({0_us, "10.0.0.4", 100, 30, true});
    j.enforcements.push_back({1500_us, "10.0.0.4"});
    j.enforcements.push_back({9000_us, "10.0.0.4"});
    EXPECT_EQ(trust_transition_time(j), 1500.0);
}

TEST(TrustTransition, AbsentWithoutCrossings) {
    Journal j;
    j.enforcements.push_back({1500_us, "10.0.0.4"});
    EXPECT_FALSE(trust_transition_time(j).has_value());
    j.crossings.push_back({0_us, "10.0.0.4", 30, 60, false});
    EXPECT_FALSE(trust_transition_time(j).has_value());
}

TEST(FlowInstall, MissToCompletion) {
    Journal j;
    auto r = install(1716_us, std::nullopt);
    r.from_packet_in = true;
    r.miss_at = 1000_us;
    j.installs.push_back(r);
    r.idempotent = true;
    r.completed_at = 9000_us;
    j.installs.push_back(r);
    j.installs.push_back(install(5000_us, 1));  // not a packet-in answer
    EXPECT_EQ(flow_install_time(j), 716.0);
}

TEST(Loss, LosslessIsZero) {
    Journal j;
    j.end = 1_s;
    for (int i = 0; i < 10; ++i) {
        j.hops.push_back(hop(ChannelKind::Primary, net::TxOutcome::Kind::Delivered));
        j.hops.push_back(hop(ChannelKind::Fallback, net::TxOutcome::Kind::Delivered));
    }
    const auto l = packet_loss_rates(j);
    EXPECT_EQ(l.primary, 0.0);
    EXPECT_EQ(l.fallback, 0.0);
}

TEST(Loss, CountsOnlyCompletedPayloadHops) {
    Journal j;
    j.end = 1_s;
    j.hops.push_back(hop(ChannelKind::Primary, net::TxOutcome::Kind::Delivered));
    j.hops.push_back(hop(ChannelKind::Primary, net::TxOutcome::Kind::Lost));
    j.hops.push_back(hop(ChannelKind::Primary, net::TxOutcome::Kind::LinkDown));
    j.hops.push_back(hop(ChannelKind::Primary, net::TxOutcome::Kind::Delivered, 2_s));  // in flight at end
    auto arp = hop(ChannelKind::Primary, net::TxOutcome::Kind::Lost);
    arp.payload = false;
    j.hops.push_back(arp);
    const auto l = packet_loss_rates(j);
    EXPECT_EQ(l.primary, 0.5);
    EXPECT_FALSE(l.fallback.has_value());
    const auto c = channel_counters(j).at(ChannelKind::Primary);
    EXPECT_EQ(c.sent, 3u);
    EXPECT_EQ(c.in_flight, 1u);
}

TEST(Adaptability, LastInstallPerTrigger) {
    Journal j;
    j.triggers.push_back({7, TriggerRecord::Kind::LinkDown, 10_ms, "10.0.0.1", {kPair}});
    j.installs.push_back(install(12_ms, 7));
    j.installs.push_back(install(14_ms, 7));
    j.installs.push_back(install(20_ms, 7, true));
    j.installs.push_back(install(30_ms, 8));
    EXPECT_EQ(routing_adaptability(j), 4000.0);
}

TEST(Adaptability, AbsentWithoutPathChanges) {
    Journal j;
    EXPECT_FALSE(routing_adaptability(j).has_value());
    EXPECT_FALSE(compute_report(j).routing_adaptability_us.has_value());
}

TEST(Csv, OrderedByHostCount) {
    std::vector<KpiReport> rs(3);
    rs[0].n_hosts = 50;
    rs[1].n_hosts = 15;
    rs[2].n_hosts = 30;
    rs[1].fallback_delay_us = 4799;
    rs[1].loss_primary = 0.015;
    std::ostringstream os;
    emit_csv(rs, os);
    EXPECT_EQ(os.str(), std::string(kCsvHeader) +
                            "\n15,4799.000,,,0.015000,,\n"
                            "30,,,,,,\n"
                            "50,,,,,,\n");
}

TEST(Csv, SingleAndEmpty) {
    std::ostringstream os;
    emit_csv(std::vector<KpiReport>(1), os);
    const auto text = os.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
    EXPECT_THROW(emit_csv(std::vector<KpiReport>{}, os), std::invalid_argument);
    EXPECT_THROW(emit_csv(std::vector<KpiReport>(1), std::filesystem::path("/nonexistent/dir/kpi.csv")), IoError);
}
