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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "tasdn/metrics/journal.hpp"

namespace tasdn::metrics {

struct ChannelCounters {
    std::uint64_t sent = 0;
    std::uint64_t delivered = 0;
    std::uint64_t lost = 0;
    std::uint64_t in_flight = 0;
};

struct KpiReport {
    int n_hosts = 0;
    std::optional<double> fallback_delay_us;
    std::optional<double> flow_install_us;
    std::optional<double> trust_transition_us;
    std::optional<double> loss_primary;
    std::optional<double> loss_fallback;
    std::optional<double> routing_adaptability_us;
    std::map<ChannelKind, ChannelCounters> counters;
    // Triggers after which no fallback delivery was seen before the run ended.
    int fallback_unobserved = 0;
};

/// First delivery of an affected pair that used a fallback hop, minus the
/// trigger time. Throws NoFallbackObserved if there is none (or nothing was
/// affected).
SimTime fallback_delay(const Journal& journal, const TriggerRecord& trigger);

/// Mean over downward crossings of (first enforcement for that ip at or after
/// the crossing) - crossing time. nullopt when nothing was enforced.
std::optional<double> trust_transition_time(const Journal& journal);

/// Mean of completion - table miss over non-idempotent installs answering a
/// packet-in.
std::optional<double> flow_install_time(const Journal& journal);

struct LossRates {
    std::optional<double> primary;
    std::optional<double> fallback;
};

/// Per channel, lost / (lost + delivered) over completed payload hops.
LossRates packet_loss_rates(const Journal& journal);

/// Mean over path changes of (last rule install attributed to the trigger) -
/// trigger time. A path change is a failover, a trust quarantine or a
/// re-admission to primary.
std::optional<double> routing_adaptability(const Journal& journal);

std::map<ChannelKind, ChannelCounters> channel_counters(const Journal& journal);

KpiReport compute_report(const Journal& journal);

inline constexpr const char* kCsvHeader =
    "n_hosts,fallback_delay_us,flow_install_us,trust_transition_us,loss_primary,loss_fallback,"
    "routing_adaptability_us";

/// Rows ordered by n_hosts. Throws std::invalid_argument on an empty list.
void emit_csv(std::vector<KpiReport> reports, std::ostream& os);
/// Throws IoError if the file cannot be written.
void emit_csv(const std::vector<KpiReport>& reports, const std::filesystem::path& path);

void print_summary(const KpiReport& report, std::ostream& os);

}  // namespace tasdn::metrics
