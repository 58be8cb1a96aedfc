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

#include "tasdn/metrics/kpi.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "tasdn/sim/errors.hpp"

namespace tasdn::metrics {

bool DeliveryRecord::used(ChannelKind c) const { return std::find(channels.begin(), channels.end(), c) != channels.end(); }

namespace {

std::optional<double> mean(const std::vector<double>& xs) {
    if (xs.empty()) return std::nullopt;
    double sum = 0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

}  // namespace

SimTime fallback_delay(const Journal& journal, const TriggerRecord& trigger) {
    if (trigger.affected.empty()) {
        throw NoFallbackObserved("trigger " + std::to_string(trigger.id) + " affected no active flows");
    }
    for (const auto& d : journal.deliveries) {
        if (d.at < trigger.at || !d.used(ChannelKind::Fallback)) continue;
        const auto pair = HostPair::of(d.src_ip, d.dst_ip);
        if (std::find(trigger.affected.begin(), trigger.affected.end(), pair) != trigger.affected.end()) {
            return d.at - trigger.at;
        }
    }
    throw NoFallbackObserved("no fallback delivery after trigger " + std::to_string(trigger.id) + " at " +
                             std::to_string(trigger.at.us()) + "us");
}

std::optional<double> trust_transition_time(const Journal& journal) {
    std::vector<double> samples;
    for (const auto& c : journal.crossings) {
        if (!c.downward) continue;
        const EnforcementRecord* first = nullptr;
        for (const auto& e : journal.enforcements) {
            if (e.ip == c.ip && e.at >= c.at && (first == nullptr || e.at < first->at)) first = &e;
        }
        if (first != nullptr) samples.push_back(static_cast<double>((first->at - c.at).us()));
    }
    return mean(samples);
}

std::optional<double> flow_install_time(const Journal& journal) {
    std::vector<double> samples;
    for (const auto& r : journal.installs) {
        if (r.from_packet_in && !r.idempotent) samples.push_back(static_cast<double>((r.completed_at - r.miss_at).us()));
    }
    return mean(samples);
}

std::map<ChannelKind, ChannelCounters> channel_counters(const Journal& journal) {
    std::map<ChannelKind, ChannelCounters> out;
    for (const auto& h : journal.hops) {
        // Frames refused by a down link never reached the channel.
        if (!h.payload || h.outcome == net::TxOutcome::Kind::LinkDown) continue;
        auto& c = out[h.channel];
        ++c.sent;
        if (h.outcome != net::TxOutcome::Kind::Delivered) {
            ++c.lost;
        } else if (h.arrival <= journal.end) {
            ++c.delivered;
        } else {
            ++c.in_flight;
        }
    }
    return out;
}

LossRates packet_loss_rates(const Journal& journal) {
    const auto counters = channel_counters(journal);
    auto rate = [&](ChannelKind k) -> std::optional<double> {
        auto it = counters.find(k);
        if (it == counters.end()) return std::nullopt;
        const auto done = it->second.lost + it->second.delivered;
        if (done == 0) return std::nullopt;
        return static_cast<double>(it->second.lost) / static_cast<double>(done);
    };
    return LossRates{rate(ChannelKind::Primary), rate(ChannelKind::Fallback)};
}

std::optional<double> routing_adaptability(const Journal& journal) {
    std::vector<double> samples;
    for (const auto& t : journal.triggers) {
        std::optional<SimTime> last;
        for (const auto& r : journal.installs) {
            if (r.trigger_id == t.id && !r.idempotent && (!last || r.completed_at > *last)) last = r.completed_at;
        }
        if (last) samples.push_back(static_cast<double>((*last - t.at).us()));
    }
    return mean(samples);
}

KpiReport compute_report(const Journal& journal) {
    KpiReport r;
    r.n_hosts = journal.n_hosts;
    std::vector<double> delays;
    for (const auto& t : journal.triggers) {
        if (t.kind == TriggerRecord::Kind::Readmission || t.affected.empty()) continue;
        try {
            delays.push_back(static_cast<double>(fallback_delay(journal, t).us()));
        } catch (const NoFallbackObserved&) {
            ++r.fallback_unobserved;
        }
    }
    r.fallback_delay_us = mean(delays);
    r.flow_install_us = flow_install_time(journal);
    r.trust_transition_us = trust_transition_time(journal);
    const auto loss = packet_loss_rates(journal);
    r.loss_primary = loss.primary;
    r.loss_fallback = loss.fallback;
    r.routing_adaptability_us = routing_adaptability(journal);
    r.counters = channel_counters(journal);
    return r;
}

void emit_csv(std::vector<KpiReport> reports, std::ostream& os) {
    if (reports.empty()) throw std::invalid_argument("emit_csv needs at least one report");
    std::stable_sort(reports.begin(), reports.end(),
                     [](const KpiReport& a, const KpiReport& b) { return a.n_hosts < b.n_hosts; });
    auto dur = [&](const std::optional<double>& v) {
        if (v) os << std::fixed << std::setprecision(3) << *v;
    };
    auto frac = [&](const std::optional<double>& v) {
        if (v) os << std::fixed << std::setprecision(6) << *v;
    };
    os << kCsvHeader << '\n';
    for (const auto& r : reports) {
        os << r.n_hosts << ',';
        dur(r.fallback_delay_us);
        os << ',';
        dur(r.flow_install_us);
        os << ',';
        dur(r.trust_transition_us);
        os << ',';
        frac(r.loss_primary);
        os << ',';
        frac(r.loss_fallback);
        os << ',';
        dur(r.routing_adaptability_us);
        os << '\n';
    }
}

void emit_csv(const std::vector<KpiReport>& reports, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    emit_csv(reports, out);
    if (!out) throw IoError("write failed: " + path.string());
}

void print_summary(const KpiReport& r, std::ostream& os) {
    auto ms = [&](const char* label, const std::optional<double>& us) {
        os << "  " << std::left << std::setw(24) << label;
        if (us) {
            os << std::fixed << std::setprecision(3) << *us / 1000.0 << " ms\n";
        } else {
            os << "-\n";
        }
    };
    auto pct = [&](const char* label, const std::optional<double>& f) {
        os << "  " << std::left << std::setw(24) << label;
        if (f) {
            os << std::fixed << std::setprecision(2) << *f * 100.0 << " %\n";
        } else {
            os << "-\n";
        }
    };
    os << "n_hosts " << r.n_hosts << '\n';
    ms("fallback delay", r.fallback_delay_us);
    ms("flow installation", r.flow_install_us);
    ms("trust transition", r.trust_transition_us);
    pct("loss (primary)", r.loss_primary);
    pct("loss (fallback)", r.loss_fallback);
    ms("routing adaptability", r.routing_adaptability_us);
    if (r.fallback_unobserved > 0) {
        os << "  WARNING: " << r.fallback_unobserved << " trigger(s) without an observed fallback delivery\n";
    }
}

}  // namespace tasdn::metrics
