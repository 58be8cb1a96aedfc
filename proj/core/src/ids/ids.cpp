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

#include "tasdn/ids/ids.hpp"

#include <algorithm>

namespace tasdn::ids {

std::string_view to_string(FindingKind k) {
    switch (k) {
        case FindingKind::RateAnomaly: return "rate_anomaly";
        case FindingKind::ProtocolViolation: return "protocol_violation";
        case FindingKind::UnauthorizedAccess: return "unauthorized_access";
    }
    return "?";
}

double PenaltyTable::of(FindingKind k) const {
    switch (k) {
        case FindingKind::RateAnomaly: return rate_anomaly;
        case FindingKind::ProtocolViolation: return protocol_violation;
        case FindingKind::UnauthorizedAccess: return unauthorized_access;
    }
    return 0.0;
}

std::vector<AnomalyFinding> ProfileStore::observe(const PacketMeta& meta, SimTime t, const IdsConfig& config) {
    auto& window = windows_[meta.src_ip];
    const SimTime horizon = t - config.window;
    while (!window.empty() && window.front().at <= horizon) window.pop_front();
    window.push_back(Entry{t, meta.protocol, meta.dst_ip, meta.size});
    active_.insert(meta.src_ip);

    std::vector<AnomalyFinding> out;
    auto emit = [&](FindingKind kind) {
        out.push_back(AnomalyFinding{meta.src_ip, kind, t, config.penalties.of(kind)});
    };
    if (window.size() > static_cast<std::size_t>(config.rate_limit)) emit(FindingKind::RateAnomaly);
    if (!config.allowed_protocols.count(meta.protocol)) emit(FindingKind::ProtocolViolation);
    if (config.acl && !config.acl->count({meta.src_ip, meta.dst_ip})) emit(FindingKind::UnauthorizedAccess);
    if (!out.empty()) flagged_.insert(meta.src_ip);
    return out;
}

std::size_t ProfileStore::window_count(const Ip& ip) const {
    auto it = windows_.find(ip);
    return it == windows_.end() ? 0 : it->second.size();
}

std::vector<Ip> ProfileStore::clean_active() const {
    std::vector<Ip> out;
    std::set_difference(active_.begin(), active_.end(), flagged_.begin(), flagged_.end(), std::back_inserter(out));
    return out;
}

void ProfileStore::reset_tick() {
    active_.clear();
    flagged_.clear();
}

std::vector<TrustChange> apply_findings(TrustTable& trust, const std::vector<AnomalyFinding>& findings) {
    std::vector<TrustChange> out;
    out.reserve(findings.size());
    for (const auto& f : findings) out.push_back(trust.adjust(f.ip, -f.penalty));
    return out;
}

std::vector<TrustChange> tick_recovery(TrustTable& trust, const ProfileStore& store, SimTime dt,
                                       double recovery_rate) {
    std::vector<TrustChange> out;
    const double gain = recovery_rate * dt.seconds();
    for (const auto& ip : store.clean_active()) {
        auto change = trust.adjust(ip, gain);
        if (change.new_score != change.old_score) out.push_back(change);
    }
    return out;
}

TrustChange set_trust(TrustTable& trust, const Ip& ip, double score) { return trust.set(ip, score); }

Ids::Ids(IdsConfig config, double threshold, double initial_trust)
    : config_(std::move(config)), trust_(threshold, initial_trust) {}

TrustEvent Ids::record(const TrustChange& change, SimTime t, bool enqueue) {
    TrustEvent ev{change, t, change.crossed(trust_.threshold())};
    if (ev.crossing) crossings_.push_back(ev);
    if (enqueue) unpublished_.push_back(ev);
    return ev;
}

std::vector<AnomalyFinding> Ids::observe(const PacketMeta& meta, SimTime t) {
    auto found = store_.observe(meta, t, config_);
    for (const auto& change : apply_findings(trust_, found)) record(change, t);
    findings_.insert(findings_.end(), found.begin(), found.end());
    return found;
}

void Ids::override_trust(const Ip& ip, double score, SimTime t) { record(set_trust(trust_, ip, score), t); }

std::vector<TrustEvent> Ids::tick(SimTime t) {
    std::vector<TrustEvent> out;
    for (const auto& change : tick_recovery(trust_, store_, t - last_tick_, config_.recovery_rate)) {
        out.push_back(record(change, t));
    }
    store_.reset_tick();
    last_tick_ = t;
    return out;
}

std::vector<TrustEvent> Ids::take_unpublished(SimTime before) {
    std::vector<TrustEvent> out;
    while (!unpublished_.empty() && unpublished_.front().at < before) {
        out.push_back(std::move(unpublished_.front()));
        unpublished_.pop_front();
    }
    return out;
}

std::vector<TrustEvent> Ids::take_all_unpublished() {
    std::vector<TrustEvent> out(unpublished_.begin(), unpublished_.end());
    unpublished_.clear();
    return out;
}

}  // namespace tasdn::ids
