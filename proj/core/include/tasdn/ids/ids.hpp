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

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tasdn/controller/trust_table.hpp"
#include "tasdn/net/types.hpp"

namespace tasdn::ids {

using controller::TrustChange;
using controller::TrustTable;
using net::Ip;
using net::Protocol;
using net::SimTime;

enum class FindingKind : std::uint8_t { RateAnomaly, ProtocolViolation, UnauthorizedAccess };

std::string_view to_string(FindingKind k);

struct PenaltyTable {
    double rate_anomaly = 15.0;
    double protocol_violation = 25.0;
    double unauthorized_access = 40.0;

    double of(FindingKind k) const;
    bool operator==(const PenaltyTable&) const = default;
};

struct AnomalyFinding {
    Ip ip;
    FindingKind kind = FindingKind::RateAnomaly;
    SimTime at;
    double penalty = 0.0;
};

struct IdsConfig {
    SimTime window{1'000'000};
    int rate_limit = 200;
    std::set<Protocol> allowed_protocols{Protocol::Arp, Protocol::Icmp, Protocol::Ipv4Data};
    // nullopt means any src -> dst is permitted.
    std::optional<std::set<std::pair<Ip, Ip>>> acl;
    PenaltyTable penalties;
    // Points regained per second of clean, active traffic.
    double recovery_rate = 1.0;
    SimTime tick{1'000'000};

    bool operator==(const IdsConfig&) const = default;
};

struct PacketMeta {
    Ip src_ip;
    Ip dst_ip;
    Protocol protocol = Protocol::Icmp;
    std::uint32_t size = 0;
};

/// Per-source sliding windows plus per-tick activity bookkeeping.
class ProfileStore {
public:
    /// Evicts entries at or before t - window, records the packet and returns
    /// every finding it triggers (several may co-occur).
    std::vector<AnomalyFinding> observe(const PacketMeta& meta, SimTime t, const IdsConfig& config);

    /// Packets from ip inside (t - window, t] as of the last observation.
    std::size_t window_count(const Ip& ip) const;

    /// Sources with >= 1 packet and no finding since the last reset.
    std::vector<Ip> clean_active() const;
    void reset_tick();

private:
    struct Entry {
        SimTime at;
        Protocol protocol;
        Ip dst_ip;
        std::uint32_t size;
    };

    std::map<Ip, std::deque<Entry>> windows_;
    std::set<Ip> active_;
    std::set<Ip> flagged_;
};

/// score <- clamp(score - penalty). Returns one change per finding, in order.
std::vector<TrustChange> apply_findings(TrustTable& trust, const std::vector<AnomalyFinding>& findings);

/// Clean active sources gain recovery_rate * dt (seconds), capped at 100.
std::vector<TrustChange> tick_recovery(TrustTable& trust, const ProfileStore& store, SimTime dt,
                                       double recovery_rate);

/// External override. Throws DomainError outside [0, 100].
TrustChange set_trust(TrustTable& trust, const Ip& ip, double score);

struct TrustEvent {
    TrustChange change;
    SimTime at;
    bool crossing = false;
};

/// IDS component: owns its trust table and profile store, and queues every
/// score change for publication to the controller.
class Ids {
public:
    Ids(IdsConfig config, double threshold, double initial_trust);

    IdsConfig& config() { return config_; }
    const IdsConfig& config() const { return config_; }
    TrustTable& trust() { return trust_; }
    const TrustTable& trust() const { return trust_; }
    ProfileStore& store() { return store_; }

    std::vector<AnomalyFinding> observe(const PacketMeta& meta, SimTime t);
    void override_trust(const Ip& ip, double score, SimTime t);
    /// Recovery for the tick ending at t; resets per-tick activity. The
    /// returned changes are also queued like any other.
    std::vector<TrustEvent> tick(SimTime t);

    /// Changes recorded strictly before `before`, removed from the queue.
    std::vector<TrustEvent> take_unpublished(SimTime before);
    /// Every change still queued.
    std::vector<TrustEvent> take_all_unpublished();

    /// Every threshold crossing, in order. Exactly one per crossing.
    const std::vector<TrustEvent>& crossings() const { return crossings_; }
    const std::vector<AnomalyFinding>& findings() const { return findings_; }

private:
    TrustEvent record(const TrustChange& change, SimTime t, bool enqueue = true);

    IdsConfig config_;
    TrustTable trust_;
    ProfileStore store_;
    SimTime last_tick_ = SimTime::zero();
    std::deque<TrustEvent> unpublished_;
    std::vector<TrustEvent> crossings_;
    std::vector<AnomalyFinding> findings_;
};

}  // namespace tasdn::ids
