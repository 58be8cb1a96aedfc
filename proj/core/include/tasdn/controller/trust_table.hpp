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

#include <map>
#include <optional>

#include "tasdn/net/types.hpp"

namespace tasdn::controller {

using net::Ip;

inline constexpr double kInitialTrust = 100.0;
inline constexpr double kDefaultThreshold = 50.0;
inline constexpr double kMinTrust = 0.0;
inline constexpr double kMaxTrust = 100.0;

struct TrustChange {
    Ip ip;
    double old_score = kInitialTrust;
    double new_score = kInitialTrust;

    bool crossed_down(double threshold) const { return old_score >= threshold && new_score < threshold; }
    bool crossed_up(double threshold) const { return old_score < threshold && new_score >= threshold; }
    bool crossed(double threshold) const { return crossed_down(threshold) || crossed_up(threshold); }
};

/// Per-node trust in [0, 100]. Unknown ips read as the initial score and get
/// an entry on first lookup.
class TrustTable {
public:
    explicit TrustTable(double threshold = kDefaultThreshold, double initial = kInitialTrust);

    double score(const Ip& ip);
    /// Read without creating an entry.
    double peek(const Ip& ip) const;
    bool contains(const Ip& ip) const { return scores_.count(ip) != 0; }

    /// Overwrites a score. Throws DomainError outside [0, 100].
    TrustChange set(const Ip& ip, double score);
    /// Adds delta and clamps to [0, 100].
    TrustChange adjust(const Ip& ip, double delta);

    double threshold() const { return threshold_; }
    void set_threshold(double threshold);
    double initial() const { return initial_; }
    bool trusted(const Ip& ip) { return score(ip) >= threshold_; }

    const std::map<Ip, double>& scores() const { return scores_; }

private:
    double threshold_;
    double initial_;
    std::map<Ip, double> scores_;
};

}  // namespace tasdn::controller
