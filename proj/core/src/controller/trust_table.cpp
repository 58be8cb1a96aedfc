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

#include "tasdn/controller/trust_table.hpp"

#include <algorithm>
#include <string>

#include "tasdn/sim/errors.hpp"

namespace tasdn::controller {

namespace {

void check_score(double score, const char* what) {
    if (!(score >= kMinTrust && score <= kMaxTrust)) {
        throw DomainError(std::string(what) + " must lie in [0, 100], got " + std::to_string(score));
    }
}

}  // namespace

TrustTable::TrustTable(double threshold, double initial) : threshold_(threshold), initial_(initial) {
    check_score(threshold, "trust threshold");
    check_score(initial, "initial trust");
}

double TrustTable::score(const Ip& ip) { return scores_.try_emplace(ip, initial_).first->second; }

double TrustTable::peek(const Ip& ip) const {
    auto it = scores_.find(ip);
    return it == scores_.end() ? initial_ : it->second;
}

TrustChange TrustTable::set(const Ip& ip, double score) {
    check_score(score, "trust score");
    double& slot = scores_.try_emplace(ip, initial_).first->second;
    TrustChange change{ip, slot, score};
    slot = score;
    return change;
}

TrustChange TrustTable::adjust(const Ip& ip, double delta) {
    double& slot = scores_.try_emplace(ip, initial_).first->second;
    TrustChange change{ip, slot, std::clamp(slot + delta, kMinTrust, kMaxTrust)};
    slot = change.new_score;
    return change;
}

void TrustTable::set_threshold(double threshold) {
    check_score(threshold, "trust threshold");
    threshold_ = threshold;
}

}  // namespace tasdn::controller
