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

#include <string>
#include <vector>

#include "tasdn/metrics/kpi.hpp"
#include "tasdn/scenario/config.hpp"

namespace tasdn::scenario {

struct SweepResult {
    std::vector<metrics::KpiReport> reports;
    std::string csv;
};

/// Runs the template once per host count. Run i uses seed + i. Throws
/// ValidationError for an empty list or a size the topology rejects.
SweepResult sweep(const ScenarioConfig& config_template, const std::vector<int>& sizes);

/// "15,30,50" -> {15, 30, 50}. Throws ValidationError on malformed input.
std::vector<int> parse_sizes(const std::string& text);

}  // namespace tasdn::scenario
