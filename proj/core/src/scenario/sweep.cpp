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

#include "tasdn/scenario/sweep.hpp"

#include <sstream>

#include "tasdn/scenario/simulation.hpp"
#include "tasdn/sim/errors.hpp"

namespace tasdn::scenario {

SweepResult sweep(const ScenarioConfig& config_template, const std::vector<int>& sizes) {
    if (sizes.empty()) throw ValidationError("sweep: no sizes given");
    SweepResult out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        ScenarioConfig c = config_template;
        c.topology.n_hosts = sizes[i];
        c.seed = config_template.seed + i;
        c.topology.seed = c.seed;
        out.reports.push_back(run(c).report);
    }
    std::ostringstream csv;
    metrics::emit_csv(out.reports, csv);
    out.csv = csv.str();
    return out;
}

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw ValidationError("sizes: '" + item + "' is not an integer");
        out.push_back(v);
    }
    if (out.empty()) throw ValidationError("sizes: empty list");
    return out;
}

}  // namespace tasdn::scenario
