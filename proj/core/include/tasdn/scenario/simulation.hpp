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
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "tasdn/controller/controller.hpp"
#include "tasdn/ids/ids.hpp"
#include "tasdn/metrics/journal.hpp"
#include "tasdn/metrics/kpi.hpp"
#include "tasdn/scenario/config.hpp"
#include "tasdn/sim/engine.hpp"
#include "tasdn/topology/topology.hpp"

namespace tasdn::scenario {

struct RunResult {
    sim::Trace trace;
    metrics::Journal journal;
    metrics::KpiReport report;
    std::vector<controller::DecisionRecord> decisions;
    std::uint64_t events_processed = 0;
};

/// One scenario instance: topology, controller and IDS driven by a single
/// event engine. Construct, then run() once.
class Simulation {
public:
    /// Validates the config first (ValidationError). Handler failures during
    /// run() surface as ScenarioError naming the event being processed.
    explicit Simulation(ScenarioConfig config);
    ~Simulation();

    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    void set_tracing(bool enabled);

    /// Runs to the configured duration and computes the KPI report.
    RunResult run();

    const ScenarioConfig& config() const;
    const topology::Network& network() const;
    const controller::Controller& controller() const;
    const ids::Ids& ids() const;
    const metrics::Journal& journal() const;

    /// One control message from the controller to `sw` (flow-mod, packet-out)
    /// and from `sw` to the controller (packet-in): propagation plus
    /// serialization over the core links, no queueing.
    SimTime transit_from_controller(net::SwitchId sw) const;
    SimTime transit_to_controller(net::SwitchId sw) const;

private:
    struct State;
    std::unique_ptr<State> s_;
};

/// Convenience wrapper: Simulation(config).run().
RunResult run(const ScenarioConfig& config);

}  // namespace tasdn::scenario
