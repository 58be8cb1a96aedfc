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

#include <any>
#include <cstdint>
#include <string>
#include <string_view>

#include "tasdn/sim/time.hpp"

namespace tasdn::sim {

enum class EventKind : std::uint8_t {
    PacketArrival,
    PacketInToController,
    ControlAction,
    LinkStateChange,
    TrustOverride,
    RecoveryTick,
    FlowExpiry,
    ScenarioDirective,
};

inline constexpr std::size_t kEventKindCount = 8;

std::string_view to_string(EventKind kind);

struct Event {
    SimTime at;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::ScenarioDirective;
    std::any payload;
    // One-line description written to the trace dump.
    std::string summary;
};

using EventHandle = std::uint64_t;

}  // namespace tasdn::sim
