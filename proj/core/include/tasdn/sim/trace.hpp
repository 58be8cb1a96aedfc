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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tasdn/sim/event.hpp"

namespace tasdn::sim {

struct TraceRecord {
    std::int64_t time_us = 0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::ScenarioDirective;
    std::string summary;
};

/// Processed-event log. Serialized as `time_us,seq,kind,summary` lines.
class Trace {
public:
    void append(TraceRecord rec) { records_.push_back(std::move(rec)); }
    const std::vector<TraceRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    void write(std::ostream& os) const;
    std::string to_text() const;
    /// FNV-1a 64 over the serialized text.
    std::uint64_t hash() const;

private:
    std::vector<TraceRecord> records_;
};

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace tasdn::sim
