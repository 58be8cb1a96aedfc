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

#include <array>
#include <functional>
#include <queue>
#include <vector>

#include "tasdn/sim/event.hpp"
#include "tasdn/sim/trace.hpp"

namespace tasdn::sim {

/// Single-threaded discrete-event engine. Events are dequeued in (at, seq)
/// order; seq is the insertion counter, so simultaneous events run FIFO.
class Engine {
public:
    using Handler = std::function<void(const Event&)>;

    SimTime now() const { return now_; }

    void on(EventKind kind, Handler handler);

    /// Throws PastTimeError if at < now().
    EventHandle schedule(SimTime at, EventKind kind, std::any payload = {}, std::string summary = {});

    /// Processes every event with at <= t_end. Throws UnhandledEventKind when an
    /// event has no handler; that event stays unprocessed and off the queue.
    std::size_t run_until(SimTime t_end);

    std::size_t pending() const { return queue_.size(); }
    std::uint64_t scheduled_count() const { return next_seq_; }
    std::uint64_t processed_count() const { return processed_; }

    const Trace& trace() const { return trace_; }
    void set_tracing(bool enabled) { tracing_ = enabled; }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.at != b.at) return a.at > b.at;
            return a.seq > b.seq;
        }
    };

    SimTime now_ = SimTime::zero();
    std::uint64_t next_seq_ = 0;
    std::uint64_t processed_ = 0;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::array<Handler, kEventKindCount> handlers_{};
    Trace trace_;
    bool tracing_ = true;
};

}  // namespace tasdn::sim
