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

#include "tasdn/sim/engine.hpp"

#include <string>
#include <utility>

#include "tasdn/sim/errors.hpp"

namespace tasdn::sim {

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::PacketArrival: return "PacketArrival";
        case EventKind::PacketInToController: return "PacketInToController";
        case EventKind::ControlAction: return "ControlAction";
        case EventKind::LinkStateChange: return "LinkStateChange";
        case EventKind::TrustOverride: return "TrustOverride";
        case EventKind::RecoveryTick: return "RecoveryTick";
        case EventKind::FlowExpiry: return "FlowExpiry";
        case EventKind::ScenarioDirective: return "ScenarioDirective";
    }
    return "Unknown";
}

void Engine::on(EventKind kind, Handler handler) {
    handlers_[static_cast<std::size_t>(kind)] = std::move(handler);
}

EventHandle Engine::schedule(SimTime at, EventKind kind, std::any payload, std::string summary) {
    if (at < now_) {
        throw PastTimeError("cannot schedule " + std::string(to_string(kind)) + " at " +
                            std::to_string(at.us()) + "us, now is " + std::to_string(now_.us()) + "us");
    }
    const auto seq = next_seq_++;
    queue_.push(Event{at, seq, kind, std::move(payload), std::move(summary)});
    return seq;
}

std::size_t Engine::run_until(SimTime t_end) {
    std::size_t count = 0;
    while (!queue_.empty() && queue_.top().at <= t_end) {
        // at/seq are untouched by the move, so the heap stays consistent for pop().
        Event ev = std::move(const_cast<Event&>(queue_.top()));
        queue_.pop();
        const auto& handler = handlers_[static_cast<std::size_t>(ev.kind)];
        if (!handler) {
            throw UnhandledEventKind("no handler registered for " + std::string(to_string(ev.kind)) +
                                     " (seq " + std::to_string(ev.seq) + ")");
        }
        now_ = ev.at;
        if (tracing_) {
            trace_.append(TraceRecord{ev.at.us(), ev.seq, ev.kind, ev.summary});
        }
        handler(ev);
        ++processed_;
        ++count;
    }
    if (t_end > now_) now_ = t_end;
    return count;
}

}  // namespace tasdn::sim
