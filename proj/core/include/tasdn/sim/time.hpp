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

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

namespace tasdn::sim {

/// Simulated time in integer microseconds. Also used for durations.
class SimTime {
public:
    constexpr SimTime() = default;
    constexpr explicit SimTime(std::int64_t us) : us_(us) {}

    static constexpr SimTime zero() { return SimTime{0}; }
    static constexpr SimTime max() { return SimTime{std::numeric_limits<std::int64_t>::max()}; }
    static constexpr SimTime from_ms(std::int64_t ms) { return SimTime{ms * 1000}; }
    static constexpr SimTime from_s(std::int64_t s) { return SimTime{s * 1000000}; }

    constexpr std::int64_t us() const { return us_; }
    constexpr double ms() const { return static_cast<double>(us_) / 1000.0; }
    constexpr double seconds() const { return static_cast<double>(us_) / 1e6; }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime& operator+=(SimTime o) { us_ += o.us_; return *this; }
    constexpr SimTime& operator-=(SimTime o) { us_ -= o.us_; return *this; }
    friend constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime{a.us_ + b.us_}; }
    friend constexpr SimTime operator-(SimTime a, SimTime b) { return SimTime{a.us_ - b.us_}; }

private:
    std::int64_t us_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, SimTime t) { return os << t.us() << "us"; }

namespace literals {
constexpr SimTime operator""_us(unsigned long long v) { return SimTime{static_cast<std::int64_t>(v)}; }
constexpr SimTime operator""_ms(unsigned long long v) { return SimTime{static_cast<std::int64_t>(v) * 1000}; }
constexpr SimTime operator""_s(unsigned long long v) { return SimTime{static_cast<std::int64_t>(v) * 1000000}; }
}  // namespace literals

}  // namespace tasdn::sim
