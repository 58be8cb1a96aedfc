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
#include <random>
#include <string>
#include <string_view>

namespace tasdn::sim {

/// Per-entity random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard, and draws are built from raw bits
/// rather than <random> distributions, so results match across platforms.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view stream_id);

    std::uint64_t seed() const { return seed_; }
    const std::string& stream_id() const { return stream_id_; }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform();

    /// True with probability p. Throws DomainError unless 0 <= p <= 1.
    bool bernoulli(double p);

private:
    std::uint64_t seed_;
    std::string stream_id_;
    std::mt19937_64 gen_;
};

/// Mixes the run seed with a stream label (splitmix64 over FNV-1a of the label).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view stream_id);

}  // namespace tasdn::sim
