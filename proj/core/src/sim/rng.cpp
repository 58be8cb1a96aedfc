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

#include "tasdn/sim/rng.hpp"

#include <string>

#include "tasdn/sim/errors.hpp"
#include "tasdn/sim/trace.hpp"

namespace tasdn::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view stream_id) {
    return splitmix64(seed ^ splitmix64(fnv1a64(stream_id)));
}

RngStream::RngStream(std::uint64_t seed, std::string_view stream_id)
    : seed_(seed), stream_id_(stream_id), gen_(derive_stream_seed(seed, stream_id)) {}

double RngStream::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("bernoulli probability out of [0,1]: " + std::to_string(p));
    }
    // Always consume one draw so a stream's position never depends on p.
    const double u = uniform();
    return u < p;
}

}  // namespace tasdn::sim
