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

#include "tasdn/sim/trace.hpp"

#include <ostream>
#include <sstream>

namespace tasdn::sim {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
    std::uint64_t h = basis;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void Trace::write(std::ostream& os) const {
    for (const auto& r : records_) {
        os << r.time_us << ',' << r.seq << ',' << to_string(r.kind) << ',' << r.summary << '\n';
    }
}

std::string Trace::to_text() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

std::uint64_t Trace::hash() const { return fnv1a64(to_text()); }

}  // namespace tasdn::sim
