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

#include "tasdn/net/switch.hpp"

#include <climits>
#include <stdexcept>
#include <string>

#include "tasdn/sim/errors.hpp"

namespace tasdn::net {

const FlowRule* SwitchState::lookup(const FlowMatch& match) const {
    auto it = flow_table.lower_bound({match, INT_MIN});
    const FlowRule* best = nullptr;
    for (; it != flow_table.end() && it->first.first == match; ++it) {
        best = &it->second;  // ascending priority; last one wins
    }
    return best;
}

bool SwitchState::install(const FlowRule& rule) {
    if (!has_port(rule.out_port)) {
        throw std::out_of_range(std::string(to_string(id)) + " has no port " + std::to_string(rule.out_port));
    }
    const auto key = std::make_pair(rule.match, rule.priority);
    auto it = flow_table.find(key);
    if (it != flow_table.end()) {
        if (it->second.same_action(rule)) return false;
        throw DuplicateRule(std::string(to_string(id)) + ": conflicting rule for " + rule.match.src_ip + "->" +
                            rule.match.dst_ip + " at priority " + std::to_string(rule.priority));
    }
    flow_table.emplace(key, rule);
    return true;
}

std::vector<FlowRule> SwitchState::remove_if(const std::function<bool(const FlowRule&)>& pred) {
    std::vector<FlowRule> removed;
    for (auto it = flow_table.begin(); it != flow_table.end();) {
        if (pred(it->second)) {
            removed.push_back(it->second);
            it = flow_table.erase(it);
        } else {
            ++it;
        }
    }
    return removed;
}

std::vector<PortId> SwitchState::edge_ports() const {
    std::vector<PortId> out;
    for (const auto& [id, b] : ports) {
        if (b.edge) out.push_back(id);
    }
    return out;
}

ForwardAction switch_forward(SwitchState& sw, const Packet& packet, PortId in_port, SimTime t) {
    if (!sw.has_port(in_port)) {
        throw std::out_of_range(std::string(to_string(sw.id)) + " has no port " + std::to_string(in_port));
    }
    sw.mac_ip_table[packet.src_ip] = in_port;

    const FlowMatch match{packet.src_ip, packet.dst_ip};
    auto it = sw.flow_table.lower_bound({match, INT_MIN});
    FlowRule* best = nullptr;
    for (; it != sw.flow_table.end() && it->first.first == match; ++it) best = &it->second;
    if (best != nullptr) {
        best->last_hit = t;
        return ForwardTo{best->out_port};
    }
    if (packet.protocol == Protocol::Arp) {
        FloodTo flood;
        for (const auto& [id, b] : sw.ports) {
            if (id != in_port) flood.ports.push_back(id);
        }
        return flood;
    }
    return EscalatePacketIn{};
}

}  // namespace tasdn::net
