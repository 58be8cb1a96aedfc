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

#include "tasdn/scenario/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "tasdn/sim/errors.hpp"

namespace tasdn::scenario {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& what) {
    throw ParseError(what, node.Mark().is_null() ? 0 : node.Mark().line + 1);
}

void check_keys(const YAML::Node& map, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!map.IsMap()) fail(map, where + ": expected a mapping");
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) fail(kv.first, where + ": unknown key '" + key + "'");
    }
}

template <class T>
T get(const YAML::Node& map, const char* key, const std::string& where) {
    const YAML::Node n = map[key];
    if (!n) fail(map, where + ": missing '" + key + "'");
    try {
        return n.as<T>();
    } catch (const YAML::BadConversion&) {
        fail(n, where + "." + key + ": wrong type");
    }
}

template <class T>
T get_or(const YAML::Node& map, const char* key, T fallback, const std::string& where) {
    if (!map[key]) return fallback;
    return get<T>(map, key, where);
}

SimTime get_us(const YAML::Node& map, const char* key, const std::string& where) {
    return SimTime{get<std::int64_t>(map, key, where)};
}

SimTime get_us_or(const YAML::Node& map, const char* key, SimTime fallback, const std::string& where) {
    if (!map[key]) return fallback;
    return get_us(map, key, where);
}

ChannelKind channel_of(const YAML::Node& map, const char* key, const std::string& where) {
    const auto s = get<std::string>(map, key, where);
    auto c = net::parse_channel(s);
    if (!c) fail(map[key], where + ": unknown channel '" + s + "'");
    return *c;
}

Protocol protocol_of(const YAML::Node& node, const std::string& where) {
    const auto s = node.as<std::string>();
    auto p = net::parse_protocol(s);
    if (!p) fail(node, where + ": unknown protocol '" + s + "'");
    return *p;
}

std::optional<ids::FindingKind> parse_finding(const std::string& s) {
    if (s == "rate_anomaly") return ids::FindingKind::RateAnomaly;
    if (s == "protocol_violation") return ids::FindingKind::ProtocolViolation;
    if (s == "unauthorized_access") return ids::FindingKind::UnauthorizedAccess;
    return std::nullopt;
}

/// Shortest decimal that parses back to exactly `v`.
std::string exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Shortest percentage p such that p / 100 == loss exactly, when one exists;
/// otherwise the nearest one.
std::string exact_pct(double loss) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, loss * 100.0);
        if (std::strtod(buf, nullptr) / 100.0 == loss) return buf;
    }
    return exact(loss * 100.0);
}

net::LinkSpec parse_link(const YAML::Node& n, ChannelKind c, const std::string& where) {
    check_keys(n, where, {"down_bps", "up_bps", "prop_delay_us", "loss_pct"});
    net::LinkSpec s = net::LinkSpec::defaults(c);
    s.down_bps = get_or<std::int64_t>(n, "down_bps", s.down_bps, where);
    s.up_bps = get_or<std::int64_t>(n, "up_bps", s.up_bps, where);
    s.prop_delay = get_us_or(n, "prop_delay_us", s.prop_delay, where);
    if (n["loss_pct"]) s.loss_p = get<double>(n, "loss_pct", where) / 100.0;
    return s;
}

std::optional<net::Ip> resolve_host(int n_hosts, const std::string& name) {
    auto index_of = [](const std::string& digits) -> int {
        if (digits.empty() || digits.size() > 6) return -1;
        for (char ch : digits) {
            if (ch < '0' || ch > '9') return -1;
        }
        return std::stoi(digits);
    };
    int k = -1;
    if (name.size() > 1 && name[0] == 'H') {
        k = index_of(name.substr(1));
    } else if (name.rfind("10.0.0.", 0) == 0) {
        k = index_of(name.substr(7));
    }
    if (k < 1 || k > n_hosts) return std::nullopt;
    return topology::host_ip(k);
}

std::optional<SimTime> opt_us(const YAML::Node& map, const char* key, const std::string& where) {
    if (!map[key]) return std::nullopt;
    return get_us(map, key, where);
}

}  // namespace

std::string_view to_string(Directive::Kind k) {
    switch (k) {
        case Directive::Kind::FailLink: return "fail_link";
        case Directive::Kind::RestoreLink: return "restore_link";
        case Directive::Kind::SetTrust: return "set_trust";
        case Directive::Kind::SetPenalty: return "set_penalty";
        case Directive::Kind::SetRecovery: return "set_recovery";
        case Directive::Kind::SetThreshold: return "set_threshold";
    }
    return "?";
}

std::vector<TrafficFlow> expanded_traffic(const ScenarioConfig& config) {
    std::vector<TrafficFlow> out = config.traffic;
    if (config.pairs) {
        const auto& p = *config.pairs;
        for (int k = 1; k + 1 <= config.topology.n_hosts; k += 2) {
            out.push_back(TrafficFlow{"H" + std::to_string(k), "H" + std::to_string(k + 1), p.start, p.stop,
                                      p.rate_pps, p.size_bytes, p.protocol});
        }
    }
    return out;
}

void validate(const ScenarioConfig& c) {
    auto invalid = [](const std::string& what) { throw ValidationError(what); };
    if (c.version != kFormatVersion) invalid("version: unsupported format version " + std::to_string(c.version));
    if (c.duration <= SimTime::zero()) invalid("duration_us: must be positive");
    if (c.topology.n_hosts < 2) {
        invalid("topology.n_hosts: at least 2 hosts required, got " + std::to_string(c.topology.n_hosts));
    }
    for (const auto& [channel, spec] : c.topology.link_overrides) {
        try {
            c.topology.link_spec(channel).validate();
        } catch (const InvalidSpec& e) {
            invalid("topology.links." + std::string(net::to_string(channel)) + ": " + e.what());
        }
    }
    if (c.control_latency < SimTime::zero() || c.detection_delay < SimTime::zero()) {
        invalid("controller: latencies must be non-negative");
    }
    if (c.control_msg_bytes == 0) invalid("controller.control_msg_bytes: must be positive");
    if (!(c.threshold >= 0 && c.threshold <= 100)) invalid("controller.threshold: must lie in [0, 100]");
    if (!(c.initial_trust >= 0 && c.initial_trust <= 100)) invalid("controller.initial_trust: must lie in [0, 100]");
    if (c.idle_timeout && *c.idle_timeout <= SimTime::zero()) invalid("controller.idle_timeout_us: must be positive");
    if (c.ids.tick <= SimTime::zero()) invalid("ids.tick_us: must be positive");
    if (c.ids.window <= SimTime::zero()) invalid("ids.window_us: must be positive");
    if (c.ids.rate_limit < 0) invalid("ids.rate_limit: must be non-negative");
    if (c.ids.recovery_rate < 0) invalid("ids.recovery_per_s: must be non-negative");
    for (auto k : {ids::FindingKind::RateAnomaly, ids::FindingKind::ProtocolViolation,
                   ids::FindingKind::UnauthorizedAccess}) {
        if (!(c.ids.penalties.of(k) > 0)) invalid("ids.penalties." + std::string(ids::to_string(k)) + ": must be > 0");
    }

    const int n = c.topology.n_hosts;
    auto in_run = [&](SimTime t) { return t >= SimTime::zero() && t <= c.duration; };
    for (std::size_t i = 0; i < c.traffic.size(); ++i) {
        const auto& f = c.traffic[i];
        const std::string where = "traffic[" + std::to_string(i) + "]";
        auto s = resolve_host(n, f.src);
        auto d = resolve_host(n, f.dst);
        if (!s) invalid(where + ": unknown host '" + f.src + "'");
        if (!d) invalid(where + ": unknown host '" + f.dst + "'");
        if (*s == *d) invalid(where + ": src and dst are the same host");
        if (!(f.rate_pps > 0)) invalid(where + ": rate_pps must be positive");
        if (f.size_bytes == 0) invalid(where + ": size_bytes must be positive");
        if (!in_run(f.start)) invalid(where + ": start outside [0, duration]");
        if (f.stop && *f.stop < f.start) invalid(where + ": stop before start");
    }
    if (c.pairs && (!(c.pairs->rate_pps > 0) || c.pairs->size_bytes == 0 || !in_run(c.pairs->start))) {
        invalid("traffic pattern pairs: invalid rate, size or start");
    }

    SimTime prev = SimTime::zero();
    for (std::size_t i = 0; i < c.directives.size(); ++i) {
        const auto& d = c.directives[i];
        const std::string where = "directives[" + std::to_string(i) + "] (" + std::string(to_string(d.kind)) + ")";
        if (!in_run(d.at)) invalid(where + ": time " + std::to_string(d.at.us()) + "us outside [0, duration]");
        if (d.at < prev) invalid(where + ": directives must be in time order");
        prev = d.at;
        switch (d.kind) {
            case Directive::Kind::FailLink:
            case Directive::Kind::RestoreLink:
                if (!resolve_host(n, d.target)) invalid(where + ": unknown host '" + d.target + "'");
                if (d.channel == ChannelKind::Core) invalid(where + ": only host links can be failed or restored");
                break;
            case Directive::Kind::SetTrust:
                if (!resolve_host(n, d.target)) invalid(where + ": unknown node '" + d.target + "'");
                if (!(d.value >= 0 && d.value <= 100)) invalid(where + ": score must lie in [0, 100]");
                break;
            case Directive::Kind::SetPenalty:
                if (!(d.value > 0)) invalid(where + ": penalty must be > 0");
                break;
            case Directive::Kind::SetRecovery:
                if (!(d.value >= 0)) invalid(where + ": recovery rate must be >= 0");
                break;
            case Directive::Kind::SetThreshold:
                if (!(d.value >= 0 && d.value <= 100)) invalid(where + ": threshold must lie in [0, 100]");
                break;
        }
    }
}

ScenarioConfig parse_scenario(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError("malformed scenario: " + e.msg, e.mark.line + 1);
    }
    if (!root || !root.IsMap()) throw ParseError("scenario must be a mapping", 1);
    check_keys(root, "scenario",
               {"version", "name", "seed", "duration_us", "topology", "controller", "ids", "traffic", "directives"});

    ScenarioConfig c;
    c.version = get_or<int>(root, "version", kFormatVersion, "scenario");
    c.name = get_or<std::string>(root, "name", c.name, "scenario");
    c.seed = get_or<std::uint64_t>(root, "seed", c.seed, "scenario");
    c.duration = get_us(root, "duration_us", "scenario");

    const YAML::Node topo = root["topology"];
    if (!topo) fail(root, "scenario: missing 'topology'");
    check_keys(topo, "topology", {"n_hosts", "links"});
    c.topology.n_hosts = get<int>(topo, "n_hosts", "topology");
    if (const YAML::Node links = topo["links"]) {
        check_keys(links, "topology.links", {"primary", "fallback", "core"});
        for (const auto& kv : links) {
            const auto name = kv.first.as<std::string>();
            const auto ch = *net::parse_channel(name);
            c.topology.link_overrides[ch] = parse_link(kv.second, ch, "topology.links." + name);
        }
    }

    if (const YAML::Node ctl = root["controller"]) {
        const std::string w = "controller";
        check_keys(ctl, w,
                   {"control_latency_us", "detection_delay_us", "control_msg_bytes", "threshold", "initial_trust",
                    "quarantine_mode", "idle_timeout_us"});
        c.control_latency = get_us_or(ctl, "control_latency_us", c.control_latency, w);
        c.detection_delay = get_us_or(ctl, "detection_delay_us", c.detection_delay, w);
        c.control_msg_bytes = get_or<std::uint32_t>(ctl, "control_msg_bytes", c.control_msg_bytes, w);
        c.threshold = get_or<double>(ctl, "threshold", c.threshold, w);
        c.initial_trust = get_or<double>(ctl, "initial_trust", c.initial_trust, w);
        if (ctl["quarantine_mode"]) {
            const auto m = get<std::string>(ctl, "quarantine_mode", w);
            if (m == "redirect") {
                c.quarantine_mode = controller::QuarantineMode::Redirect;
            } else if (m == "drop_all") {
                c.quarantine_mode = controller::QuarantineMode::DropAll;
            } else {
                fail(ctl["quarantine_mode"], w + ": quarantine_mode must be redirect or drop_all");
            }
        }
        c.idle_timeout = opt_us(ctl, "idle_timeout_us", w);
    }

    if (const YAML::Node ids = root["ids"]) {
        const std::string w = "ids";
        check_keys(ids, w,
                   {"mode", "tap", "tick_us", "window_us", "rate_limit", "recovery_per_s", "penalties",
                    "allowed_protocols", "acl"});
        if (ids["mode"]) {
            const auto m = get<std::string>(ids, "mode", w);
            if (m == "inline") {
                c.ids_mode = IdsMode::Inline;
            } else if (m == "async") {
                c.ids_mode = IdsMode::Async;
            } else {
                fail(ids["mode"], w + ": mode must be inline or async");
            }
        }
        if (ids["tap"]) {
            const auto m = get<std::string>(ids, "tap", w);
            if (m != "all" && m != "packet_in") fail(ids["tap"], w + ": tap must be all or packet_in");
            c.ids_tap_all = m == "all";
        }
        c.ids.tick = get_us_or(ids, "tick_us", c.ids.tick, w);
        c.ids.window = get_us_or(ids, "window_us", c.ids.window, w);
        c.ids.rate_limit = get_or<int>(ids, "rate_limit", c.ids.rate_limit, w);
        c.ids.recovery_rate = get_or<double>(ids, "recovery_per_s", c.ids.recovery_rate, w);
        if (const YAML::Node p = ids["penalties"]) {
            check_keys(p, "ids.penalties", {"rate_anomaly", "protocol_violation", "unauthorized_access"});
            auto& t = c.ids.penalties;
            t.rate_anomaly = get_or<double>(p, "rate_anomaly", t.rate_anomaly, "ids.penalties");
            t.protocol_violation = get_or<double>(p, "protocol_violation", t.protocol_violation, "ids.penalties");
            t.unauthorized_access = get_or<double>(p, "unauthorized_access", t.unauthorized_access, "ids.penalties");
        }
        if (const YAML::Node ap = ids["allowed_protocols"]) {
            if (!ap.IsSequence()) fail(ap, "ids.allowed_protocols: expected a list");
            c.ids.allowed_protocols.clear();
            for (const auto& e : ap) c.ids.allowed_protocols.insert(protocol_of(e, "ids.allowed_protocols"));
        }
        if (const YAML::Node acl = ids["acl"]) {
            if (acl.IsScalar() && acl.as<std::string>() == "any") {
                c.ids.acl.reset();
            } else if (acl.IsSequence()) {
                std::set<std::pair<net::Ip, net::Ip>> pairs;
                for (const auto& e : acl) {
                    const auto s = e.as<std::string>();
                    const auto arrow = s.find("->");
                    if (arrow == std::string::npos) fail(e, "ids.acl: entries look like 'H1->H2'");
                    auto a = resolve_host(c.topology.n_hosts, s.substr(0, arrow));
                    auto b = resolve_host(c.topology.n_hosts, s.substr(arrow + 2));
                    if (!a || !b) fail(e, "ids.acl: unknown host in '" + s + "'");
                    pairs.emplace(*a, *b);
                }
                c.ids.acl = std::move(pairs);
            } else {
                fail(acl, "ids.acl: expected 'any' or a list");
            }
        }
    }

    if (const YAML::Node traffic = root["traffic"]) {
        if (!traffic.IsSequence()) fail(traffic, "traffic: expected a list");
        for (std::size_t i = 0; i < traffic.size(); ++i) {
            const YAML::Node f = traffic[i];
            const std::string w = "traffic[" + std::to_string(i) + "]";
            if (f["pattern"]) {
                check_keys(f, w, {"pattern", "start_us", "stop_us", "rate_pps", "size_bytes", "protocol"});
                if (get<std::string>(f, "pattern", w) != "pairs") fail(f["pattern"], w + ": only 'pairs' is supported");
                if (c.pairs) fail(f, w + ": at most one pairs pattern");
                PairsPattern p;
                p.start = get_us_or(f, "start_us", p.start, w);
                p.stop = opt_us(f, "stop_us", w);
                p.rate_pps = get_or<double>(f, "rate_pps", p.rate_pps, w);
                p.size_bytes = get_or<std::uint32_t>(f, "size_bytes", p.size_bytes, w);
                if (f["protocol"]) p.protocol = protocol_of(f["protocol"], w);
                c.pairs = p;
                continue;
            }
            check_keys(f, w, {"src", "dst", "start_us", "stop_us", "rate_pps", "size_bytes", "protocol"});
            TrafficFlow flow;
            flow.src = get<std::string>(f, "src", w);
            flow.dst = get<std::string>(f, "dst", w);
            flow.start = get_us_or(f, "start_us", flow.start, w);
            flow.stop = opt_us(f, "stop_us", w);
            flow.rate_pps = get_or<double>(f, "rate_pps", flow.rate_pps, w);
            flow.size_bytes = get_or<std::uint32_t>(f, "size_bytes", flow.size_bytes, w);
            if (f["protocol"]) flow.protocol = protocol_of(f["protocol"], w);
            c.traffic.push_back(std::move(flow));
        }
    }

    if (const YAML::Node dirs = root["directives"]) {
        if (!dirs.IsSequence()) fail(dirs, "directives: expected a list");
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            const YAML::Node d = dirs[i];
            const std::string w = "directives[" + std::to_string(i) + "]";
            check_keys(d, w,
                       {"at_us", "fail_link", "restore_link", "set_trust", "set_penalty", "set_recovery",
                        "set_threshold"});
            Directive out;
            out.at = get_us(d, "at_us", w);
            int kinds = 0;
            for (const auto& kv : d) {
                const auto key = kv.first.as<std::string>();
                if (key == "at_us") continue;
                ++kinds;
                const YAML::Node body = kv.second;
                const std::string bw = w + "." + key;
                if (key == "fail_link" || key == "restore_link") {
                    check_keys(body, bw, {"host", "channel"});
                    out.kind = key == "fail_link" ? Directive::Kind::FailLink : Directive::Kind::RestoreLink;
                    out.target = get<std::string>(body, "host", bw);
                    out.channel = body["channel"] ? channel_of(body, "channel", bw) : ChannelKind::Primary;
                } else if (key == "set_trust") {
                    check_keys(body, bw, {"node", "score"});
                    out.kind = Directive::Kind::SetTrust;
                    out.target = get<std::string>(body, "node", bw);
                    out.value = get<double>(body, "score", bw);
                } else if (key == "set_penalty") {
                    check_keys(body, bw, {"finding", "points"});
                    out.kind = Directive::Kind::SetPenalty;
                    const auto f = get<std::string>(body, "finding", bw);
                    auto fk = parse_finding(f);
                    if (!fk) fail(body["finding"], bw + ": unknown finding '" + f + "'");
                    out.finding = *fk;
                    out.value = get<double>(body, "points", bw);
                } else if (key == "set_recovery") {
                    check_keys(body, bw, {"per_s"});
                    out.kind = Directive::Kind::SetRecovery;
                    out.value = get<double>(body, "per_s", bw);
                } else {
                    check_keys(body, bw, {"value"});
                    out.kind = Directive::Kind::SetThreshold;
                    out.value = get<double>(body, "value", bw);
                }
            }
            if (kinds != 1) fail(d, w + ": exactly one directive per entry");
            c.directives.push_back(std::move(out));
        }
    }

    c.topology.seed = c.seed;
    validate(c);
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read scenario " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize(const ScenarioConfig& c) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "version" << YAML::Value << c.version;
    out << YAML::Key << "name" << YAML::Value << c.name;
    out << YAML::Key << "seed" << YAML::Value << c.seed;
    out << YAML::Key << "duration_us" << YAML::Value << c.duration.us();

    out << YAML::Key << "topology" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "n_hosts" << YAML::Value << c.topology.n_hosts;
    if (!c.topology.link_overrides.empty()) {
        out << YAML::Key << "links" << YAML::Value << YAML::BeginMap;
        for (const auto& [ch, s] : c.topology.link_overrides) {
            out << YAML::Key << std::string(net::to_string(ch)) << YAML::Value << YAML::BeginMap;
            out << YAML::Key << "down_bps" << YAML::Value << s.down_bps;
            out << YAML::Key << "up_bps" << YAML::Value << s.up_bps;
            out << YAML::Key << "prop_delay_us" << YAML::Value << s.prop_delay.us();
            out << YAML::Key << "loss_pct" << YAML::Value << exact_pct(s.loss_p);
            out << YAML::EndMap;
        }
        out << YAML::EndMap;
    }
    out << YAML::EndMap;

    out << YAML::Key << "controller" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "control_latency_us" << YAML::Value << c.control_latency.us();
    out << YAML::Key << "detection_delay_us" << YAML::Value << c.detection_delay.us();
    out << YAML::Key << "control_msg_bytes" << YAML::Value << c.control_msg_bytes;
    out << YAML::Key << "threshold" << YAML::Value << exact(c.threshold);
    out << YAML::Key << "initial_trust" << YAML::Value << exact(c.initial_trust);
    out << YAML::Key << "quarantine_mode" << YAML::Value
        << (c.quarantine_mode == controller::QuarantineMode::Redirect ? "redirect" : "drop_all");
    if (c.idle_timeout) out << YAML::Key << "idle_timeout_us" << YAML::Value << c.idle_timeout->us();
    out << YAML::EndMap;

    out << YAML::Key << "ids" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "mode" << YAML::Value << (c.ids_mode == IdsMode::Inline ? "inline" : "async");
    out << YAML::Key << "tap" << YAML::Value << (c.ids_tap_all ? "all" : "packet_in");
    out << YAML::Key << "tick_us" << YAML::Value << c.ids.tick.us();
    out << YAML::Key << "window_us" << YAML::Value << c.ids.window.us();
    out << YAML::Key << "rate_limit" << YAML::Value << c.ids.rate_limit;
    out << YAML::Key << "recovery_per_s" << YAML::Value << exact(c.ids.recovery_rate);
    out << YAML::Key << "penalties" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "rate_anomaly" << YAML::Value << exact(c.ids.penalties.rate_anomaly);
    out << YAML::Key << "protocol_violation" << YAML::Value << exact(c.ids.penalties.protocol_violation);
    out << YAML::Key << "unauthorized_access" << YAML::Value << exact(c.ids.penalties.unauthorized_access);
    out << YAML::EndMap;
    out << YAML::Key << "allowed_protocols" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto p : c.ids.allowed_protocols) out << std::string(net::to_string(p));
    out << YAML::EndSeq;
    out << YAML::Key << "acl" << YAML::Value;
    if (!c.ids.acl) {
        out << "any";
    } else {
        out << YAML::BeginSeq;
        for (const auto& [a, b] : *c.ids.acl) out << a + "->" + b;
        out << YAML::EndSeq;
    }
    out << YAML::EndMap;

    if (!c.traffic.empty() || c.pairs) {
        out << YAML::Key << "traffic" << YAML::Value << YAML::BeginSeq;
        if (c.pairs) {
            const auto& p = *c.pairs;
            out << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "pattern" << YAML::Value << "pairs";
            out << YAML::Key << "start_us" << YAML::Value << p.start.us();
            if (p.stop) out << YAML::Key << "stop_us" << YAML::Value << p.stop->us();
            out << YAML::Key << "rate_pps" << YAML::Value << exact(p.rate_pps);
            out << YAML::Key << "size_bytes" << YAML::Value << p.size_bytes;
            out << YAML::Key << "protocol" << YAML::Value << std::string(net::to_string(p.protocol));
            out << YAML::EndMap;
        }
        for (const auto& f : c.traffic) {
            out << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "src" << YAML::Value << f.src;
            out << YAML::Key << "dst" << YAML::Value << f.dst;
            out << YAML::Key << "start_us" << YAML::Value << f.start.us();
            if (f.stop) out << YAML::Key << "stop_us" << YAML::Value << f.stop->us();
            out << YAML::Key << "rate_pps" << YAML::Value << exact(f.rate_pps);
            out << YAML::Key << "size_bytes" << YAML::Value << f.size_bytes;
            out << YAML::Key << "protocol" << YAML::Value << std::string(net::to_string(f.protocol));
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }

    if (!c.directives.empty()) {
        out << YAML::Key << "directives" << YAML::Value << YAML::BeginSeq;
        for (const auto& d : c.directives) {
            out << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "at_us" << YAML::Value << d.at.us();
            out << YAML::Key << std::string(to_string(d.kind)) << YAML::Value << YAML::BeginMap;
            switch (d.kind) {
                case Directive::Kind::FailLink:
                case Directive::Kind::RestoreLink:
                    out << YAML::Key << "host" << YAML::Value << d.target;
                    out << YAML::Key << "channel" << YAML::Value << std::string(net::to_string(d.channel));
                    break;
                case Directive::Kind::SetTrust:
                    out << YAML::Key << "node" << YAML::Value << d.target;
                    out << YAML::Key << "score" << YAML::Value << exact(d.value);
                    break;
                case Directive::Kind::SetPenalty:
                    out << YAML::Key << "finding" << YAML::Value << std::string(ids::to_string(d.finding));
                    out << YAML::Key << "points" << YAML::Value << exact(d.value);
                    break;
                case Directive::Kind::SetRecovery:
                    out << YAML::Key << "per_s" << YAML::Value << exact(d.value);
                    break;
                case Directive::Kind::SetThreshold:
                    out << YAML::Key << "value" << YAML::Value << exact(d.value);
                    break;
            }
            out << YAML::EndMap << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace tasdn::scenario
