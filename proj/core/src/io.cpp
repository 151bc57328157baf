/*
 * Copyright 2026 The mcenoc Authors
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

#include "mcenoc/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mcenoc/rng.hpp"

namespace mcenoc::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field \"") + key + "\" has the wrong type");
  }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return field<T>(j, key);
}

std::vector<bool> parse_bits(const std::string& text) {
  std::vector<bool> bits;
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(c == '1');
    } else if (c != '-') {
      throw ParseError("bit string \"" + text + "\" may only contain 0, 1, -");
    }
  }
  return bits;
}

Rate parse_rate(const json& j) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!(v > 0.0 && v <= 1.0)) throw ParseError("consume_rate must lie in (0, 1]");
    // Rates are kept as small fractions.
    const std::uint32_t den = 1000000;
    return {static_cast<std::uint32_t>(v * den + 0.5), den};
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) {
        return {static_cast<std::uint32_t>(std::stoul(s)), 1};
      }
      Rate r{static_cast<std::uint32_t>(std::stoul(s.substr(0, slash))),
             static_cast<std::uint32_t>(std::stoul(s.substr(slash + 1)))};
      if (r.den == 0) throw ParseError("consume_rate denominator is zero");
      return r;
    } catch (const std::logic_error&) {
      throw ParseError("consume_rate \"" + s + "\" is not a fraction");
    }
  }
  throw ParseError("consume_rate must be a number or \"num/den\"");
}

std::uint32_t node_field(const json& j, const char* key,
                         const Topology& topology) {
  const auto v = field<std::int64_t>(j, key);
  if (v < 0 || v >= topology.nodes()) {
    throw ParseError(std::string(key) + " " + std::to_string(v) +
                     " is outside [0, " + std::to_string(topology.nodes()) +
                     ")");
  }
  return static_cast<std::uint32_t>(v);
}

// Completes a partial source->destination assignment to a full permutation
// and returns the routed headers.
std::map<std::uint32_t, RouteHeader> route_partial(
    const Topology& topology,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  const std::uint32_t n = topology.nodes();
  std::vector<std::int64_t> mapping(n, -1);
  std::vector<bool> used(n, false);
  for (auto [s, d] : pairs) {
    mapping[s] = d;
    used[d] = true;
  }
  std::uint32_t next = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (mapping[s] >= 0) continue;
    while (used[next]) ++next;
    mapping[s] = next;
    used[next] = true;
  }
  std::vector<std::uint32_t> full(mapping.begin(), mapping.end());
  const RouteSet routes = route_permutation(topology, Permutation(full));
  std::map<std::uint32_t, RouteHeader> headers;
  for (const auto& r : routes.routes) headers[r.source] = r.header;
  return headers;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

NetworkSpec parse_network_spec(std::string_view text) {
  const json j = parse_json(text);
  NetworkSpec spec;
  spec.nodes = field<std::uint32_t>(j, "nodes");
  spec.switch_bits = field<std::uint32_t>(j, "switch_bits");
  return spec;
}

Topology parse_topology(std::string_view text) {
  const NetworkSpec spec = parse_network_spec(text);
  try {
    return build_topology(spec);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string topology_json(const Topology& topology) {
  ordered_json j;
  j["nodes"] = topology.nodes();
  j["switch_bits"] = topology.spec().switch_bits;
  auto& stages = j["stages"] = ordered_json::array();
  for (const auto& st : topology.plan().stages) {
    stages.push_back({{"port_bits", st.port_bits}, {"switches", st.switch_count}});
  }
  j["header_bits"] = topology.header_bits();
  auto& wiring = j["wiring"] = ordered_json::array();
  for (const auto& b : topology.wiring().boundaries) wiring.push_back(b);
  return j.dump(2) + "\n";
}

Permutation parse_permutation(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw ParseError("permutation must be a JSON array");
  std::vector<std::uint32_t> mapping;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) {
      throw ParseError("permutation entries must be non-negative integers");
    }
    mapping.push_back(v.get<std::uint32_t>());
  }
  try {
    return Permutation(std::move(mapping));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string permutation_json(const Permutation& perm) {
  return json(perm.mapping()).dump() + "\n";
}

RouteSet parse_routeset(std::string_view text, const Topology& topology) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("routeset must be a JSON object");
  RouteSet set;
  for (const auto& [key, value] : j.items()) {
    std::uint32_t src = 0;
    try {
      src = static_cast<std::uint32_t>(std::stoul(key));
    } catch (const std::logic_error&) {
      throw ParseError("routeset key \"" + key + "\" is not a node id");
    }
    if (src >= topology.nodes()) {
      throw ParseError("routeset source " + key + " out of range");
    }
    if (!value.is_string()) throw ParseError("routeset headers must be strings");
    RouteHeader h;
    try {
      h = RouteHeader::parse(value.get<std::string>(), topology.plan());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    set.routes.push_back({src, h, decode_destination(topology, src, h)});
  }
  std::sort(set.routes.begin(), set.routes.end(),
            [](const Route& a, const Route& b) { return a.source < b.source; });
  return set;
}

std::string routeset_json(const RouteSet& routes) {
  ordered_json j = ordered_json::object();
  for (const auto& r : routes.routes) {
    j[std::to_string(r.source)] = r.header.str();
  }
  return j.dump(2) + "\n";
}

Scenario parse_scenario(std::string_view text, const Topology& topology,
                        std::uint64_t seed) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("scenario must be a JSON object");
  Scenario sc;
  Rng rng(seed);

  struct Pending {
    std::size_t index;
    std::uint32_t dst;
    std::vector<bool> payload;
  };
  std::vector<Pending> pending;

  const auto parse_header = [&](const std::string& bits) {
    try {
      return RouteHeader::parse(bits, topology.plan());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  };

  for (const auto& ij : j.value("initiators", json::array())) {
    InitiatorModel m;
    m.node = node_field(ij, "node", topology);
    m.start_cycle = field_or<std::uint64_t>(ij, "start_cycle", 0);
    if (ij.contains("script")) {
      for (const auto& a : ij.at("script")) {
        if (a.contains("open")) {
          m.script.push_back(Action::open(parse_header(field<std::string>(a, "open"))));
        } else if (a.contains("send")) {
          m.script.push_back(Action::send(parse_bits(field<std::string>(a, "send"))));
        } else if (a.contains("idle")) {
          m.script.push_back(Action::idle(field<std::uint64_t>(a, "idle")));
        } else if (a.contains("close")) {
          m.script.push_back(Action::close());
        } else {
          throw ParseError("unknown script action " + a.dump());
        }
      }
      sc.initiators.push_back(std::move(m));
      continue;
    }
    std::vector<bool> payload;
    if (ij.contains("payload_bits")) {
      const auto& pb = ij.at("payload_bits");
      if (pb.is_string()) {
        payload = parse_bits(pb.get<std::string>());
      } else if (pb.is_number_unsigned()) {
        payload.resize(pb.get<std::uint64_t>());
        for (std::size_t i = 0; i < payload.size(); ++i) payload[i] = rng.bit();
      } else {
        throw ParseError("payload_bits must be a bit string or a count");
      }
    }
    if (ij.contains("header")) {
      const RouteHeader h = parse_header(field<std::string>(ij, "header"));
      sc.initiators.push_back(InitiatorModel::single_route(
          m.node, h, std::move(payload), m.start_cycle));
    } else {
      pending.push_back({sc.initiators.size(),
                         node_field(ij, "route_to", topology), std::move(payload)});
      sc.initiators.push_back(std::move(m));
    }
  }

  std::set<std::uint32_t> dsts;
  for (const auto& p : pending) dsts.insert(p.dst);
  const bool joint = dsts.size() == pending.size();
  std::map<std::uint32_t, RouteHeader> headers;
  try {
    if (joint && !pending.empty()) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
      for (const auto& p : pending) {
        pairs.emplace_back(sc.initiators[p.index].node, p.dst);
      }
      headers = route_partial(topology, pairs);
    }
    for (auto& p : pending) {
      InitiatorModel& m = sc.initiators[p.index];
      const RouteHeader h =
          joint ? headers.at(m.node)
                : route_partial(topology, {{m.node, p.dst}}).at(m.node);
      m = InitiatorModel::single_route(m.node, h, std::move(p.payload),
                                       m.start_cycle);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }

  for (const auto& tj : j.value("targets", json::array())) {
    TargetModel t;
    t.node = node_field(tj, "node", topology);
    t.fifo_capacity = field_or<std::uint64_t>(tj, "fifo_bits", UINT64_MAX);
    if (tj.contains("consume_rate")) t.consume_rate = parse_rate(tj.at("consume_rate"));
    t.cts_threshold = field_or<std::uint64_t>(tj, "cts_threshold", 0);
    if (tj.contains("assert_err_at")) {
      t.assert_err_at = field<std::uint64_t>(tj, "assert_err_at");
    }
    sc.targets.push_back(t);
  }
  if (j.contains("max_cycles")) sc.max_cycles = field<std::uint64_t>(j, "max_cycles");
  return sc;
}

TdmSchedule parse_schedule(std::string_view text) {
  const json j = parse_json(text);
  const json& slots = j.is_object() ? j.value("slots", json()) : j;
  if (!slots.is_array()) throw ParseError("schedule must be a list of slots");
  TdmSchedule s;
  for (const auto& sj : slots) {
    TdmSlot slot;
    try {
      slot.perm = Permutation(field<std::vector<std::uint32_t>>(sj, "perm"));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    slot.cycles = field<std::uint64_t>(sj, "cycles");
    if (sj.contains("priority")) slot.priority = field<std::uint32_t>(sj, "priority");
    slot.route_priority =
        field_or<std::vector<std::uint32_t>>(sj, "route_priority", {});
    slot.start_offsets =
        field_or<std::vector<std::uint64_t>>(sj, "start_offsets", {});
    s.slots.push_back(std::move(slot));
  }
  return s;
}

std::string schedule_json(const TdmSchedule& schedule) {
  ordered_json j = ordered_json::array();
  for (const auto& slot : schedule.slots) {
    ordered_json sj;
    sj["perm"] = slot.perm.mapping();
    sj["cycles"] = slot.cycles;
    if (slot.priority) sj["priority"] = *slot.priority;
    if (!slot.route_priority.empty()) sj["route_priority"] = slot.route_priority;
    if (!slot.start_offsets.empty()) sj["start_offsets"] = slot.start_offsets;
    j.push_back(std::move(sj));
  }
  return j.dump(2) + "\n";
}

CampaignConfig parse_campaign(std::string_view text) {
  const json j = parse_json(text);
  CampaignConfig c;
  const auto level = field_or<std::string>(j, "level", "core");
  if (level == "core") {
    c.level = Level::core;
  } else if (level == "network") {
    c.level = Level::network;
  } else {
    throw ParseError("level must be \"core\" or \"network\"");
  }
  c.nodes = field_or<std::uint32_t>(j, "n", c.nodes);
  c.switch_bits = field_or<std::uint32_t>(j, "switch_bits", c.switch_bits);
  c.seeds = field_or<std::vector<std::uint64_t>>(j, "seeds", c.seeds);
  c.cycles = field_or<std::uint64_t>(j, "cycles", c.cycles);
  const auto legality = field_or<std::string>(j, "legality", "legal");
  if (legality == "legal") {
    c.legality = Legality::legal;
  } else if (legality == "unconstrained") {
    c.legality = Legality::unconstrained;
  } else {
    throw ParseError("legality must be \"legal\" or \"unconstrained\"");
  }
  c.exhaustive = field_or<bool>(j, "exhaustive", false);
  c.network.pair_samples = field_or<std::uint64_t>(j, "samples", c.network.pair_samples);
  c.network.contention_rounds =
      field_or<std::uint64_t>(j, "rounds", c.network.contention_rounds);
  return c;
}

}  // namespace mcenoc::io
