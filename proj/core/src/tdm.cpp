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

#include "mcenoc/tdm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mcenoc/netsim.hpp"

namespace mcenoc {

namespace {

TdmSlot make_slot(std::vector<std::uint32_t> mapping, std::uint64_t cycles) {
  TdmSlot slot;
  slot.perm = Permutation(std::move(mapping));
  slot.cycles = cycles;
  return slot;
}

}  // namespace

TdmSchedule all_to_all_schedule(std::uint32_t n, std::uint64_t slot_cycles) {
  if (n < 2) throw std::invalid_argument("all-to-all needs at least 2 nodes");
  TdmSchedule s;
  for (std::uint32_t r = 0; r < n; ++r) {
    std::vector<std::uint32_t> m(n);
    for (std::uint32_t q = 0; q < n; ++q) m[q] = (q + r) % n;
    s.slots.push_back(make_slot(std::move(m), slot_cycles));
  }
  return s;
}

std::vector<std::uint32_t> grid_shape(std::uint32_t n,
                                      std::uint32_t dimensions) {
  if (n < 2 || !std::has_single_bit(n)) {
    throw std::invalid_argument("grid size must be a power of two >= 2");
  }
  const auto bits = static_cast<std::uint32_t>(std::countr_zero(n));
  if (dimensions == 0 || dimensions > bits) {
    throw std::invalid_argument(std::to_string(n) + " nodes cannot form a " +
                                std::to_string(dimensions) +
                                "-dimensional grid with sides >= 2");
  }
  std::vector<std::uint32_t> shape(dimensions);
  for (std::uint32_t d = 0; d < dimensions; ++d) {
    const std::uint32_t side_bits =
        bits / dimensions + (d < bits % dimensions ? 1 : 0);
    shape[d] = 1u << side_bits;
  }
  return shape;
}

TdmSchedule mesh_emulation_schedule(const std::vector<std::uint32_t>& shape,
                                    std::uint64_t slot_cycles) {
  if (shape.empty()) throw std::invalid_argument("grid shape is empty");
  std::uint32_t n = 1;
  for (auto side : shape) {
    if (side < 2) throw std::invalid_argument("grid sides must be >= 2");
    n *= side;
  }
  TdmSchedule s;
  std::uint32_t stride = 1;
  for (auto side : shape) {
    for (const std::uint32_t step : {1u, side - 1}) {
      std::vector<std::uint32_t> m(n);
      for (std::uint32_t q = 0; q < n; ++q) {
        const std::uint32_t c = (q / stride) % side;
        const std::uint32_t moved = (c + step) % side;
        m[q] = q + (moved - c) * stride;
      }
      s.slots.push_back(make_slot(std::move(m), slot_cycles));
    }
    stride *= side;
  }
  return s;
}

TdmSchedule mesh_emulation_schedule(std::uint32_t n, std::uint32_t dimensions,
                                    std::uint64_t slot_cycles) {
  return mesh_emulation_schedule(grid_shape(n, dimensions), slot_cycles);
}

TdmSchedule broadcast_schedule(std::uint32_t n, std::uint32_t source,
                               std::uint64_t slot_cycles) {
  if (n < 2) throw std::invalid_argument("broadcast needs at least 2 nodes");
  if (source >= n) throw std::invalid_argument("broadcast source out of range");
  std::vector<std::uint32_t> informed{source};
  std::vector<std::uint32_t> pending;
  for (std::uint32_t q = 0; q < n; ++q) {
    if (q != source) pending.push_back(q);
  }
  TdmSchedule s;
  while (!pending.empty()) {
    std::vector<std::uint32_t> m(n);
    for (std::uint32_t q = 0; q < n; ++q) m[q] = q;
    const std::size_t pairs = std::min(informed.size(), pending.size());
    for (std::size_t i = 0; i < pairs; ++i) {
      m[informed[i]] = pending[i];
      m[pending[i]] = informed[i];
    }
    informed.insert(informed.end(), pending.begin(), pending.begin() + pairs);
    pending.erase(pending.begin(), pending.begin() + pairs);
    s.slots.push_back(make_slot(std::move(m), slot_cycles));
  }
  return s;
}

std::vector<std::uint32_t> broadcast_informed_sizes(const TdmSchedule& schedule,
                                                    std::uint32_t source) {
  if (schedule.slots.empty()) return {};
  const std::uint32_t n = schedule.slots.front().perm.size();
  std::vector<bool> informed(n, false);
  informed.at(source) = true;
  std::vector<std::uint32_t> sizes;
  for (const auto& slot : schedule.slots) {
    auto next = informed;
    for (std::uint32_t q = 0; q < n; ++q) {
      if (informed[q]) next[slot.perm[q]] = true;
    }
    informed = std::move(next);
    sizes.push_back(
        static_cast<std::uint32_t>(std::count(informed.begin(), informed.end(), true)));
  }
  return sizes;
}

std::vector<std::uint32_t> simulate_broadcast(const Topology& topology,
                                              const TdmSchedule& schedule,
                                              std::uint32_t source) {
  const std::uint32_t n = topology.nodes();
  std::vector<bool> informed(n, false);
  informed.at(source) = true;
  std::vector<std::uint32_t> sizes;
  for (const auto& slot : schedule.slots) {
    const RouteSet routes = route_permutation(topology, slot.perm);
    const RouteSetReport report = verify_routeset(topology, routes);
    auto next = informed;
    for (const auto& r : report.routes) {
      if (informed[r.source] && r.correct()) next[*r.destination] = true;
    }
    informed = std::move(next);
    sizes.push_back(
        static_cast<std::uint32_t>(std::count(informed.begin(), informed.end(), true)));
  }
  return sizes;
}

CycleTime tdm_cycle_time(const TimingModel& model) {
  if (!(model.efficiency > 0.0 && model.efficiency < 1.0)) {
    throw std::invalid_argument("efficiency must lie strictly between 0 and 1");
  }
  if (!(model.f_hz > 0.0)) {
    throw std::invalid_argument("clock frequency must be positive");
  }
  const StagePlan plan = plan_stages(model.nodes, model.switch_bits);
  CycleTime ct;
  ct.overhead_cycles = plan.total_header_bits + plan.stage_count();
  ct.slot_cycles =
      static_cast<double>(ct.overhead_cycles) / (1.0 - model.efficiency);
  ct.slot_seconds = ct.slot_cycles / model.f_hz;
  ct.cycle_seconds = ct.slot_seconds * model.nodes;
  return ct;
}

BandwidthReport bisection_bandwidth(double f_hz, std::uint32_t width,
                                    std::uint32_t ports) {
  if (!(f_hz >= 0.0)) {
    throw std::invalid_argument("clock frequency must be non-negative");
  }
  BandwidthReport r;
  r.bisection_bits_per_s = f_hz * width * ports;
  if (width != 0 && ports != 0) {
    r.per_node_per_bit =
        r.bisection_bits_per_s / (static_cast<double>(ports) * width);
  }
  return r;
}

std::string model_csv(const std::vector<TimingModel>& models) {
  std::string out = "N,B,efficiency,f_Hz,slot_us,cycle_us\n";
  char line[160];
  for (const auto& m : models) {
    const CycleTime ct = tdm_cycle_time(m);
    std::snprintf(line, sizeof line, "%u,%u,%.6g,%.6g,%.4f,%.4f\n", m.nodes,
                  1u << m.switch_bits, m.efficiency, m.f_hz,
                  ct.slot_seconds * 1e6, ct.cycle_seconds * 1e6);
    out += line;
  }
  return out;
}

std::string to_string(ScheduleIssue::Kind kind) {
  switch (kind) {
    case ScheduleIssue::Kind::size:
      return "size";
    case ScheduleIssue::Kind::cycles:
      return "cycles";
    case ScheduleIssue::Kind::routing:
      return "routing";
    case ScheduleIssue::Kind::priority:
      return "priority";
  }
  return "?";
}

ScheduleReport validate_schedule(const Topology& topology,
                                 const TdmSchedule& schedule) {
  ScheduleReport report;
  const std::uint32_t n = topology.nodes();
  const std::uint64_t overhead = topology.header_bits() + topology.stage_count();
  for (std::size_t i = 0; i < schedule.slots.size(); ++i) {
    const TdmSlot& slot = schedule.slots[i];
    ++report.slots_checked;
    const auto issue = [&](ScheduleIssue::Kind kind, std::string msg) {
      report.issues.push_back({i, kind, std::move(msg)});
    };
    if (slot.perm.size() != n) {
      issue(ScheduleIssue::Kind::size,
            "permutation has " + std::to_string(slot.perm.size()) +
                " entries, network has " + std::to_string(n));
      continue;
    }
    if (slot.cycles < overhead) {
      issue(ScheduleIssue::Kind::cycles,
            std::to_string(slot.cycles) + " cycles is below setup overhead " +
                std::to_string(overhead));
    }
    try {
      const RouteSet routes = route_permutation(topology, slot.perm);
      const RouteSetReport rr = verify_routeset(topology, routes);
      report.routes_verified += rr.routes.size();
      for (const auto& r : rr.routes) {
        if (!r.correct()) {
          issue(ScheduleIssue::Kind::routing,
                "route from " + std::to_string(r.source) + " to " +
                    std::to_string(r.expected) + " failed in simulation");
        }
      }
    } catch (const RoutingError& e) {
      issue(ScheduleIssue::Kind::routing, e.what());
    }

    if (!slot.route_priority.empty()) {
      if (slot.route_priority.size() != n ||
          (!slot.start_offsets.empty() && slot.start_offsets.size() != n)) {
        issue(ScheduleIssue::Kind::size,
              "route_priority/start_offsets need one entry per node");
        continue;
      }
      if (slot.start_offsets.empty()) continue;
      for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) {
          if (slot.route_priority[a] > slot.route_priority[b] &&
              slot.start_offsets[a] > slot.start_offsets[b]) {
            issue(ScheduleIssue::Kind::priority,
                  "route " + std::to_string(a) + " (priority " +
                      std::to_string(slot.route_priority[a]) +
                      ") starts after route " + std::to_string(b) +
                      " (priority " + std::to_string(slot.route_priority[b]) +
                      ")");
          }
        }
      }
    }
  }
  return report;
}

SlotUtilization measure_slot_utilization(const Topology& topology,
                                         const Permutation& perm,
                                         std::uint64_t slot_cycles) {
  const std::uint64_t overhead = topology.header_bits() + topology.stage_count();
  if (slot_cycles <= overhead) {
    throw std::invalid_argument("slot too short for any payload");
  }
  SlotUtilization u;
  u.slot_cycles = slot_cycles;
  u.payload_bits = slot_cycles - overhead;

  const RouteSet routes = route_permutation(topology, perm);
  std::vector<InitiatorModel> inits;
  for (const auto& r : routes.routes) {
    std::vector<bool> payload(u.payload_bits);
    for (std::size_t i = 0; i < payload.size(); ++i) {
      payload[i] = ((i * 7 + r.source) % 3) == 0;
    }
    inits.push_back(InitiatorModel::single_route(r.source, r.header, payload));
  }
  Network net(topology);
  RunOptions options;
  options.record_bit_events = false;
  options.max_cycles = 4 * slot_cycles + 64;
  const Trace trace = run(net, inits, {}, options);

  u.all_delivered = true;
  u.utilization = 1.0;
  for (const auto& r : routes.routes) {
    const TargetReport& t = trace.summary.targets[r.destination];
    std::uint64_t in_slot = 0;
    for (const auto& d : t.delivered) {
      if (d.source == static_cast<std::int64_t>(r.source) &&
          d.cycle < slot_cycles) {
        ++in_slot;
      }
    }
    if (in_slot != u.payload_bits) u.all_delivered = false;
    u.utilization = std::min(
        u.utilization, static_cast<double>(in_slot) / static_cast<double>(slot_cycles));
  }
  return u;
}

}  // namespace mcenoc
