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

/**
 * @file tdm.hpp
 * @brief TDM permutation schedules and the analytic timing/bandwidth models.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcenoc/routing.hpp"
#include "mcenoc/topology.hpp"

namespace mcenoc {

/// One permutation phase. route_priority and start_offsets, when present,
/// hold one entry per source: the route's criticality rank (higher is more
/// critical) and the cycle within the slot at which its setup starts.
struct TdmSlot {
  Permutation perm;
  std::uint64_t cycles = 0;
  std::optional<std::uint32_t> priority;
  std::vector<std::uint32_t> route_priority;
  std::vector<std::uint64_t> start_offsets;
};

struct TdmSchedule {
  std::vector<TdmSlot> slots;
};

/// Slot r routes src to (src + r) mod n.
TdmSchedule all_to_all_schedule(std::uint32_t n, std::uint64_t slot_cycles = 0);

/// Splits log2(n) bits over `dimensions` sides, earlier dimensions first.
/// Throws std::invalid_argument if n is not a power of two or a side would
/// drop below 2.
std::vector<std::uint32_t> grid_shape(std::uint32_t n, std::uint32_t dimensions);

/// Two cyclic neighbour shifts (+1, -1) per dimension; dimension 0 varies
/// fastest in the node index.
TdmSchedule mesh_emulation_schedule(const std::vector<std::uint32_t>& shape,
                                    std::uint64_t slot_cycles = 0);
TdmSchedule mesh_emulation_schedule(std::uint32_t n, std::uint32_t dimensions,
                                    std::uint64_t slot_cycles = 0);

/// Doubling tree: each slot swaps the i-th informed node with the i-th
/// uninformed one; ceil(log2 n) slots.
TdmSchedule broadcast_schedule(std::uint32_t n, std::uint32_t source,
                               std::uint64_t slot_cycles = 0);

/// Informed-set size after each slot, following the schedule's pairs.
std::vector<std::uint32_t> broadcast_informed_sizes(const TdmSchedule& schedule,
                                                    std::uint32_t source);

/// Same as broadcast_informed_sizes but a node only becomes informed when a
/// simulated route from an informed node delivered its payload intact.
std::vector<std::uint32_t> simulate_broadcast(const Topology& topology,
                                              const TdmSchedule& schedule,
                                              std::uint32_t source);

struct TimingModel {
  double f_hz = 364e6;
  double efficiency = 0.99;
  std::uint32_t nodes = 0;
  std::uint32_t switch_bits = 1;
};

struct CycleTime {
  std::uint64_t overhead_cycles = 0;  ///< P + S
  double slot_cycles = 0;
  double slot_seconds = 0;
  double cycle_seconds = 0;
};

/// Throws std::invalid_argument unless 0 < efficiency < 1 and f > 0.
CycleTime tdm_cycle_time(const TimingModel& model);

struct BandwidthReport {
  double bisection_bits_per_s = 0;
  double per_node_per_bit = 0;
};

BandwidthReport bisection_bandwidth(double f_hz, std::uint32_t width,
                                    std::uint32_t ports);

/// CSV with header N,B,efficiency,f_Hz,slot_us,cycle_us.
std::string model_csv(const std::vector<TimingModel>& models);

struct ScheduleIssue {
  enum class Kind { size, cycles, routing, priority };
  std::size_t slot = 0;
  Kind kind = Kind::size;
  std::string message;
};

std::string to_string(ScheduleIssue::Kind kind);

struct ScheduleReport {
  std::vector<ScheduleIssue> issues;
  std::size_t slots_checked = 0;
  std::size_t routes_verified = 0;
  bool ok() const { return issues.empty(); }
};

/// Routes and simulates every slot, checks the P + S lower bound on slot
/// length, and flags any route that starts later than a lower-priority one.
ScheduleReport validate_schedule(const Topology& topology,
                                 const TdmSchedule& schedule);

struct SlotUtilization {
  std::uint64_t slot_cycles = 0;
  std::uint64_t payload_bits = 0;
  /// Minimum over nodes of payload bits delivered inside the slot divided by
  /// slot_cycles.
  double utilization = 0;
  bool all_delivered = false;
};

/// Opens every route of the permutation at cycle 0 and streams as much
/// payload as fits in the slot.
SlotUtilization measure_slot_utilization(const Topology& topology,
                                         const Permutation& perm,
                                         std::uint64_t slot_cycles);

}  // namespace mcenoc
