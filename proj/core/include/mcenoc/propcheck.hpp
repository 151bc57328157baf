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
 * @file propcheck.hpp
 * @brief Executable protocol properties with randomized and exhaustive
 * campaigns.
 *
 * Properties are checked by simulation: bounded exhaustive enumeration for
 * small networks and seeded random stimulus otherwise. Nothing here is a
 * proof; reports say so in their `method` field.
 *
 * Monitors:
 *   C1   within a switch, ports in Accept hold pairwise distinct outputs
 *   C15  Accept and a rising err on the claimed output imply Abort with
 *        err_out on the next edge, then an all-zero claimed output one
 *        edge later
 *   N4   an error-free, conflict-free route ends at the endpoint decoded
 *        from its header, with its payload intact
 *   R1   every permutation of a small network routes and simulates
 *        correctly (exhaustive mode only)
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcenoc/netsim.hpp"
#include "mcenoc/switch.hpp"
#include "mcenoc/topology.hpp"

namespace mcenoc {

enum class Level : std::uint8_t { core, network, system };

std::string_view to_string(Level level);

struct PropertySpec {
  std::string id;
  Level level = Level::core;
  std::string description;
  std::string checked_by;
};

/// Every property this library knows about, including the statically
/// checked S4.
const std::vector<PropertySpec>& property_catalog();

enum class Legality : std::uint8_t { legal, unconstrained };

struct Stimulus {
  std::uint64_t seed = 1;
  std::uint64_t cycles = 0;
  Legality legality = Legality::legal;
};

struct Counterexample {
  std::uint64_t cycle = 0;
  std::string where;
  std::vector<std::string> window;
};

enum class Status : std::uint8_t { pass, fail, vacuous, uncovered };

std::string_view to_string(Status status);

struct PropertyResult {
  std::string id;
  Level level = Level::core;
  std::uint64_t hits = 0;  ///< precondition occurrences
  std::uint64_t passes = 0;
  std::uint64_t failures = 0;
  std::vector<Counterexample> counterexamples;  ///< first few only

  /// A property with no precondition hits is vacuous, never a pass.
  Status status() const;
};

struct CheckReport {
  std::string method;
  std::vector<PropertyResult> properties;

  const PropertyResult* find(std::string_view id) const;
  PropertyResult& get(std::string_view id, Level level);
  bool failed() const;
  /// Sums counts per property; associative and commutative up to
  /// counterexample order.
  void merge(const CheckReport& other);

  std::string to_json() const;
  std::string to_table() const;
};

/// Steps one switch under random stimulus and evaluates C1 and C15 on every
/// edge. Legal stimulus drives the header/data/close protocol, obeys cts
/// and drops clm a few cycles after err; unconstrained stimulus is uniform
/// noise.
CheckReport check_core(std::uint32_t switch_bits, const Stimulus& stimulus,
                       SwitchFault fault = SwitchFault::none);

struct NetworkCampaign {
  /// (source, header) pairs for N4; 0 enumerates all N * 2^P pairs.
  std::uint64_t pair_samples = 1000;
  /// Multi-route runs with random conflicts and target errors, used to
  /// re-check C1 and C15 on every embedded switch.
  std::uint64_t contention_rounds = 100;
};

struct RouteCheck {
  bool precondition = false;  ///< opened, no conflict, no err
  bool correct = false;
  std::optional<std::uint32_t> destination;
};

/// One N4 sample. With target_err the target rejects the route, so the
/// precondition does not hold.
RouteCheck check_route(Network& network, std::uint32_t source,
                       const RouteHeader& header, bool target_err = false);

CheckReport check_network(const Topology& topology, const Stimulus& stimulus,
                          const NetworkCampaign& campaign = {},
                          SwitchFault fault = SwitchFault::none);

/// Routes and simulates every permutation. Throws std::invalid_argument for
/// networks larger than 8 nodes.
CheckReport exhaustive_small(const Topology& topology);

struct CoverageRow {
  std::string id;
  Level level = Level::core;
  std::string checked_by;
  std::uint64_t hits = 0;
  std::string status;
};

struct CoverageSummary {
  std::vector<CoverageRow> rows;
  const CoverageRow* find(std::string_view id) const;
  std::string to_table() const;
};

CoverageSummary coverage_report(std::span<const CheckReport> reports);

struct CampaignConfig {
  Level level = Level::core;
  std::uint32_t nodes = 8;
  std::uint32_t switch_bits = 1;
  std::vector<std::uint64_t> seeds{1};
  std::uint64_t cycles = 100000;
  Legality legality = Legality::legal;
  bool exhaustive = false;
  NetworkCampaign network{};
};

/// Runs one check per seed (in parallel) and merges the reports. Network
/// campaigns with `exhaustive` also run exhaustive_small.
CheckReport run_campaign(const CampaignConfig& config,
                         SwitchFault fault = SwitchFault::none);

}  // namespace mcenoc
