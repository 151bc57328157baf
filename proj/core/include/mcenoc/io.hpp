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
 * @file io.hpp
 * @brief JSON file formats shared by the command-line tool and tests.
 *
 *   topology    {"nodes": N, "switch_bits": p}; output adds stages,
 *               header_bits and wiring
 *   permutation [d0, d1, ...]
 *   routeset    {"<source>": "<header bits>", ...}
 *   scenario    {"initiators": [...], "targets": [...], "max_cycles": c}
 *   schedule    [{"perm": [...], "cycles": c, "priority": k,
 *                 "route_priority": [...], "start_offsets": [...]}, ...]
 *   campaign    {"level": "core|network", "n": N, "switch_bits": p,
 *                "seeds": [...], "cycles": c}
 */
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mcenoc/netsim.hpp"
#include "mcenoc/propcheck.hpp"
#include "mcenoc/routing.hpp"
#include "mcenoc/tdm.hpp"
#include "mcenoc/topology.hpp"

namespace mcenoc::io {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Whole file as a string; throws ParseError if it cannot be read.
std::string read_file(const std::string& path);

NetworkSpec parse_network_spec(std::string_view text);
/// Builds the topology described by the file.
Topology parse_topology(std::string_view text);
std::string topology_json(const Topology& topology);

Permutation parse_permutation(std::string_view text);
std::string permutation_json(const Permutation& perm);

RouteSet parse_routeset(std::string_view text, const Topology& topology);
std::string routeset_json(const RouteSet& routes);

/**
 * Initiators: {"node", "route_to", "payload_bits", "start_cycle", "header"}
 * or {"node", "script": [{"open": bits}, {"send": bits}, {"idle": n},
 * {"close": true}]}. payload_bits is a 0/1 string or a bit count filled
 * from the seed. Initiators without a header are routed jointly when their
 * destinations are distinct, otherwise each on its own.
 *
 * Targets: {"node", "fifo_bits", "consume_rate" ("1/4" or a number),
 * "cts_threshold", "assert_err_at"}.
 */
struct Scenario {
  std::vector<InitiatorModel> initiators;
  std::vector<TargetModel> targets;
  std::optional<std::uint64_t> max_cycles;
};

Scenario parse_scenario(std::string_view text, const Topology& topology,
                        std::uint64_t seed = 1);

TdmSchedule parse_schedule(std::string_view text);
std::string schedule_json(const TdmSchedule& schedule);

CampaignConfig parse_campaign(std::string_view text);

}  // namespace mcenoc::io
