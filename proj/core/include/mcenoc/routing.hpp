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
 * @file routing.hpp
 * @brief Offline permutation routing and header manipulation.
 *
 * Routes are computed against the actual wiring of a Topology by recursive
 * decomposition: the outermost stage pair is split from the inner
 * subnetworks, the request multigraph between first- and last-stage switches
 * is edge-coloured with one colour per subnetwork, and each subnetwork is
 * solved recursively. Colouring uses repeated Euler splits; for two-port
 * switches that is exactly the classical looping algorithm.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mcenoc/topology.hpp"

namespace mcenoc {

/// mapping[src] = dst, a bijection on [0, N).
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument if the mapping is not a bijection.
  explicit Permutation(std::vector<std::uint32_t> mapping);

  static Permutation identity(std::uint32_t n);

  std::uint32_t size() const {
    return static_cast<std::uint32_t>(mapping_.size());
  }
  std::uint32_t operator[](std::uint32_t src) const { return mapping_[src]; }
  const std::vector<std::uint32_t>& mapping() const { return mapping_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> mapping_;
};

/// Direction bits consumed stage by stage, most significant bit first.
class RouteHeader {
 public:
  RouteHeader() = default;
  RouteHeader(std::vector<bool> bits, std::vector<std::uint32_t> grouping);

  /// Parses "10001" or the grouped form "10-0-01"; dashes fix the grouping.
  static RouteHeader parse(std::string_view text);
  /// Parses bits and groups them according to a stage plan.
  static RouteHeader parse(std::string_view text, const StagePlan& plan);

  const std::vector<bool>& bits() const { return bits_; }
  const std::vector<std::uint32_t>& grouping() const { return grouping_; }
  std::size_t size() const { return bits_.size(); }

  /// Bit string without separators, e.g. "10001".
  std::string str() const;
  /// Grouped form, e.g. "10-0-01".
  std::string grouped() const;

  friend bool operator==(const RouteHeader&, const RouteHeader&) = default;

 private:
  std::vector<bool> bits_;
  std::vector<std::uint32_t> grouping_;
};

struct Route {
  std::uint32_t source = 0;
  RouteHeader header;
  std::uint32_t destination = 0;  ///< intended endpoint
};

/// One route per participating source, ordered by source.
struct RouteSet {
  std::vector<Route> routes;

  std::size_t size() const { return routes.size(); }
  bool empty() const { return routes.empty(); }
};

class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Computes a conflict-free RouteSet for the permutation. Throws RoutingError
 * if the wiring does not decompose into a recursive Clos structure and
 * std::invalid_argument if the permutation size does not match.
 */
RouteSet route_permutation(const Topology& topology, const Permutation& perm);

/// Regroups a bit string to the stage plan's per-stage bit counts.
RouteHeader regroup_header(const std::vector<bool>& radix2_bits,
                           const StagePlan& plan);

/// Global output port chosen at each stage for a header sent from src.
std::vector<std::uint32_t> route_path(const Topology& topology,
                                      std::uint32_t src,
                                      const RouteHeader& header);

/// Endpoint reached by following the header's stage groups through the wiring.
std::uint32_t decode_destination(const Topology& topology, std::uint32_t src,
                                 const RouteHeader& header);

/// Static check: paths are link-disjoint and land on the intended nodes.
bool routeset_conflict_free(const Topology& topology, const RouteSet& routes);

/// Enumerates every header of the topology's length, in numeric order.
std::vector<RouteHeader> all_headers(const Topology& topology);

struct RouteOutcome {
  std::uint32_t source = 0;
  bool opened = false;
  bool rejected = false;
  std::optional<std::uint32_t> destination;  ///< from the route_opened event
  std::uint32_t expected = 0;
  bool payload_intact = false;

  bool correct() const {
    return opened && destination && *destination == expected &&
           payload_intact;
  }
};

struct RouteSetReport {
  std::vector<RouteOutcome> routes;
  std::uint64_t cycles = 0;

  std::size_t opened() const;
  std::size_t rejected() const;
  bool all_correct() const;
};

/**
 * Drives every header concurrently from cycle 0 through a cycle-accurate
 * network and reports per-route outcome and destination. Each route carries
 * a short payload tagged with its source so delivery is checked end to end.
 */
RouteSetReport verify_routeset(const Topology& topology,
                               const RouteSet& routes);

}  // namespace mcenoc
