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
 * @file topology.hpp
 * @brief Stage planning and inter-stage wiring of a folded Benes network.
 *
 * A network of N endpoint nodes is built from crossbar switching elements of
 * 2^p ports. Stage t holds N / 2^{m_t} switches; switch w of that stage owns
 * the global port range [w * 2^{m_t}, (w + 1) * 2^{m_t}). Boundary b maps a
 * global output port of stage b onto a global input port of stage b + 1.
 *
 * The network is folded: input port q of stage 0 and output port q of the
 * last stage both belong to node q.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mcenoc {

/// Widest switching element the simulator models (256 ports).
inline constexpr std::uint32_t kMaxSwitchBits = 8;

/// Endpoint count and full-size switch width requested by the user.
struct NetworkSpec {
  std::uint32_t nodes = 0;
  std::uint32_t switch_bits = 1;

  std::uint32_t switch_degree() const { return 1u << switch_bits; }
  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

struct StageSpec {
  std::uint32_t port_bits = 0;
  std::uint32_t switch_count = 0;

  std::uint32_t ports() const { return 1u << port_bits; }
  friend bool operator==(const StageSpec&, const StageSpec&) = default;
};

struct StagePlan {
  std::vector<StageSpec> stages;
  std::uint32_t total_header_bits = 0;

  std::uint32_t stage_count() const {
    return static_cast<std::uint32_t>(stages.size());
  }
  /// Index of the middle stage.
  std::uint32_t middle() const { return stage_count() / 2; }
  std::vector<std::uint32_t> port_bits() const;
  friend bool operator==(const StagePlan&, const StagePlan&) = default;
};

using PortMap = std::vector<std::uint32_t>;

/// boundaries[b] maps stage-b output ports to stage-(b+1) input ports.
struct WiringMap {
  std::vector<PortMap> boundaries;
};

/// Throws std::invalid_argument unless N is a power of two >= 4 and 2^p <= N.
void check_spec(const NetworkSpec& spec);

/**
 * Stage plan for an N-node network of 2^switch_bits-port elements.
 *
 * When log2(N) is a multiple of switch_bits every stage uses full-size
 * switches and there are 2 log_B(N) - 1 of them. Otherwise X = ceil(log_B N)
 * and the 2X - 1 stages keep full-size outer stages around a single narrower
 * middle stage of log2(N / B^{X-1}) bits.
 *
 * Accepts N >= 2 so that the analytic timing model can evaluate tiny
 * networks; build_topology() enforces the stricter NetworkSpec rules.
 */
StagePlan plan_stages(std::uint32_t n_nodes, std::uint32_t switch_bits);

/**
 * Port bijection for one boundary, indexed from the middle outward
 * (n = 0 is adjacent to the middle stage). The returned map sends the port
 * index i on the inner side to port j on the outer side:
 *
 *   b = min(B_mid * B^(n+1), N),  o = floor(i / b) * b,
 *   k = (i - o) * B,              j = ((k + floor(k / b)) mod b) + o
 *
 * For uniform networks B_mid = B and b = B^(n+2).
 */
PortMap wire_boundary(std::uint32_t boundary_index, const NetworkSpec& spec,
                      const StagePlan& plan);

class Topology {
 public:
  /// Unchecked assembly; use build_topology() for normal construction.
  static Topology from_parts(NetworkSpec spec, StagePlan plan,
                             WiringMap wiring);

  const NetworkSpec& spec() const { return spec_; }
  const StagePlan& plan() const { return plan_; }
  const WiringMap& wiring() const { return wiring_; }
  bool folded() const { return true; }

  std::uint32_t nodes() const { return spec_.nodes; }
  std::uint32_t stage_count() const { return plan_.stage_count(); }
  std::uint32_t header_bits() const { return plan_.total_header_bits; }
  std::uint32_t boundary_count() const {
    return static_cast<std::uint32_t>(wiring_.boundaries.size());
  }
  const StageSpec& stage(std::uint32_t t) const { return plan_.stages.at(t); }
  std::uint32_t switch_count() const;

  std::uint32_t switch_of(std::uint32_t stage, std::uint32_t port) const {
    return port >> plan_.stages[stage].port_bits;
  }
  std::uint32_t local_port(std::uint32_t stage, std::uint32_t port) const {
    return port & (plan_.stages[stage].ports() - 1);
  }
  std::uint32_t port_base(std::uint32_t stage, std::uint32_t sw) const {
    return sw << plan_.stages[stage].port_bits;
  }

  /// Stage-(b+1) input port fed by stage-b output port.
  std::uint32_t next_port(std::uint32_t boundary, std::uint32_t out) const {
    return wiring_.boundaries[boundary][out];
  }
  /// Stage-b output port feeding stage-(b+1) input port.
  std::uint32_t prev_port(std::uint32_t boundary, std::uint32_t in) const {
    return inverse_[boundary][in];
  }

 private:
  Topology() = default;

  NetworkSpec spec_;
  StagePlan plan_;
  WiringMap wiring_;
  std::vector<PortMap> inverse_;
};

Topology build_topology(const NetworkSpec& spec);

struct ValidationEntry {
  std::string check;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  /// Set when the exhaustive routability sweep ran (N <= 8).
  std::optional<std::uint64_t> permutations_checked;
  std::uint64_t permutations_routable = 0;

  bool ok() const;
};

/**
 * Structural checks: per-boundary bijection, palindromic stage plan, header
 * bit total, mirror symmetry of the wiring. For N <= 8 every one of the N!
 * permutations is also routed and checked for link conflicts and correct
 * endpoints.
 */
ValidationReport validate(const Topology& topology);

enum class DiagramFormat { tikz, dot };

DiagramFormat parse_diagram_format(const std::string& name);

/// Deterministic DOT or TikZ rendering; ports named s<stage>_w<switch>_p<port>.
std::string emit_diagram(const Topology& topology, DiagramFormat format);

}  // namespace mcenoc
