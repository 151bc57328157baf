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

#include "mcenoc/topology.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mcenoc/routing.hpp"

namespace mcenoc {

namespace {

std::uint32_t log2_exact(std::uint32_t value) {
  return static_cast<std::uint32_t>(std::countr_zero(value));
}

PortMap invert(const PortMap& map) {
  PortMap inverse(map.size(), UINT32_MAX);
  for (std::uint32_t i = 0; i < map.size(); ++i) {
    if (map[i] < map.size()) inverse[map[i]] = i;
  }
  return inverse;
}

bool is_bijection(const PortMap& map, std::uint32_t n) {
  if (map.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto j : map) {
    if (j >= n || hit[j]) return false;
    hit[j] = true;
  }
  return true;
}

}  // namespace

std::vector<std::uint32_t> StagePlan::port_bits() const {
  std::vector<std::uint32_t> bits;
  bits.reserve(stages.size());
  for (const auto& st : stages) bits.push_back(st.port_bits);
  return bits;
}

void check_spec(const NetworkSpec& spec) {
  if (spec.nodes < 4 || !std::has_single_bit(spec.nodes)) {
    throw std::invalid_argument("node count must be a power of two >= 4, got " +
                                std::to_string(spec.nodes));
  }
  if (spec.switch_bits == 0 || spec.switch_bits > kMaxSwitchBits) {
    throw std::invalid_argument("switch_bits must be in [1, " +
                                std::to_string(kMaxSwitchBits) + "]");
  }
  if (spec.switch_bits > log2_exact(spec.nodes)) {
    throw std::invalid_argument("switch degree " +
                                std::to_string(spec.switch_degree()) +
                                " exceeds node count " +
                                std::to_string(spec.nodes));
  }
}

StagePlan plan_stages(std::uint32_t n_nodes, std::uint32_t switch_bits) {
  if (n_nodes < 2 || !std::has_single_bit(n_nodes)) {
    throw std::invalid_argument("node count must be a power of two, got " +
                                std::to_string(n_nodes));
  }
  if (switch_bits == 0 || switch_bits > 31) {
    throw std::invalid_argument("switch_bits must be >= 1");
  }
  const std::uint32_t node_bits = log2_exact(n_nodes);
  if (switch_bits > node_bits) {
    throw std::invalid_argument("switch degree 2^" +
                                std::to_string(switch_bits) +
                                " exceeds node count " +
                                std::to_string(n_nodes));
  }

  // X = ceil(log_B N); the middle stage absorbs the remainder bits.
  const std::uint32_t half = (node_bits + switch_bits - 1) / switch_bits;
  const std::uint32_t middle_bits = node_bits - switch_bits * (half - 1);

  StagePlan plan;
  const std::uint32_t stage_count = 2 * half - 1;
  plan.stages.reserve(stage_count);
  for (std::uint32_t t = 0; t < stage_count; ++t) {
    const std::uint32_t bits = (t == half - 1) ? middle_bits : switch_bits;
    plan.stages.push_back({bits, n_nodes >> bits});
    plan.total_header_bits += bits;
  }
  return plan;
}

PortMap wire_boundary(std::uint32_t boundary_index, const NetworkSpec& spec,
                      const StagePlan& plan) {
  const std::uint32_t half = (plan.stage_count() - 1) / 2;
  if (boundary_index >= half) {
    throw std::out_of_range("boundary index " + std::to_string(boundary_index) +
                            " out of range for " +
                            std::to_string(plan.stage_count()) +
                            "-stage network");
  }
  const std::uint64_t n = spec.nodes;
  const std::uint64_t degree = spec.switch_degree();
  std::uint64_t block = plan.stages[plan.middle()].ports();
  for (std::uint32_t e = 0; e <= boundary_index && block < n; ++e) {
    block *= degree;
  }
  block = std::min(block, n);

  PortMap map(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t origin = (i / block) * block;
    const std::uint64_t k = (i - origin) * degree;
    map[i] = static_cast<std::uint32_t>(((k + k / block) % block) + origin);
  }
  return map;
}

Topology Topology::from_parts(NetworkSpec spec, StagePlan plan,
                              WiringMap wiring) {
  Topology t;
  t.spec_ = spec;
  t.plan_ = std::move(plan);
  t.wiring_ = std::move(wiring);
  t.inverse_.reserve(t.wiring_.boundaries.size());
  for (const auto& map : t.wiring_.boundaries) {
    t.inverse_.push_back(invert(map));
  }
  return t;
}

std::uint32_t Topology::switch_count() const {
  std::uint32_t total = 0;
  for (const auto& st : plan_.stages) total += st.switch_count;
  return total;
}

Topology build_topology(const NetworkSpec& spec) {
  check_spec(spec);
  StagePlan plan = plan_stages(spec.nodes, spec.switch_bits);
  const std::uint32_t stages = plan.stage_count();
  const std::uint32_t half = (stages - 1) / 2;

  WiringMap wiring;
  wiring.boundaries.reserve(stages - 1);
  for (std::uint32_t b = 0; b + 1 < stages; ++b) {
    if (b >= half) {
      // Second half: inner side is stage b.
      wiring.boundaries.push_back(wire_boundary(b - half, spec, plan));
    } else {
      // First half mirrors the second: inner side is stage b + 1.
      wiring.boundaries.push_back(
          invert(wire_boundary(half - 1 - b, spec, plan)));
    }
  }
  return Topology::from_parts(spec, std::move(plan), std::move(wiring));
}

bool ValidationReport::ok() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ValidationEntry& e) { return e.passed; });
}

ValidationReport validate(const Topology& topology) {
  ValidationReport report;
  const auto& plan = topology.plan();
  const std::uint32_t n = topology.nodes();
  const std::uint32_t stages = plan.stage_count();

  {
    bool sizes = stages % 2 == 1;
    for (const auto& st : plan.stages) {
      sizes = sizes && (st.switch_count * st.ports() == n);
    }
    report.entries.push_back(
        {"stage_sizes", sizes, std::to_string(stages) + " stages"});
  }

  {
    bool palindrome = true;
    for (std::uint32_t t = 0; t < stages; ++t) {
      palindrome = palindrome && plan.stages[t].port_bits ==
                                     plan.stages[stages - 1 - t].port_bits;
    }
    report.entries.push_back({"palindrome", palindrome, ""});
  }

  {
    std::uint32_t sum = 0;
    for (const auto& st : plan.stages) sum += st.port_bits;
    report.entries.push_back({"header_bits", sum == plan.total_header_bits,
                              "P=" + std::to_string(plan.total_header_bits)});
  }

  bool wiring_ok = topology.boundary_count() + 1 == stages;
  report.entries.push_back({"boundary_count", wiring_ok,
                            std::to_string(topology.boundary_count())});
  for (std::uint32_t b = 0; b < topology.boundary_count(); ++b) {
    const bool bij = is_bijection(topology.wiring().boundaries[b], n);
    wiring_ok = wiring_ok && bij;
    report.entries.push_back(
        {"bijection[" + std::to_string(b) + "]", bij, ""});
  }

  if (wiring_ok) {
    bool mirror = true;
    const auto& maps = topology.wiring().boundaries;
    for (std::uint32_t b = 0; b < maps.size(); ++b) {
      const auto& opposite = maps[maps.size() - 1 - b];
      for (std::uint32_t i = 0; i < n && mirror; ++i) {
        mirror = opposite[maps[b][i]] == i;
      }
    }
    report.entries.push_back({"mirror", mirror, ""});
  }

  if (n <= 8 && report.ok()) {
    std::vector<std::uint32_t> dst(n);
    std::iota(dst.begin(), dst.end(), 0u);
    std::uint64_t checked = 0;
    std::uint64_t routable = 0;
    std::string first_failure;
    do {
      ++checked;
      try {
        const Permutation perm(dst);
        if (routeset_conflict_free(topology,
                                   route_permutation(topology, perm))) {
          ++routable;
          continue;
        }
      } catch (const RoutingError& e) {
        if (first_failure.empty()) first_failure = e.what();
        continue;
      }
      if (first_failure.empty()) first_failure = "conflict";
    } while (std::next_permutation(dst.begin(), dst.end()));
    report.permutations_checked = checked;
    report.permutations_routable = routable;
    std::ostringstream detail;
    detail << routable << "/" << checked;
    if (!first_failure.empty()) detail << " (" << first_failure << ")";
    report.entries.push_back(
        {"routability", routable == checked, detail.str()});
  }
  return report;
}

}  // namespace mcenoc
