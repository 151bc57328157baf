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

#include <cmath>
#include <set>

#include "doctest.h"
#include "mcenoc/tdm.hpp"

using namespace mcenoc;

TEST_SUITE("tdm") {

TEST_CASE("all-to-all covers each ordered pair once") {
  for (std::uint32_t n : {2u, 4u, 8u, 16u}) {
    const auto s = all_to_all_schedule(n);
    REQUIRE(s.slots.size() == n);
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (const auto& slot : s.slots) {
      for (std::uint32_t q = 0; q < n; ++q) {
        CHECK(pairs.insert({q, slot.perm[q]}).second);
      }
    }
    CHECK(pairs.size() == std::size_t{n} * n);
    CHECK(s.slots[0].perm == Permutation::identity(n));
  }
  const auto two = all_to_all_schedule(2);
  CHECK(two.slots[1].perm.mapping() == std::vector<std::uint32_t>{1, 0});
  CHECK_THROWS_AS(all_to_all_schedule(1), std::invalid_argument);
}

TEST_CASE("mesh emulation") {
  SUBCASE("4x4 torus") {
    CHECK(grid_shape(16, 2) == std::vector<std::uint32_t>{4, 4});
    const auto s = mesh_emulation_schedule(16, 2);
    REQUIRE(s.slots.size() == 4);
    CHECK(s.slots[0].perm[0] == 1);   // east
    CHECK(s.slots[0].perm[3] == 0);   // wraps
    CHECK(s.slots[1].perm[0] == 3);   // west
    CHECK(s.slots[2].perm[0] == 4);   // south
    CHECK(s.slots[3].perm[0] == 12);  // north wraps
  }
  SUBCASE("2x2x2 gives six slots") {
    CHECK(mesh_emulation_schedule(8, 3).slots.size() == 6);
  }
  SUBCASE("ring") {
    const auto s = mesh_emulation_schedule(4, 1);
    REQUIRE(s.slots.size() == 2);
    CHECK(s.slots[0].perm.mapping() == std::vector<std::uint32_t>{1, 2, 3, 0});
    CHECK(s.slots[1].perm.mapping() == std::vector<std::uint32_t>{3, 0, 1, 2});
  }
  SUBCASE("uneven split puts the extra bit first") {
    CHECK(grid_shape(32, 2) == std::vector<std::uint32_t>{8, 4});
  }
  CHECK_THROWS_AS(grid_shape(8, 4), std::invalid_argument);
  CHECK_THROWS_AS(grid_shape(12, 2), std::invalid_argument);
  CHECK_THROWS_AS(grid_shape(8, 0), std::invalid_argument);
}

TEST_CASE("broadcast doubles the informed set") {
  for (std::uint32_t n : {2u, 4u, 8u, 16u, 32u}) {
    for (std::uint32_t src : {0u, n - 1}) {
      const auto s = broadcast_schedule(n, src);
      const auto expected_slots = static_cast<std::size_t>(std::ceil(std::log2(n)));
      CHECK(s.slots.size() == expected_slots);
      const auto sizes = broadcast_informed_sizes(s, src);
      for (std::size_t k = 0; k < sizes.size(); ++k) {
        CHECK(sizes[k] == std::min<std::uint32_t>(2u << k, n));
      }
    }
  }
  CHECK(broadcast_informed_sizes(broadcast_schedule(8, 0), 0) ==
        std::vector<std::uint32_t>{2, 4, 8});
  CHECK_THROWS_AS(broadcast_schedule(8, 8), std::invalid_argument);
}

TEST_CASE("broadcast delivery through the simulated network") {
  const Topology t = build_topology({16, 1});
  CHECK(simulate_broadcast(t, broadcast_schedule(16, 5), 5) ==
        std::vector<std::uint32_t>{2, 4, 8, 16});
}

TEST_CASE("timing model") {
  // 128 nodes of 2-port switches: 13 stages, 13 header bits.
  const auto a = tdm_cycle_time({364e6, 0.99, 128, 1});
  CHECK(a.overhead_cycles == 26);
  CHECK(a.slot_cycles == doctest::Approx(2600.0));
  CHECK(a.cycle_seconds == doctest::Approx(914e-6).epsilon(0.005));
  const auto b = tdm_cycle_time({364e6, 0.99, 65536, 1});
  CHECK(b.overhead_cycles == 62);
  CHECK(b.slot_seconds == doctest::Approx(17.03e-6).epsilon(0.005));
  CHECK(b.cycle_seconds == doctest::Approx(1.12).epsilon(0.005));
  const auto c = tdm_cycle_time({1e6, 0.5, 2, 1});
  CHECK(c.overhead_cycles == 2);
  CHECK(c.slot_cycles == doctest::Approx(4.0));
  CHECK_THROWS_AS(tdm_cycle_time({364e6, 1.0, 8, 1}), std::invalid_argument);
  CHECK_THROWS_AS(tdm_cycle_time({364e6, 0.0, 8, 1}), std::invalid_argument);
  CHECK_THROWS_AS(tdm_cycle_time({0.0, 0.5, 8, 1}), std::invalid_argument);
}

TEST_CASE("bisection bandwidth is an exact product") {
  CHECK(bisection_bandwidth(364e6, 1, 8).bisection_bits_per_s == 2.912e9);
  CHECK(bisection_bandwidth(364e6, 1, 32).bisection_bits_per_s == 11.648e9);
  CHECK(bisection_bandwidth(364e6, 1, 32).per_node_per_bit == 364e6);
  CHECK(bisection_bandwidth(364e6, 0, 8).bisection_bits_per_s == 0.0);
  CHECK(bisection_bandwidth(364e6, 0, 8).per_node_per_bit == 0.0);
}

TEST_CASE("model csv") {
  const std::string csv = model_csv({{364e6, 0.99, 128, 1}});
  CHECK(csv == "N,B,efficiency,f_Hz,slot_us,cycle_us\n"
               "128,2,0.99,3.64e+08,7.1429,914.2857\n");
}

TEST_CASE("schedule validation") {
  const Topology t = build_topology({8, 1});
  const std::uint64_t overhead = t.header_bits() + t.stage_count();
  SUBCASE("all-to-all passes") {
    const auto r = validate_schedule(t, all_to_all_schedule(8, 100));
    CHECK(r.ok());
    CHECK(r.slots_checked == 8);
    CHECK(r.routes_verified == 64);
  }
  SUBCASE("short slots are flagged") {
    const auto r = validate_schedule(t, all_to_all_schedule(8, overhead - 1));
    CHECK_FALSE(r.ok());
    CHECK(r.issues.size() == 8);
    CHECK(r.issues[0].kind == ScheduleIssue::Kind::cycles);
  }
  SUBCASE("a late high-priority route violates the ordering rule") {
    auto s = all_to_all_schedule(8, 100);
    s.slots.resize(1);
    s.slots[0].route_priority = {0, 0, 0, 0, 0, 0, 0, 3};
    s.slots[0].start_offsets = {0, 0, 0, 0, 0, 0, 0, 0};
    CHECK(validate_schedule(t, s).ok());
    s.slots[0].start_offsets[7] = 2;
    const auto r = validate_schedule(t, s);
    CHECK_FALSE(r.ok());
    CHECK(r.issues[0].kind == ScheduleIssue::Kind::priority);
    // Lower priority starting later is fine.
    s.slots[0].route_priority = {3, 3, 3, 3, 3, 3, 3, 0};
    CHECK(validate_schedule(t, s).ok());
  }
  SUBCASE("wrong size") {
    TdmSchedule s = all_to_all_schedule(4, 100);
    const auto r = validate_schedule(t, s);
    CHECK(r.issues.size() == 4);
    CHECK(r.issues[0].kind == ScheduleIssue::Kind::size);
  }
}

TEST_CASE("slot utilization meets the efficiency target") {
  const Topology t = build_topology({8, 1});
  for (double eff : {0.5, 0.8, 0.9, 0.95}) {
    const auto slot = static_cast<std::uint64_t>(
        std::ceil(tdm_cycle_time({364e6, eff, 8, 1}).slot_cycles));
    for (const auto& s : all_to_all_schedule(8, slot).slots) {
      const auto u = measure_slot_utilization(t, s.perm, slot);
      CHECK(u.all_delivered);
      CHECK(u.utilization >= eff - 1.0 / static_cast<double>(slot));
    }
  }
  CHECK_THROWS_AS(measure_slot_utilization(t, Permutation::identity(8), 5),
                  std::invalid_argument);
}

}  // TEST_SUITE
