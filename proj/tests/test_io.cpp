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

#include "doctest.h"
#include "json.hpp"
#include "mcenoc/io.hpp"

using namespace mcenoc;

TEST_SUITE("io") {

TEST_CASE("topology round trip") {
  const Topology t = io::parse_topology(R"({"nodes": 32, "switch_bits": 2})");
  CHECK(t.stage_count() == 5);
  const auto j = nlohmann::json::parse(io::topology_json(t));
  CHECK(j["nodes"] == 32);
  CHECK(j["header_bits"] == 9);
  CHECK(j["stages"].size() == 5);
  CHECK(j["stages"][2]["port_bits"] == 1);
  CHECK(j["wiring"].size() == 4);
  const Topology again = io::parse_topology(io::topology_json(t));
  CHECK(again.wiring().boundaries == t.wiring().boundaries);
  CHECK_THROWS_AS(io::parse_topology(R"({"nodes": 6, "switch_bits": 1})"), io::ParseError);
  CHECK_THROWS_AS(io::parse_topology(R"({"nodes": 8})"), io::ParseError);
  CHECK_THROWS_AS(io::parse_topology("{nodes"), io::ParseError);
}

TEST_CASE("permutations") {
  const auto p = io::parse_permutation("[1, 0, 3, 2]");
  CHECK(p.mapping() == std::vector<std::uint32_t>{1, 0, 3, 2});
  CHECK(io::permutation_json(p) == "[1,0,3,2]\n");
  CHECK_THROWS_AS(io::parse_permutation("[1, 1, 3, 2]"), io::ParseError);
  CHECK_THROWS_AS(io::parse_permutation("[1, -1]"), io::ParseError);
  CHECK_THROWS_AS(io::parse_permutation("{}"), io::ParseError);
}

TEST_CASE("routesets") {
  const Topology t = build_topology({8, 2});
  const RouteSet rs = io::parse_routeset(R"({"0": "10-0-01", "3": "00000"})", t);
  REQUIRE(rs.size() == 2);
  CHECK(rs.routes[0].destination == 1);
  CHECK(rs.routes[0].header.grouped() == "10-0-01");
  CHECK(io::routeset_json(rs) == "{\n  \"0\": \"10001\",\n  \"3\": \"00000\"\n}\n");
  CHECK_THROWS_AS(io::parse_routeset(R"({"9": "10001"})", t), io::ParseError);
  CHECK_THROWS_AS(io::parse_routeset(R"({"0": "101"})", t), io::ParseError);
}

TEST_CASE("scenarios") {
  const Topology t = build_topology({8, 1});
  const auto sc = io::parse_scenario(R"({
    "initiators": [
      {"node": 0, "route_to": 5, "payload_bits": "1011"},
      {"node": 2, "route_to": 1, "payload_bits": 6, "start_cycle": 3},
      {"node": 4, "header": "10001"},
      {"node": 6, "script": [{"open": "00001"}, {"send": "11"}, {"idle": 2}, {"close": true}]}
    ],
    "targets": [{"node": 5, "fifo_bits": 10, "consume_rate": "1/4", "cts_threshold": 10,
                 "assert_err_at": 40}],
    "max_cycles": 500
  })", t, 3);
  REQUIRE(sc.initiators.size() == 4);
  const auto& a = sc.initiators[0];
  CHECK(decode_destination(t, 0, RouteHeader(a.script[0].bits, {1, 1, 1, 1, 1})) == 5);
  CHECK(a.script[1].bits == std::vector<bool>{true, false, true, true});
  CHECK(sc.initiators[1].start_cycle == 3);
  CHECK(sc.initiators[1].script[1].bits.size() == 6);
  CHECK(sc.initiators[3].script.size() == 4);
  REQUIRE(sc.targets.size() == 1);
  CHECK(sc.targets[0].consume_rate.num == 1);
  CHECK(sc.targets[0].consume_rate.den == 4);
  CHECK(sc.targets[0].assert_err_at == 40u);
  CHECK(sc.max_cycles == 500u);

  // Same seed, same generated payload.
  const auto again = io::parse_scenario(
      R"({"initiators": [{"node": 2, "route_to": 1, "payload_bits": 6}]})", t, 3);
  const auto other = io::parse_scenario(
      R"({"initiators": [{"node": 2, "route_to": 1, "payload_bits": 6}]})", t, 3);
  CHECK(again.initiators[0].script == other.initiators[0].script);

  CHECK_THROWS_AS(io::parse_scenario(R"({"initiators": [{"node": 8, "route_to": 1}]})", t),
                  io::ParseError);
  CHECK_THROWS_AS(io::parse_scenario(R"({"targets": [{"node": 1, "consume_rate": "1/0"}]})", t),
                  io::ParseError);
}

TEST_CASE("conflicting destinations are routed one by one") {
  const Topology t = build_topology({8, 1});
  const auto sc = io::parse_scenario(R"({"initiators": [
      {"node": 0, "route_to": 3}, {"node": 5, "route_to": 3}]})", t);
  for (const auto& m : sc.initiators) {
    CHECK(decode_destination(t, m.node, RouteHeader(m.script[0].bits, {1, 1, 1, 1, 1})) == 3);
  }
}

TEST_CASE("schedules") {
  const auto s = io::parse_schedule(R"([{"perm": [1, 0], "cycles": 20, "priority": 2,
      "route_priority": [1, 0], "start_offsets": [0, 1]}])");
  REQUIRE(s.slots.size() == 1);
  CHECK(s.slots[0].priority == 2u);
  CHECK(s.slots[0].start_offsets == std::vector<std::uint64_t>{0, 1});
  const auto back = io::parse_schedule(io::schedule_json(s));
  CHECK(back.slots[0].perm == s.slots[0].perm);
  CHECK(back.slots[0].route_priority == s.slots[0].route_priority);
  CHECK(io::parse_schedule(R"({"slots": []})").slots.empty());
  CHECK_THROWS_AS(io::parse_schedule(R"([{"perm": [0, 0], "cycles": 1}])"), io::ParseError);
  CHECK_THROWS_AS(io::parse_schedule(R"([{"perm": [0, 1]}])"), io::ParseError);
}

TEST_CASE("campaign configs") {
  const auto c = io::parse_campaign(
      R"({"level": "network", "n": 16, "switch_bits": 2, "seeds": [4, 5], "cycles": 100})");
  CHECK(c.level == Level::network);
  CHECK(c.nodes == 16);
  CHECK(c.switch_bits == 2);
  CHECK(c.seeds == std::vector<std::uint64_t>{4, 5});
  CHECK(c.cycles == 100);
  CHECK_THROWS_AS(io::parse_campaign(R"({"level": "system"})"), io::ParseError);
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(io::read_file("/nonexistent/mcenoc.json"), io::ParseError);
}

}  // TEST_SUITE
