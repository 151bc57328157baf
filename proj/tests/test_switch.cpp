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

#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mcenoc/switch.hpp"

using namespace mcenoc;

namespace {

// Drives a switch with per-cycle input vectors.
struct Bench {
  explicit Bench(std::uint32_t bits, SwitchFault fault = SwitchFault::none)
      : sw(bits, fault), fwd(sw.ports()), bwd(sw.ports()) {}

  void step() { sw.step(fwd, bwd); }

  // Sends a header to input q one bit per cycle, MSB first.
  void header(std::uint32_t q, std::uint32_t dir) {
    for (std::uint32_t b = sw.port_bits(); b-- > 0;) {
      fwd[q] = {true, true, ((dir >> b) & 1u) != 0};
      step();
    }
  }

  Switch sw;
  std::vector<ForwardSignals> fwd;
  std::vector<BackwardSignals> bwd;
};

}  // namespace

TEST_SUITE("switch") {

TEST_CASE("reset state") {
  Switch sw(2);
  CHECK(sw.ports() == 4);
  CHECK(sw.is_idle());
  for (std::uint32_t q = 0; q < 4; ++q) {
    CHECK(sw.state(q) == PortState::wait);
    CHECK_FALSE(sw.owner(q).has_value());
    CHECK_FALSE(sw.forward_out()[q].any());
    CHECK(sw.backward_out()[q] == BackwardSignals{false, true});
  }
  CHECK_THROWS_AS(Switch(0), std::invalid_argument);
  CHECK_THROWS_AS(Switch(9), std::invalid_argument);
}

TEST_CASE("header bits accumulate only on active cycles") {
  Bench b(2);
  b.fwd[1] = {true, true, true};
  b.step();
  CHECK(b.sw.bits_seen(1) == 1);
  b.fwd[1] = {true, false, false};  // stall
  b.step();
  CHECK(b.sw.bits_seen(1) == 1);
  CHECK(b.sw.state(1) == PortState::wait);
  b.fwd[1] = {true, true, false};
  b.step();
  CHECK(b.sw.state(1) == PortState::accept);
  CHECK(b.sw.direction(1) == 2);  // "10"
  CHECK(b.sw.owner(2) == 1u);
  // The decision cycle does not forward anything.
  CHECK_FALSE(b.sw.forward_out()[2].any());
}

TEST_CASE("dropping clm during the header discards partial bits") {
  Bench b(2);
  b.fwd[0] = {true, true, true};
  b.step();
  b.fwd[0] = {};
  b.step();
  CHECK(b.sw.bits_seen(0) == 0);
  CHECK(b.sw.is_idle());
}

TEST_CASE("accepted connections forward through one register") {
  Bench b(1);
  b.header(0, 1);
  REQUIRE(b.sw.state(0) == PortState::accept);
  b.fwd[0] = {true, true, true};
  b.step();
  CHECK(b.sw.forward_out()[1] == ForwardSignals{true, true, true});
  CHECK_FALSE(b.sw.forward_out()[0].any());
  b.fwd[0] = {true, false, false};
  b.step();
  CHECK(b.sw.forward_out()[1] == ForwardSignals{true, false, false});
}

TEST_CASE("cts passes back from the claimed output") {
  Bench b(1);
  b.header(0, 1);
  b.fwd[0] = {true, false, false};
  b.bwd[1].cts = false;
  b.step();
  CHECK_FALSE(b.sw.backward_out()[0].cts);
  b.bwd[1].cts = true;
  b.step();
  CHECK(b.sw.backward_out()[0].cts);
}

TEST_CASE("a busy output rejects and holds err until clm drops") {
  Bench b(1);
  b.header(0, 1);
  b.fwd[0] = {true, false, false};
  b.header(1, 1);
  CHECK(b.sw.state(1) == PortState::reject);
  CHECK(b.sw.backward_out()[1].err);
  b.fwd[1] = {true, false, false};
  b.step();
  CHECK(b.sw.state(1) == PortState::reject);
  CHECK(b.sw.backward_out()[1].err);
  b.fwd[1] = {};
  b.step();
  CHECK(b.sw.state(1) == PortState::wait);
  CHECK_FALSE(b.sw.backward_out()[1].err);
  // The established connection is untouched.
  CHECK(b.sw.state(0) == PortState::accept);
  CHECK(b.sw.owner(1) == 0u);
}

TEST_CASE("same-cycle claims: lowest input wins") {
  Bench b(2);
  for (std::uint32_t bit = 0; bit < 2; ++bit) {
    b.fwd[3] = {true, true, true};
    b.fwd[2] = {true, true, true};
    b.step();
  }
  CHECK(b.sw.state(2) == PortState::accept);
  CHECK(b.sw.state(3) == PortState::reject);
  CHECK(b.sw.owner(3) == 2u);
}

TEST_CASE("release frees the output for a new claim") {
  Bench b(1);
  b.header(0, 0);
  b.fwd[0] = {};
  b.step();
  CHECK(b.sw.state(0) == PortState::wait);
  CHECK_FALSE(b.sw.owner(0).has_value());
  b.header(1, 0);
  CHECK(b.sw.state(1) == PortState::accept);
}

TEST_CASE("downstream err aborts: err_out next edge, output blank one later") {
  Bench b(1);
  b.header(0, 1);
  b.fwd[0] = {true, true, true};
  b.step();
  b.bwd[1].err = true;
  b.step();
  CHECK(b.sw.state(0) == PortState::abort);
  CHECK(b.sw.backward_out()[0].err);
  b.step();
  CHECK_FALSE(b.sw.forward_out()[1].any());
  CHECK_FALSE(b.sw.owner(1).has_value());
  CHECK(b.sw.backward_out()[0].err);  // held while clm stays high
  b.fwd[0] = {};
  b.bwd[1].err = false;
  b.step();
  CHECK(b.sw.state(0) == PortState::wait);
  CHECK_FALSE(b.sw.backward_out()[0].err);
}

TEST_CASE("err wins over a simultaneous clm drop") {
  Bench b(1);
  b.header(0, 0);
  b.fwd[0] = {};
  b.bwd[0].err = true;
  b.step();
  CHECK(b.sw.state(0) == PortState::abort);
}

TEST_CASE("independent connections do not interact") {
  Bench b(2);
  for (std::uint32_t q = 0; q < 4; ++q) b.header(q, 3 - q);
  for (std::uint32_t q = 0; q < 4; ++q) {
    CHECK(b.sw.state(q) == PortState::accept);
    CHECK(b.sw.direction(q) == 3 - q);
  }
  b.fwd = {{true, true, false}, {true, true, true}, {true, false, false}, {}};
  b.step();
  CHECK(b.sw.forward_out()[3] == ForwardSignals{true, true, false});
  CHECK(b.sw.forward_out()[2] == ForwardSignals{true, true, true});
  CHECK(b.sw.forward_out()[1] == ForwardSignals{true, false, false});
  CHECK(b.sw.state(3) == PortState::wait);
}

TEST_CASE("mutants") {
  SUBCASE("forward_after_err keeps driving the claimed output") {
    Bench b(1, SwitchFault::forward_after_err);
    b.header(0, 1);
    b.fwd[0] = {true, true, true};
    b.bwd[1].err = true;
    b.step();
    b.step();
    CHECK(b.sw.forward_out()[1].any());
  }
  SUBCASE("ignore_owner double-books an output") {
    Bench b(1, SwitchFault::ignore_owner);
    b.header(0, 1);
    b.fwd[0] = {true, false, false};
    b.header(1, 1);
    CHECK(b.sw.state(0) == PortState::accept);
    CHECK(b.sw.state(1) == PortState::accept);
    CHECK(b.sw.direction(0) == b.sw.direction(1));
  }
  SUBCASE("flip_direction inverts the low bit") {
    Bench b(2, SwitchFault::flip_direction);
    b.header(0, 2);
    CHECK(b.sw.direction(0) == 3);
  }
}

TEST_CASE("input size mismatch throws") {
  Switch sw(1);
  std::vector<ForwardSignals> f(3);
  std::vector<BackwardSignals> r(2);
  CHECK_THROWS_AS(sw.step(f, r), std::invalid_argument);
}

}  // TEST_SUITE
