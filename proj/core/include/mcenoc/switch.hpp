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
 * @file switch.hpp
 * @brief Cycle-accurate model of one 2^p-port circuit switching element.
 *
 * Each input port q runs a four-state protocol:
 *
 *   Wait    accumulates p direction bits (MSB first) on cycles with clm & act
 *   Accept  connected to output r; forward signals pass through a one-deep
 *           register, cts and err return through another
 *   Reject  claim denied (output busy or lost same-cycle arbitration to a
 *           lower q); err held upstream until clm drops
 *   Abort   connection torn down after err from downstream; err held
 *           upstream until clm drops, the output is released one cycle later
 *
 * step() is a synchronous edge: it reads this cycle's inputs and the current
 * registers and produces the registers seen by neighbours next cycle.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mcenoc {

enum class PortState : std::uint8_t { wait, accept, reject, abort };

std::string_view to_string(PortState state);

/// Upstream to downstream.
struct ForwardSignals {
  bool clm = false;  ///< claim; connection held while high
  bool act = false;  ///< dat carries a valid bit this cycle
  bool dat = false;

  bool any() const { return clm || act || dat; }
  friend bool operator==(const ForwardSignals&, const ForwardSignals&) = default;
};

/// Downstream to upstream.
struct BackwardSignals {
  bool err = false;
  bool cts = true;

  friend bool operator==(const BackwardSignals&,
                         const BackwardSignals&) = default;
};

/**
 * Single-line protocol mutations used to demonstrate that the property
 * monitors are sensitive. Never enabled outside verification runs.
 */
enum class SwitchFault : std::uint8_t {
  none,
  forward_after_err,  ///< Abort keeps forwarding instead of releasing
  ignore_owner,       ///< claims are granted even if the output is taken
  flip_direction,     ///< claimed output has its low bit inverted
};

std::string_view to_string(SwitchFault fault);

class Switch {
 public:
  static constexpr std::uint32_t kMaxPortBits = 8;

  explicit Switch(std::uint32_t port_bits,
                  SwitchFault fault = SwitchFault::none);

  std::uint32_t port_bits() const { return port_bits_; }
  std::uint32_t ports() const { return 1u << port_bits_; }
  SwitchFault fault() const { return fault_; }

  void reset();

  /// One clock edge. fwd_in is per input port, bwd_in per output port.
  void step(std::span<const ForwardSignals> fwd_in,
            std::span<const BackwardSignals> bwd_in);

  std::span<const ForwardSignals> forward_out() const { return fwd_out_; }
  std::span<const BackwardSignals> backward_out() const { return bwd_out_; }

  PortState state(std::uint32_t q) const { return in_[q].state; }
  std::uint32_t bits_seen(std::uint32_t q) const { return in_[q].bits_seen; }
  /// Claimed output; meaningful in Accept and Abort.
  std::uint32_t direction(std::uint32_t q) const { return in_[q].direction; }
  std::optional<std::uint32_t> owner(std::uint32_t r) const;

  /// Every port in Wait with no claim bits and no clm seen last cycle.
  bool is_idle() const;

 private:
  static constexpr std::uint32_t kIdle = UINT32_MAX;

  struct InputPort {
    PortState state = PortState::wait;
    std::uint32_t bits_seen = 0;
    std::uint32_t accumulator = 0;
    std::uint32_t direction = 0;
    bool clm_seen = false;
    bool release_pending = false;
  };

  std::uint32_t port_bits_;
  SwitchFault fault_;
  std::vector<InputPort> in_;
  std::vector<std::uint32_t> owner_;
  std::vector<ForwardSignals> fwd_out_;
  std::vector<BackwardSignals> bwd_out_;
};

}  // namespace mcenoc
