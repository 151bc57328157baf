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

#include "mcenoc/switch.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

#include "mcenoc/topology.hpp"

namespace mcenoc {

std::string_view to_string(PortState state) {
  switch (state) {
    case PortState::wait:
      return "WAIT";
    case PortState::accept:
      return "ACCEPT";
    case PortState::reject:
      return "REJECT";
    case PortState::abort:
      return "ABORT";
  }
  return "?";
}

std::string_view to_string(SwitchFault fault) {
  switch (fault) {
    case SwitchFault::none:
      return "none";
    case SwitchFault::forward_after_err:
      return "forward_after_err";
    case SwitchFault::ignore_owner:
      return "ignore_owner";
    case SwitchFault::flip_direction:
      return "flip_direction";
  }
  return "?";
}

Switch::Switch(std::uint32_t port_bits, SwitchFault fault)
    : port_bits_(port_bits), fault_(fault) {
  if (port_bits == 0 || port_bits > kMaxSwitchBits) {
    throw std::invalid_argument("switch port_bits must be in [1, " +
                                std::to_string(kMaxSwitchBits) + "]");
  }
  reset();
}

void Switch::reset() {
  const std::uint32_t n = ports();
  in_.assign(n, InputPort{});
  owner_.assign(n, kIdle);
  fwd_out_.assign(n, ForwardSignals{});
  bwd_out_.assign(n, BackwardSignals{});
}

std::optional<std::uint32_t> Switch::owner(std::uint32_t r) const {
  if (owner_[r] == kIdle) return std::nullopt;
  return owner_[r];
}

bool Switch::is_idle() const {
  return std::all_of(in_.begin(), in_.end(), [](const InputPort& p) {
    return p.state == PortState::wait && p.bits_seen == 0 && !p.clm_seen;
  });
}

void Switch::step(std::span<const ForwardSignals> fwd_in,
                  std::span<const BackwardSignals> bwd_in) {
  const std::uint32_t n = ports();
  if (fwd_in.size() != n || bwd_in.size() != n) {
    throw std::invalid_argument("switch step: expected " + std::to_string(n) +
                                " ports");
  }

  std::vector<ForwardSignals> next_fwd(n);
  std::vector<std::uint32_t> claim(n, kIdle);
  std::vector<std::uint32_t> released;

  for (std::uint32_t q = 0; q < n; ++q) {
    InputPort& port = in_[q];
    const ForwardSignals& in = fwd_in[q];
    port.clm_seen = in.clm;

    switch (port.state) {
      case PortState::wait: {
        bwd_out_[q] = {false, true};
        if (!in.clm) {
          port.bits_seen = 0;
          port.accumulator = 0;
          break;
        }
        if (in.act) {
          port.accumulator = (port.accumulator << 1) | (in.dat ? 1u : 0u);
          ++port.bits_seen;
        }
        if (port.bits_seen == port_bits_) {
          std::uint32_t r = port.accumulator;
          if (fault_ == SwitchFault::flip_direction) r ^= 1u;
          claim[q] = r;
        }
        break;
      }

      case PortState::accept: {
        const std::uint32_t r = port.direction;
        if (bwd_in[r].err) {
          // Error from downstream wins over a simultaneous clm drop.
          port.state = PortState::abort;
          port.release_pending = true;
          bwd_out_[q] = {true, true};
          next_fwd[r] = in;
        } else if (!in.clm) {
          port.state = PortState::wait;
          port.bits_seen = 0;
          port.accumulator = 0;
          bwd_out_[q] = {false, true};
          released.push_back(r);
        } else {
          next_fwd[r] = in;
          bwd_out_[q] = {false, bwd_in[r].cts};
        }
        break;
      }

      case PortState::reject: {
        if (!in.clm) {
          port.state = PortState::wait;
          port.bits_seen = 0;
          port.accumulator = 0;
          bwd_out_[q] = {false, true};
        } else {
          bwd_out_[q] = {true, true};
        }
        break;
      }

      case PortState::abort: {
        const std::uint32_t r = port.direction;
        if (fault_ == SwitchFault::forward_after_err) {
          if (in.clm) {
            next_fwd[r] = in;
          } else {
            released.push_back(r);
          }
          port.release_pending = false;
        } else if (port.release_pending) {
          released.push_back(r);
          port.release_pending = false;
        }
        if (!in.clm) {
          port.state = PortState::wait;
          port.bits_seen = 0;
          port.accumulator = 0;
          bwd_out_[q] = {false, true};
        } else {
          bwd_out_[q] = {true, true};
        }
        break;
      }
    }
  }

  // Claims are judged against ownership at the start of the cycle; the
  // lowest-indexed input wins a same-cycle tie.
  std::vector<bool> granted(n, false);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> grants;
  for (std::uint32_t q = 0; q < n; ++q) {
    if (claim[q] == kIdle) continue;
    InputPort& port = in_[q];
    const std::uint32_t r = claim[q];
    port.bits_seen = 0;
    port.accumulator = 0;
    const bool taken = owner_[r] != kIdle || granted[r];
    if (!taken || fault_ == SwitchFault::ignore_owner) {
      port.state = PortState::accept;
      port.direction = r;
      granted[r] = true;
      grants.emplace_back(r, q);
      bwd_out_[q] = {false, true};
    } else {
      port.state = PortState::reject;
      bwd_out_[q] = {true, true};
    }
  }

  for (auto r : released) owner_[r] = kIdle;
  for (auto [r, q] : grants) owner_[r] = q;
  fwd_out_ = std::move(next_fwd);
}

}  // namespace mcenoc
