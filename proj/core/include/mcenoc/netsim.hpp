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
 * @file netsim.hpp
 * @brief Cycle-stepped composition of switches with endpoint models.
 *
 * Every inter-stage link is driven by the registered outputs of the switch
 * on either end, so a forward bit spends one cycle per stage and a backward
 * signal one cycle per stage. Endpoint links are unregistered: the
 * initiator's drive is seen by stage 0 in the same cycle, and the target's
 * cts/err are seen by the last stage in the same cycle.
 *
 * Cycle t is evaluated in three phases, all reading cycle-(t-1) registers:
 * targets sample the last stage and update their buffers, initiators sample
 * stage-0 feedback and choose their drive, then every switch steps.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcenoc/routing.hpp"
#include "mcenoc/switch.hpp"
#include "mcenoc/topology.hpp"

namespace mcenoc {

class Network {
 public:
  explicit Network(Topology topology, SwitchFault fault = SwitchFault::none);

  const Topology& topology() const { return topo_; }
  std::uint64_t cycle() const { return cycle_; }

  void reset();

  /// One clock edge. node_tx feeds stage-0 inputs, node_back feeds the last
  /// stage's backward inputs; both are indexed by node.
  void step(std::span<const ForwardSignals> node_tx,
            std::span<const BackwardSignals> node_back);

  /// Stage-0 backward outputs, as seen by the initiators this cycle.
  std::span<const BackwardSignals> node_feedback() const {
    return bwd_out_.front();
  }
  /// Last-stage forward outputs, as seen by the targets this cycle.
  std::span<const ForwardSignals> node_delivery() const {
    return fwd_out_.back();
  }

  const Switch& switch_at(std::uint32_t stage, std::uint32_t sw) const {
    return switches_[stage][sw];
  }
  std::uint32_t switch_total() const;
  bool is_idle() const;

  /// Forward inputs applied at the last step, indexed by global input port.
  std::span<const ForwardSignals> stage_forward_in(std::uint32_t stage) const {
    return fwd_in_[stage];
  }
  /// Forward outputs of a stage, indexed by global output port.
  std::span<const ForwardSignals> stage_forward_out(std::uint32_t stage) const {
    return fwd_out_[stage];
  }
  /// Backward outputs of a stage, indexed by global input port.
  std::span<const BackwardSignals> stage_backward_out(
      std::uint32_t stage) const {
    return bwd_out_[stage];
  }
  /// Backward inputs applied at the last step, indexed by global output port.
  std::span<const BackwardSignals> stage_backward_in(std::uint32_t stage) const {
    return bwd_in_[stage];
  }

  /// Forward signals on link l (0 = node to stage 0, S = last stage to node).
  ForwardSignals link_forward(std::uint32_t link, std::uint32_t port) const;
  /// Backward signals on link l, indexed like link_forward.
  BackwardSignals link_backward(std::uint32_t link, std::uint32_t port) const;

  /// Source node of the connection currently entering (stage, input port),
  /// found by walking output ownership back to stage 0.
  std::optional<std::uint32_t> source_of(std::uint32_t stage,
                                         std::uint32_t port) const;

 private:
  void gather_inputs(std::span<const ForwardSignals> node_tx,
                     std::span<const BackwardSignals> node_back);

  Topology topo_;
  std::vector<std::vector<Switch>> switches_;
  // Per stage, indexed by global port.
  std::vector<std::vector<ForwardSignals>> fwd_in_;
  std::vector<std::vector<BackwardSignals>> bwd_in_;
  std::vector<std::vector<ForwardSignals>> fwd_out_;
  std::vector<std::vector<BackwardSignals>> bwd_out_;
  std::uint64_t cycle_ = 0;
};

Network build_network(const Topology& topology,
                      SwitchFault fault = SwitchFault::none);

struct Rate {
  std::uint32_t num = 1;
  std::uint32_t den = 1;
};

struct Action {
  enum class Kind : std::uint8_t { open, send, idle, close };

  Kind kind = Kind::idle;
  std::vector<bool> bits;
  std::uint64_t cycles = 0;

  static Action open(const RouteHeader& header);
  static Action send(std::vector<bool> bits);
  static Action idle(std::uint64_t cycles);
  static Action close();

  friend bool operator==(const Action&, const Action&) = default;
};

/// Scripted traffic source. Never asserts act while its cts input is low;
/// on err it drops clm and skips to the action after the next close.
struct InitiatorModel {
  std::uint32_t node = 0;
  std::uint64_t start_cycle = 0;
  std::vector<Action> script;

  /// open(header), send(payload), close.
  static InitiatorModel single_route(std::uint32_t node,
                                     const RouteHeader& header,
                                     std::vector<bool> payload,
                                     std::uint64_t start_cycle = 0);
};

/// Receiving endpoint with a bounded FIFO. cts is high while the free space
/// is at least cts_threshold.
struct TargetModel {
  std::uint32_t node = 0;
  std::uint64_t fifo_capacity = UINT64_MAX;
  Rate consume_rate{};
  std::uint64_t cts_threshold = 0;
  /// From this cycle on, err is asserted against the next incoming route
  /// and held until its clm drops.
  std::optional<std::uint64_t> assert_err_at;
};

enum class EventKind : std::uint8_t {
  reset,
  route_opened,    ///< node = source, peer = destination
  route_rejected,  ///< node = source, stage/sw = where the claim failed
  route_aborted,   ///< node = source; err seen after the route had opened
  err_observed,    ///< node = source
  route_closed,    ///< node = source
  bit_delivered,   ///< node = destination, peer = source, value = bit
  bit_lost,        ///< node = destination, peer = source, value = bit
  script_done,     ///< node = source
  timeout,
};

std::string_view to_string(EventKind kind);

struct Event {
  std::uint64_t cycle = 0;
  EventKind kind = EventKind::reset;
  std::uint32_t node = 0;
  std::int64_t peer = -1;
  std::int64_t stage = -1;
  std::int64_t sw = -1;
  std::int64_t value = -1;

  /// "cycle,kind,node,detail"
  std::string to_line() const;
  friend bool operator==(const Event&, const Event&) = default;
};

enum class Signal : std::uint8_t { clm, act, dat, err, cts };

std::string_view to_string(Signal signal);

/// A value change on one link signal; links are numbered as in
/// Network::link_forward.
struct SignalChange {
  std::uint64_t cycle = 0;
  std::uint32_t link = 0;
  std::uint32_t port = 0;
  Signal signal = Signal::clm;
  bool value = false;

  friend bool operator==(const SignalChange&, const SignalChange&) = default;
};

struct InitiatorReport {
  std::uint32_t node = 0;
  std::uint64_t start_cycle = 0;
  std::optional<std::uint64_t> opened_cycle;   ///< cycle the route latched
  std::optional<std::uint32_t> destination;
  std::optional<std::uint64_t> err_cycle;      ///< first err seen at source
  std::optional<std::uint32_t> reject_stage;
  bool aborted = false;
  std::uint64_t payload_bits_sent = 0;
  bool done = false;

  std::optional<std::uint64_t> setup_latency() const;
  std::optional<std::uint64_t> error_latency() const;
};

struct DeliveredBit {
  std::uint64_t cycle = 0;
  std::int64_t source = -1;
  bool value = false;
};

struct TargetReport {
  std::uint32_t node = 0;
  std::vector<DeliveredBit> delivered;
  std::uint64_t lost = 0;
  std::uint64_t max_occupancy = 0;
  bool err_asserted = false;

  /// Bits received from one source, in arrival order.
  std::vector<bool> bits_from(std::uint32_t source) const;
};

struct RunSummary {
  std::uint64_t cycles = 0;
  bool completed = false;
  std::vector<InitiatorReport> initiators;
  std::vector<TargetReport> targets;  ///< one per node

  const InitiatorReport* initiator(std::uint32_t node) const;
};

struct Trace {
  std::vector<Event> events;
  std::vector<SignalChange> signals;  ///< filled only with record_signals
  RunSummary summary;

  std::size_t count(EventKind kind) const;
  /// Newline-delimited event records.
  std::string to_text() const;
};

struct RunOptions {
  std::uint64_t max_cycles = 100000;
  bool record_signals = false;
  bool record_bit_events = true;
  /// Called after every clock edge.
  std::function<void(const Network&)> observer;
};

/**
 * Resets the network and runs the scripts to completion. The run stops when
 * every script has finished and the network is idle (or a drain window of
 * P + 2S cycles has passed), or at max_cycles. Nodes without a TargetModel
 * get an unbounded FIFO consuming one bit per cycle.
 */
Trace run(Network& network, std::span<const InitiatorModel> initiators,
          std::span<const TargetModel> targets, const RunOptions& options = {});

/// Serialises recorded signal changes as a VCD dump.
void write_vcd(std::ostream& os, const Topology& topology, const Trace& trace);

struct SetupMeasurement {
  bool opened = false;
  std::uint64_t cycles = 0;  ///< setup latency, or err latency if rejected
  std::optional<std::uint32_t> destination;
  std::optional<std::uint32_t> reject_stage;
};

/// Cycles from the first header bit until the route is latched at the last
/// stage, on an otherwise idle network.
SetupMeasurement measure_setup_latency(Network& network, std::uint32_t source,
                                       const RouteHeader& header);

struct ErrorMeasurement {
  std::uint32_t source = 0;
  std::uint32_t stage = 0;
  std::uint64_t cycles = 0;
};

/// Cycles from the losing route's first header bit until err is seen at its
/// source. Throws std::runtime_error if the scenario produces no rejection.
ErrorMeasurement measure_error_latency(
    Network& network, std::span<const InitiatorModel> scenario);

/// Two single-route initiators whose paths share no link before `stage`
/// and claim the same output of `stage`.
struct ConflictScenario {
  std::uint32_t source_a = 0;
  RouteHeader header_a;
  std::uint32_t source_b = 0;
  RouteHeader header_b;
};

std::optional<ConflictScenario> engineer_conflict(const Topology& topology,
                                                  std::uint32_t stage,
                                                  std::uint64_t seed);

struct FlowCheck {
  bool no_loss = false;
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t lost = 0;
  bool in_order = false;
  bool completed = false;
};

/// Runs one initiator into one target and compares sent and received data.
FlowCheck check_flow(Network& network, const InitiatorModel& initiator,
                     const TargetModel& target,
                     std::uint64_t max_cycles = 1'000'000);

/// True iff every payload bit arrives exactly once and in order.
bool check_no_loss(Network& network, const InitiatorModel& initiator,
                   const TargetModel& target);

}  // namespace mcenoc
