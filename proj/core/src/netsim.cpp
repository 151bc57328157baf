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

#include "mcenoc/netsim.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mcenoc/rng.hpp"

namespace mcenoc {

// ---------------------------------------------------------------------------
// Network

Network::Network(Topology topology, SwitchFault fault)
    : topo_(std::move(topology)) {
  const std::uint32_t stages = topo_.stage_count();
  const std::uint32_t n = topo_.nodes();
  switches_.reserve(stages);
  for (std::uint32_t t = 0; t < stages; ++t) {
    const auto& st = topo_.stage(t);
    switches_.emplace_back(st.switch_count, Switch(st.port_bits, fault));
  }
  fwd_in_.assign(stages, std::vector<ForwardSignals>(n));
  bwd_in_.assign(stages, std::vector<BackwardSignals>(n));
  fwd_out_.assign(stages, std::vector<ForwardSignals>(n));
  bwd_out_.assign(stages, std::vector<BackwardSignals>(n));
}

Network build_network(const Topology& topology, SwitchFault fault) {
  return Network(topology, fault);
}

void Network::reset() {
  for (auto& stage : switches_) {
    for (auto& sw : stage) sw.reset();
  }
  for (auto& v : fwd_in_) std::fill(v.begin(), v.end(), ForwardSignals{});
  for (auto& v : bwd_in_) std::fill(v.begin(), v.end(), BackwardSignals{});
  for (auto& v : fwd_out_) std::fill(v.begin(), v.end(), ForwardSignals{});
  for (auto& v : bwd_out_) std::fill(v.begin(), v.end(), BackwardSignals{});
  cycle_ = 0;
}

std::uint32_t Network::switch_total() const {
  std::uint32_t total = 0;
  for (const auto& stage : switches_) {
    total += static_cast<std::uint32_t>(stage.size());
  }
  return total;
}

bool Network::is_idle() const {
  for (const auto& stage : switches_) {
    for (const auto& sw : stage) {
      if (!sw.is_idle()) return false;
    }
  }
  for (const auto& v : fwd_out_) {
    for (const auto& s : v) {
      if (s.any()) return false;
    }
  }
  for (const auto& v : bwd_out_) {
    for (const auto& s : v) {
      if (s.err || !s.cts) return false;
    }
  }
  return true;
}

void Network::gather_inputs(std::span<const ForwardSignals> node_tx,
                            std::span<const BackwardSignals> node_back) {
  const std::uint32_t stages = topo_.stage_count();
  const std::uint32_t n = topo_.nodes();
  std::copy(node_tx.begin(), node_tx.end(), fwd_in_[0].begin());
  for (std::uint32_t t = 1; t < stages; ++t) {
    for (std::uint32_t j = 0; j < n; ++j) {
      fwd_in_[t][j] = fwd_out_[t - 1][topo_.prev_port(t - 1, j)];
    }
  }
  for (std::uint32_t t = 0; t + 1 < stages; ++t) {
    for (std::uint32_t i = 0; i < n; ++i) {
      bwd_in_[t][i] = bwd_out_[t + 1][topo_.next_port(t, i)];
    }
  }
  std::copy(node_back.begin(), node_back.end(), bwd_in_[stages - 1].begin());
}

void Network::step(std::span<const ForwardSignals> node_tx,
                   std::span<const BackwardSignals> node_back) {
  const std::uint32_t n = topo_.nodes();
  if (node_tx.size() != n || node_back.size() != n) {
    throw std::invalid_argument("network step: expected " + std::to_string(n) +
                                " endpoint signals");
  }
  gather_inputs(node_tx, node_back);
  for (std::uint32_t t = 0; t < topo_.stage_count(); ++t) {
    const std::uint32_t ports = topo_.stage(t).ports();
    for (std::uint32_t w = 0; w < switches_[t].size(); ++w) {
      const std::uint32_t base = topo_.port_base(t, w);
      Switch& sw = switches_[t][w];
      sw.step(std::span<const ForwardSignals>(fwd_in_[t]).subspan(base, ports),
              std::span<const BackwardSignals>(bwd_in_[t]).subspan(base, ports));
      std::copy(sw.forward_out().begin(), sw.forward_out().end(),
                fwd_out_[t].begin() + base);
      std::copy(sw.backward_out().begin(), sw.backward_out().end(),
                bwd_out_[t].begin() + base);
    }
  }
  ++cycle_;
}

ForwardSignals Network::link_forward(std::uint32_t link,
                                     std::uint32_t port) const {
  if (link == 0) return fwd_in_[0][port];
  return fwd_out_[link - 1][port];
}

BackwardSignals Network::link_backward(std::uint32_t link,
                                       std::uint32_t port) const {
  const std::uint32_t stages = topo_.stage_count();
  if (link == 0) return bwd_out_[0][port];
  if (link == stages) return bwd_in_[stages - 1][port];
  return bwd_out_[link][topo_.next_port(link - 1, port)];
}

std::optional<std::uint32_t> Network::source_of(std::uint32_t stage,
                                                std::uint32_t port) const {
  while (stage > 0) {
    const std::uint32_t out = topo_.prev_port(stage - 1, port);
    const std::uint32_t sw = topo_.switch_of(stage - 1, out);
    const auto owner =
        switches_[stage - 1][sw].owner(topo_.local_port(stage - 1, out));
    if (!owner) return std::nullopt;
    port = topo_.port_base(stage - 1, sw) + *owner;
    --stage;
  }
  return port;
}

// ---------------------------------------------------------------------------
// Scripts and reports

Action Action::open(const RouteHeader& header) {
  return {Kind::open, header.bits(), 0};
}
Action Action::send(std::vector<bool> bits) {
  return {Kind::send, std::move(bits), 0};
}
Action Action::idle(std::uint64_t cycles) { return {Kind::idle, {}, cycles}; }
Action Action::close() { return {Kind::close, {}, 0}; }

InitiatorModel InitiatorModel::single_route(std::uint32_t node,
                                            const RouteHeader& header,
                                            std::vector<bool> payload,
                                            std::uint64_t start_cycle) {
  InitiatorModel m;
  m.node = node;
  m.start_cycle = start_cycle;
  m.script.push_back(Action::open(header));
  if (!payload.empty()) m.script.push_back(Action::send(std::move(payload)));
  m.script.push_back(Action::close());
  return m;
}

std::optional<std::uint64_t> InitiatorReport::setup_latency() const {
  if (!opened_cycle) return std::nullopt;
  return *opened_cycle - start_cycle;
}

std::optional<std::uint64_t> InitiatorReport::error_latency() const {
  if (!err_cycle) return std::nullopt;
  return *err_cycle - start_cycle;
}

std::vector<bool> TargetReport::bits_from(std::uint32_t source) const {
  std::vector<bool> bits;
  for (const auto& d : delivered) {
    if (d.source == static_cast<std::int64_t>(source)) bits.push_back(d.value);
  }
  return bits;
}

const InitiatorReport* RunSummary::initiator(std::uint32_t node) const {
  for (const auto& r : initiators) {
    if (r.node == node) return &r;
  }
  return nullptr;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::reset:
      return "reset";
    case EventKind::route_opened:
      return "route_opened";
    case EventKind::route_rejected:
      return "route_rejected";
    case EventKind::route_aborted:
      return "route_aborted";
    case EventKind::err_observed:
      return "err_observed";
    case EventKind::route_closed:
      return "route_closed";
    case EventKind::bit_delivered:
      return "bit_delivered";
    case EventKind::bit_lost:
      return "bit_lost";
    case EventKind::script_done:
      return "script_done";
    case EventKind::timeout:
      return "timeout";
  }
  return "?";
}

std::string_view to_string(Signal signal) {
  switch (signal) {
    case Signal::clm:
      return "clm";
    case Signal::act:
      return "act";
    case Signal::dat:
      return "dat";
    case Signal::err:
      return "err";
    case Signal::cts:
      return "cts";
  }
  return "?";
}

std::string Event::to_line() const {
  std::ostringstream os;
  os << cycle << ',' << to_string(kind) << ',' << node << ',';
  switch (kind) {
    case EventKind::route_opened:
      os << "dst=" << peer;
      break;
    case EventKind::route_rejected:
      os << "stage=" << stage << " switch=" << sw;
      break;
    case EventKind::bit_delivered:
    case EventKind::bit_lost:
      os << "src=" << peer << " bit=" << value;
      break;
    default:
      break;
  }
  return os.str();
}

std::size_t Trace::count(EventKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(),
                    [kind](const Event& e) { return e.kind == kind; }));
}

std::string Trace::to_text() const {
  std::string out;
  for (const auto& e : events) {
    out += e.to_line();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// run()

namespace {

struct InitiatorRuntime {
  const InitiatorModel* model = nullptr;
  std::size_t report_index = 0;
  std::size_t action = 0;
  std::size_t bit = 0;
  std::uint64_t idle_left = 0;
  bool idle_started = false;
  bool in_route = false;
  bool route_live = false;  // current attempt reached the last stage
  bool done = false;
};

struct TargetRuntime {
  TargetModel model;
  std::uint64_t occupancy = 0;
  std::uint64_t credit = 0;
  bool err_active = false;
  bool err_done = false;
};

class Runner {
 public:
  Runner(Network& net, std::span<const InitiatorModel> initiators,
         std::span<const TargetModel> targets, const RunOptions& options)
      : net_(net), topo_(net.topology()), options_(options) {
    const std::uint32_t n = topo_.nodes();
    std::vector<bool> seen(n, false);
    for (const auto& m : initiators) {
      if (m.node >= n) {
        throw std::invalid_argument("initiator node " + std::to_string(m.node) +
                                    " out of range");
      }
      if (seen[m.node]) {
        throw std::invalid_argument("duplicate initiator node " +
                                    std::to_string(m.node));
      }
      seen[m.node] = true;
      InitiatorRuntime rt;
      rt.model = &m;
      rt.report_index = trace_.summary.initiators.size();
      InitiatorReport rep;
      rep.node = m.node;
      rep.start_cycle = m.start_cycle;
      trace_.summary.initiators.push_back(rep);
      by_node_.resize(n, SIZE_MAX);
      by_node_[m.node] = initiators_.size();
      initiators_.push_back(rt);
    }
    by_node_.resize(n, SIZE_MAX);

    targets_.resize(n);
    for (std::uint32_t q = 0; q < n; ++q) targets_[q].model.node = q;
    std::fill(seen.begin(), seen.end(), false);
    for (const auto& t : targets) {
      if (t.node >= n) {
        throw std::invalid_argument("target node " + std::to_string(t.node) +
                                    " out of range");
      }
      if (seen[t.node]) {
        throw std::invalid_argument("duplicate target node " +
                                    std::to_string(t.node));
      }
      if (t.consume_rate.den == 0) {
        throw std::invalid_argument("target consume rate has zero denominator");
      }
      seen[t.node] = true;
      targets_[t.node].model = t;
    }
    trace_.summary.targets.resize(n);
    for (std::uint32_t q = 0; q < n; ++q) trace_.summary.targets[q].node = q;
    dst_source_.assign(n, -1);
    node_tx_.resize(n);
    node_back_.resize(n);
    prev_state_.assign(topo_.stage_count(),
                       std::vector<PortState>(n, PortState::wait));
    out_source_.assign(topo_.stage_count(), std::vector<std::int64_t>(n, -1));
  }

  Trace run() {
    net_.reset();
    emit({0, EventKind::reset, 0});
    if (options_.record_signals) snapshot_links(0, true);

    const std::uint64_t drain =
        topo_.header_bits() + 2ull * topo_.stage_count();
    std::optional<std::uint64_t> drain_deadline;
    std::uint64_t cycle = 0;
    for (;; ++cycle) {
      if (cycle >= options_.max_cycles) {
        emit({cycle, EventKind::timeout, 0});
        trace_.summary.completed = false;
        break;
      }
      step_targets(cycle);
      step_initiators(cycle);
      capture_states();
      net_.step(node_tx_, node_back_);
      if (options_.observer) options_.observer(net_);
      detect_transitions(cycle);
      if (options_.record_signals) snapshot_links(cycle, false);

      const bool scripts_done =
          std::all_of(initiators_.begin(), initiators_.end(),
                      [](const InitiatorRuntime& r) { return r.done; });
      if (scripts_done) {
        if (net_.is_idle()) {
          trace_.summary.completed = true;
          ++cycle;
          break;
        }
        if (!drain_deadline) drain_deadline = cycle + drain;
        if (cycle >= *drain_deadline) {
          trace_.summary.completed = true;
          ++cycle;
          break;
        }
      }
    }
    trace_.summary.cycles = cycle;
    return std::move(trace_);
  }

 private:
  void emit(Event e) { trace_.events.push_back(e); }

  InitiatorReport& report_of(const InitiatorRuntime& rt) {
    return trace_.summary.initiators[rt.report_index];
  }

  void step_targets(std::uint64_t cycle) {
    const auto delivery = net_.node_delivery();
    for (std::uint32_t q = 0; q < targets_.size(); ++q) {
      TargetRuntime& tr = targets_[q];
      const TargetModel& m = tr.model;
      TargetReport& rep = trace_.summary.targets[q];
      const ForwardSignals in = delivery[q];

      if (in.act) {
        const std::int64_t src = dst_source_[q];
        const bool fits = tr.occupancy < m.fifo_capacity;
        if (fits) {
          ++tr.occupancy;
          rep.delivered.push_back({cycle, src, in.dat});
        } else {
          ++rep.lost;
        }
        if (options_.record_bit_events || !fits) {
          Event e{cycle, fits ? EventKind::bit_delivered : EventKind::bit_lost,
                  q};
          e.peer = src;
          e.value = in.dat ? 1 : 0;
          emit(e);
        }
      }
      rep.max_occupancy = std::max(rep.max_occupancy, tr.occupancy);

      const std::uint64_t cap = std::max(m.consume_rate.num, m.consume_rate.den);
      tr.credit = std::min<std::uint64_t>(tr.credit + m.consume_rate.num, cap);
      while (tr.credit >= m.consume_rate.den && tr.occupancy > 0) {
        --tr.occupancy;
        tr.credit -= m.consume_rate.den;
      }

      BackwardSignals out;
      const std::uint64_t free_space = m.fifo_capacity == UINT64_MAX
                                           ? UINT64_MAX
                                           : m.fifo_capacity - tr.occupancy;
      out.cts = free_space >= m.cts_threshold;
      if (m.assert_err_at && cycle >= *m.assert_err_at && !tr.err_done) {
        if (in.clm) tr.err_active = true;
        if (tr.err_active && !in.clm) {
          tr.err_active = false;
          tr.err_done = true;
        }
      }
      out.err = tr.err_active;
      if (out.err) rep.err_asserted = true;
      node_back_[q] = out;
    }
  }

  void step_initiators(std::uint64_t cycle) {
    std::fill(node_tx_.begin(), node_tx_.end(), ForwardSignals{});
    const auto feedback = net_.node_feedback();
    for (auto& rt : initiators_) {
      node_tx_[rt.model->node] = drive(rt, cycle, feedback[rt.model->node]);
    }
  }

  void finish_if_exhausted(InitiatorRuntime& rt, std::uint64_t cycle) {
    if (!rt.done && rt.action >= rt.model->script.size()) {
      rt.done = true;
      report_of(rt).done = true;
      emit({cycle, EventKind::script_done, rt.model->node});
    }
  }

  ForwardSignals drive(InitiatorRuntime& rt, std::uint64_t cycle,
                       BackwardSignals feedback) {
    const InitiatorModel& m = *rt.model;
    if (cycle < m.start_cycle || rt.done) return {};

    if (rt.in_route && feedback.err) {
      InitiatorReport& rep = report_of(rt);
      if (!rep.err_cycle) rep.err_cycle = cycle;
      emit({cycle, EventKind::err_observed, m.node});
      if (rt.route_live) {
        rep.aborted = true;
        emit({cycle, EventKind::route_aborted, m.node});
      }
      while (rt.action < m.script.size() &&
             m.script[rt.action].kind != Action::Kind::close) {
        ++rt.action;
      }
      if (rt.action < m.script.size()) ++rt.action;
      rt.bit = 0;
      rt.idle_started = false;
      rt.in_route = false;
      rt.route_live = false;
      finish_if_exhausted(rt, cycle);
      return {};
    }

    while (rt.action < m.script.size()) {
      const Action& a = m.script[rt.action];
      switch (a.kind) {
        case Action::Kind::open:
        case Action::Kind::send: {
          if (a.bits.empty()) {
            ++rt.action;
            continue;
          }
          if (a.kind == Action::Kind::open && rt.bit == 0 && !rt.in_route) {
            rt.route_live = false;
          }
          rt.in_route = true;
          ForwardSignals s{true, false, false};
          if (feedback.cts) {
            s.act = true;
            s.dat = a.bits[rt.bit++];
            if (a.kind == Action::Kind::send) ++report_of(rt).payload_bits_sent;
            if (rt.bit == a.bits.size()) {
              rt.bit = 0;
              ++rt.action;
              finish_if_exhausted(rt, cycle);
            }
          }
          return s;
        }
        case Action::Kind::idle: {
          if (a.cycles == 0) {
            ++rt.action;
            continue;
          }
          if (!rt.idle_started) {
            rt.idle_started = true;
            rt.idle_left = a.cycles;
          }
          if (--rt.idle_left == 0) {
            rt.idle_started = false;
            ++rt.action;
            finish_if_exhausted(rt, cycle);
          }
          return {rt.in_route, false, false};
        }
        case Action::Kind::close: {
          ++rt.action;
          if (rt.in_route) emit({cycle, EventKind::route_closed, m.node});
          rt.in_route = false;
          rt.route_live = false;
          finish_if_exhausted(rt, cycle);
          return {};
        }
      }
    }
    finish_if_exhausted(rt, cycle);
    return {};
  }

  void capture_states() {
    for (std::uint32_t t = 0; t < topo_.stage_count(); ++t) {
      for (std::uint32_t j = 0; j < topo_.nodes(); ++j) {
        prev_state_[t][j] = net_.switch_at(t, topo_.switch_of(t, j))
                                .state(topo_.local_port(t, j));
      }
    }
  }

  // Source of the connection entering (stage, port). Each output remembers
  // the source that last claimed it; ownership may already be released
  // upstream while a short route's head is still in flight.
  std::int64_t input_source(std::uint32_t stage, std::uint32_t port) const {
    if (stage == 0) return port;
    return out_source_[stage - 1][topo_.prev_port(stage - 1, port)];
  }

  void detect_transitions(std::uint64_t cycle) {
    const std::uint32_t last = topo_.stage_count() - 1;
    for (std::uint32_t t = 0; t <= last; ++t) {
      for (std::uint32_t j = 0; j < topo_.nodes(); ++j) {
        const std::uint32_t w = topo_.switch_of(t, j);
        const Switch& sw = net_.switch_at(t, w);
        const std::uint32_t local = topo_.local_port(t, j);
        const PortState now = sw.state(local);
        if (now == prev_state_[t][j]) continue;
        const std::int64_t src = input_source(t, j);
        const bool known = src >= 0 && by_node_[src] != SIZE_MAX;
        if (now == PortState::accept) {
          const std::uint32_t out = topo_.port_base(t, w) + sw.direction(local);
          out_source_[t][out] = src;
          if (t != last) continue;
          dst_source_[out] = src;
          Event e{cycle, EventKind::route_opened,
                  static_cast<std::uint32_t>(src)};
          e.peer = out;
          emit(e);
          if (known) {
            auto& rt = initiators_[by_node_[src]];
            rt.route_live = true;
            auto& rep = report_of(rt);
            if (!rep.opened_cycle) {
              rep.opened_cycle = cycle + 1;
              rep.destination = out;
            }
          }
        } else if (now == PortState::reject) {
          Event e{cycle, EventKind::route_rejected,
                  static_cast<std::uint32_t>(src)};
          e.stage = t;
          e.sw = w;
          emit(e);
          if (known) {
            auto& rep = report_of(initiators_[by_node_[src]]);
            if (!rep.reject_stage) rep.reject_stage = t;
          }
        }
      }
    }
  }

  void snapshot_links(std::uint64_t cycle, bool initial) {
    const std::uint32_t links = topo_.stage_count() + 1;
    const std::uint32_t n = topo_.nodes();
    if (initial) {
      link_values_.assign(std::size_t{links} * n * 5, 0);
      for (std::size_t i = 0; i < link_values_.size(); i += 5) {
        link_values_[i + 4] = 1;  // cts defaults high
      }
      return;
    }
    for (std::uint32_t l = 0; l < links; ++l) {
      for (std::uint32_t p = 0; p < n; ++p) {
        const auto f = net_.link_forward(l, p);
        const auto b = net_.link_backward(l, p);
        const bool values[5] = {f.clm, f.act, f.dat, b.err, b.cts};
        const std::size_t base = (std::size_t{l} * n + p) * 5;
        for (std::uint32_t s = 0; s < 5; ++s) {
          if (link_values_[base + s] != values[s]) {
            link_values_[base + s] = values[s];
            trace_.signals.push_back(
                {cycle, l, p, static_cast<Signal>(s), values[s]});
          }
        }
      }
    }
  }

  Network& net_;
  const Topology& topo_;
  RunOptions options_;
  Trace trace_;
  std::vector<InitiatorRuntime> initiators_;
  std::vector<std::size_t> by_node_;
  std::vector<TargetRuntime> targets_;
  std::vector<std::int64_t> dst_source_;
  std::vector<ForwardSignals> node_tx_;
  std::vector<BackwardSignals> node_back_;
  std::vector<std::vector<PortState>> prev_state_;
  std::vector<std::vector<std::int64_t>> out_source_;
  std::vector<std::uint8_t> link_values_;
};

}  // namespace

Trace run(Network& network, std::span<const InitiatorModel> initiators,
          std::span<const TargetModel> targets, const RunOptions& options) {
  return Runner(network, initiators, targets, options).run();
}

// ---------------------------------------------------------------------------
// Measurements

SetupMeasurement measure_setup_latency(Network& network, std::uint32_t source,
                                       const RouteHeader& header) {
  const auto init = InitiatorModel::single_route(source, header, {true});
  RunOptions options;
  options.max_cycles = 16ull * (network.topology().header_bits() +
                                network.topology().stage_count()) + 64;
  const Trace trace = run(network, std::span(&init, 1), {}, options);
  const InitiatorReport& rep = trace.summary.initiators.front();
  SetupMeasurement m;
  m.destination = rep.destination;
  m.reject_stage = rep.reject_stage;
  if (rep.opened_cycle) {
    m.opened = true;
    m.cycles = *rep.setup_latency();
  } else if (rep.err_cycle) {
    m.cycles = *rep.error_latency();
  }
  return m;
}

ErrorMeasurement measure_error_latency(
    Network& network, std::span<const InitiatorModel> scenario) {
  RunOptions options;
  options.record_bit_events = false;
  const Trace trace = run(network, scenario, {}, options);
  for (const auto& e : trace.events) {
    if (e.kind != EventKind::route_rejected) continue;
    const InitiatorReport* rep = trace.summary.initiator(e.node);
    if (rep == nullptr || !rep->err_cycle) continue;
    return {rep->node, static_cast<std::uint32_t>(e.stage),
            *rep->error_latency()};
  }
  throw std::runtime_error("scenario produced no conflict");
}

std::optional<ConflictScenario> engineer_conflict(const Topology& topology,
                                                  std::uint32_t stage,
                                                  std::uint64_t seed) {
  if (stage >= topology.stage_count()) {
    throw std::out_of_range("conflict stage out of range");
  }
  Rng rng(seed);
  const auto headers = all_headers(topology);
  const std::uint32_t n = topology.nodes();
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto a = static_cast<std::uint32_t>(rng.below(n));
    const auto& ha = headers[rng.below(headers.size())];
    const auto path_a = route_path(topology, a, ha);
    auto b = static_cast<std::uint32_t>(rng.below(n - 1));
    if (b >= a) ++b;
    std::vector<std::size_t> candidates;
    for (std::size_t h = 0; h < headers.size(); ++h) {
      const auto path_b = route_path(topology, b, headers[h]);
      bool disjoint = true;
      for (std::uint32_t t = 0; t < stage && disjoint; ++t) {
        disjoint = path_b[t] != path_a[t];
      }
      if (disjoint && path_b[stage] == path_a[stage]) candidates.push_back(h);
    }
    if (candidates.empty()) continue;
    const auto& hb = headers[candidates[rng.below(candidates.size())]];
    return ConflictScenario{a, ha, b, hb};
  }
  return std::nullopt;
}

FlowCheck check_flow(Network& network, const InitiatorModel& initiator,
                     const TargetModel& target, std::uint64_t max_cycles) {
  std::vector<bool> sent;
  for (const auto& a : initiator.script) {
    if (a.kind == Action::Kind::send) {
      sent.insert(sent.end(), a.bits.begin(), a.bits.end());
    }
  }
  RunOptions options;
  options.max_cycles = max_cycles;
  options.record_bit_events = false;
  const Trace trace =
      run(network, std::span(&initiator, 1), std::span(&target, 1), options);
  const TargetReport& rep = trace.summary.targets[target.node];
  const auto received = rep.bits_from(initiator.node);

  FlowCheck fc;
  fc.sent = sent.size();
  fc.delivered = received.size();
  fc.lost = rep.lost;
  fc.in_order = received == sent;
  fc.completed = trace.summary.completed;
  fc.no_loss = fc.lost == 0 && fc.in_order && fc.completed;
  return fc;
}

bool check_no_loss(Network& network, const InitiatorModel& initiator,
                   const TargetModel& target) {
  return check_flow(network, initiator, target).no_loss;
}

}  // namespace mcenoc
