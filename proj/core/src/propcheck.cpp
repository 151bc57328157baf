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

#include "mcenoc/propcheck.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <future>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "mcenoc/rng.hpp"
#include "mcenoc/routing.hpp"

namespace mcenoc {

namespace {

constexpr std::size_t kMaxCounterexamples = 3;
constexpr std::size_t kWindow = 4;

const char* kSimulationMethod =
    "simulation with seeded random stimulus (no formal proof)";
const char* kExhaustiveMethod =
    "bounded exhaustive simulation over all permutations";

}  // namespace

std::string_view to_string(Level level) {
  switch (level) {
    case Level::core:
      return "core";
    case Level::network:
      return "network";
    case Level::system:
      return "system";
  }
  return "?";
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "FAIL";
    case Status::vacuous:
      return "vacuous";
    case Status::uncovered:
      return "uncovered";
  }
  return "?";
}

const std::vector<PropertySpec>& property_catalog() {
  static const std::vector<PropertySpec> catalog = {
      {"C1", Level::core, "no two active inputs share an output",
       "switch monitor"},
      {"C15", Level::core,
       "inbound err aborts the connection and blanks the claimed output",
       "switch monitor"},
      {"N4", Level::network,
       "error-free, conflict-free routes reach the decoded endpoint",
       "route sampling"},
      {"R1", Level::network, "every permutation routes without conflict",
       "exhaustive permutation sweep"},
      {"S4", Level::system,
       "higher priority routes are created before lower priority ones",
       "tdm::validate_schedule"},
  };
  return catalog;
}

// ---------------------------------------------------------------------------
// Reports

Status PropertyResult::status() const {
  if (failures > 0) return Status::fail;
  if (hits == 0) return Status::vacuous;
  return Status::pass;
}

const PropertyResult* CheckReport::find(std::string_view id) const {
  for (const auto& p : properties) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

PropertyResult& CheckReport::get(std::string_view id, Level level) {
  for (auto& p : properties) {
    if (p.id == id) return p;
  }
  PropertyResult p;
  p.id = std::string(id);
  p.level = level;
  properties.push_back(std::move(p));
  return properties.back();
}

bool CheckReport::failed() const {
  return std::any_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.failures > 0; });
}

void CheckReport::merge(const CheckReport& other) {
  if (method.empty()) {
    method = other.method;
  } else if (!other.method.empty() &&
             method.find(other.method) == std::string::npos) {
    method += "; " + other.method;
  }
  for (const auto& p : other.properties) {
    PropertyResult& mine = get(p.id, p.level);
    mine.hits += p.hits;
    mine.passes += p.passes;
    mine.failures += p.failures;
    for (const auto& c : p.counterexamples) {
      if (mine.counterexamples.size() < kMaxCounterexamples) {
        mine.counterexamples.push_back(c);
      }
    }
  }
}

std::string CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["failed"] = failed();
  auto& props = j["properties"] = nlohmann::ordered_json::array();
  for (const auto& p : properties) {
    nlohmann::ordered_json e;
    e["id"] = p.id;
    e["level"] = to_string(p.level);
    e["hits"] = p.hits;
    e["passes"] = p.passes;
    e["failures"] = p.failures;
    e["status"] = to_string(p.status());
    auto& cex = e["counterexamples"] = nlohmann::ordered_json::array();
    for (const auto& c : p.counterexamples) {
      cex.push_back({{"cycle", c.cycle}, {"where", c.where}, {"window", c.window}});
    }
    props.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string CheckReport::to_table() const {
  std::ostringstream os;
  os << "method: " << method << '\n';
  os << std::left << std::setw(6) << "id" << std::setw(9) << "level"
     << std::right << std::setw(12) << "hits" << std::setw(12) << "passes"
     << std::setw(10) << "failures" << "  status\n";
  for (const auto& p : properties) {
    os << std::left << std::setw(6) << p.id << std::setw(9)
       << to_string(p.level) << std::right << std::setw(12) << p.hits
       << std::setw(12) << p.passes << std::setw(10) << p.failures << "  "
       << to_string(p.status()) << '\n';
    for (const auto& c : p.counterexamples) {
      os << "  counterexample at cycle " << c.cycle << " (" << c.where << ")\n";
      for (const auto& line : c.window) os << "    " << line << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Switch monitors

namespace {

struct Sample {
  std::uint64_t cycle = 0;
  std::vector<ForwardSignals> fwd_in;
  std::vector<BackwardSignals> bwd_in;
  std::vector<PortState> state;  // after the edge
  std::vector<std::uint32_t> dir;
  std::vector<ForwardSignals> fwd_out;
  std::vector<BackwardSignals> bwd_out;
};

Sample sample_switch(const Switch& sw, std::uint64_t cycle,
                     std::span<const ForwardSignals> fwd_in,
                     std::span<const BackwardSignals> bwd_in) {
  Sample s;
  s.cycle = cycle;
  s.fwd_in.assign(fwd_in.begin(), fwd_in.end());
  s.bwd_in.assign(bwd_in.begin(), bwd_in.end());
  const std::uint32_t n = sw.ports();
  s.state.resize(n);
  s.dir.resize(n);
  for (std::uint32_t q = 0; q < n; ++q) {
    s.state[q] = sw.state(q);
    s.dir[q] = sw.direction(q);
  }
  s.fwd_out.assign(sw.forward_out().begin(), sw.forward_out().end());
  s.bwd_out.assign(sw.backward_out().begin(), sw.backward_out().end());
  return s;
}

std::string bits3(const ForwardSignals& f) {
  return {f.clm ? '1' : '0', f.act ? '1' : '0', f.dat ? '1' : '0'};
}

std::string format_sample(const Sample& s) {
  std::ostringstream os;
  os << "t=" << s.cycle;
  for (std::size_t q = 0; q < s.state.size(); ++q) {
    os << " | q" << q << ' ' << to_string(s.state[q]);
    if (s.state[q] == PortState::accept || s.state[q] == PortState::abort) {
      os << "->" << s.dir[q];
    }
    os << " in=" << bits3(s.fwd_in[q]) << " err_in=" << s.bwd_in[q].err
       << " out=" << bits3(s.fwd_out[q]) << " err_out=" << s.bwd_out[q].err;
  }
  return os.str();
}

class SwitchMonitor {
 public:
  SwitchMonitor(std::uint32_t ports, std::string where)
      : where_(std::move(where)),
        prev_state_(ports, PortState::wait),
        prev_dir_(ports, 0),
        prev_err_(ports, false) {}

  void observe(Sample s, CheckReport& report) {
    check_c1(s, report);
    check_c15(s, report);
    for (std::size_t r = 0; r < s.bwd_in.size(); ++r) {
      prev_err_[r] = s.bwd_in[r].err;
    }
    prev_state_ = s.state;
    prev_dir_ = s.dir;
    history_.push_back(std::move(s));
    if (history_.size() > kWindow) history_.pop_front();
  }

 private:
  struct Obligation {
    std::uint64_t due = 0;
    std::uint32_t output = 0;
  };

  void fail(PropertyResult& p, const Sample& s) {
    ++p.failures;
    if (p.counterexamples.size() >= kMaxCounterexamples) return;
    Counterexample c;
    c.cycle = s.cycle;
    c.where = where_;
    for (const auto& h : history_) c.window.push_back(format_sample(h));
    c.window.push_back(format_sample(s));
    p.counterexamples.push_back(std::move(c));
  }

  void check_c1(const Sample& s, CheckReport& report) {
    PropertyResult& p = report.get("C1", Level::core);
    std::vector<std::uint32_t> dirs;
    for (std::size_t q = 0; q < s.state.size(); ++q) {
      if (s.state[q] == PortState::accept) dirs.push_back(s.dir[q]);
    }
    if (dirs.size() < 2) return;
    ++p.hits;
    std::sort(dirs.begin(), dirs.end());
    if (std::adjacent_find(dirs.begin(), dirs.end()) == dirs.end()) {
      ++p.passes;
    } else {
      fail(p, s);
    }
  }

  void check_c15(const Sample& s, CheckReport& report) {
    PropertyResult& p = report.get("C15", Level::core);
    std::vector<Obligation> still;
    for (const auto& o : pending_) {
      if (o.due != s.cycle) {
        still.push_back(o);
        continue;
      }
      if (s.fwd_out[o.output].any()) {
        fail(p, s);
      } else {
        ++p.passes;
      }
    }
    pending_ = std::move(still);

    for (std::size_t q = 0; q < s.state.size(); ++q) {
      if (prev_state_[q] != PortState::accept) continue;
      const std::uint32_t r = prev_dir_[q];
      if (!s.bwd_in[r].err || prev_err_[r]) continue;
      ++p.hits;
      if (s.state[q] == PortState::abort && s.bwd_out[q].err) {
        pending_.push_back({s.cycle + 1, r});
      } else {
        fail(p, s);
      }
    }
  }

  std::string where_;
  std::vector<PortState> prev_state_;
  std::vector<std::uint32_t> prev_dir_;
  std::vector<bool> prev_err_;
  std::vector<Obligation> pending_;
  std::deque<Sample> history_;
};

// Legal upstream for one input port.
class PortDriver {
 public:
  ForwardSignals drive(Rng& rng, std::uint32_t port_bits,
                       BackwardSignals feedback) {
    if ((phase_ == Phase::header || phase_ == Phase::data) && feedback.err) {
      phase_ = Phase::draining;
      react_ = static_cast<std::uint32_t>(rng.below(4));
    }
    switch (phase_) {
      case Phase::idle:
        if (rng.chance(1, 3)) {
          phase_ = Phase::header;
          dir_ = static_cast<std::uint32_t>(rng.below(1u << port_bits));
          bits_left_ = port_bits;
        }
        return {};
      case Phase::header: {
        ForwardSignals s{true, false, false};
        if (feedback.cts && rng.chance(3, 4)) {
          --bits_left_;
          s.act = true;
          s.dat = ((dir_ >> bits_left_) & 1u) != 0;
          if (bits_left_ == 0) {
            phase_ = Phase::data;
            data_left_ = rng.below(24);
          }
        }
        return s;
      }
      case Phase::data: {
        if (data_left_ == 0) {
          phase_ = Phase::idle;
          return {};
        }
        ForwardSignals s{true, false, false};
        if (feedback.cts && rng.chance(3, 4)) {
          --data_left_;
          s.act = true;
          s.dat = rng.bit();
        }
        return s;
      }
      case Phase::draining: {
        // Upstream stages take a few cycles to see the error.
        if (react_ == 0) {
          phase_ = Phase::idle;
          return {};
        }
        --react_;
        ForwardSignals s{true, false, false};
        if (feedback.cts && rng.chance(1, 2)) {
          s.act = true;
          s.dat = rng.bit();
        }
        return s;
      }
    }
    return {};
  }

 private:
  enum class Phase { idle, header, data, draining };
  Phase phase_ = Phase::idle;
  std::uint32_t dir_ = 0;
  std::uint32_t bits_left_ = 0;
  std::uint64_t data_left_ = 0;
  std::uint32_t react_ = 0;
};

// Legal downstream for one output port: err is raised against a live claim
// and held until the claim drops.
class SinkDriver {
 public:
  BackwardSignals drive(Rng& rng, ForwardSignals seen) {
    if (err_ && !seen.clm) err_ = false;
    if (!err_ && seen.clm && rng.chance(1, 12)) err_ = true;
    return {err_, rng.chance(7, 8)};
  }

 private:
  bool err_ = false;
};

void init_core_properties(CheckReport& report) {
  report.get("C1", Level::core);
  report.get("C15", Level::core);
}

}  // namespace

CheckReport check_core(std::uint32_t switch_bits, const Stimulus& stimulus,
                       SwitchFault fault) {
  CheckReport report;
  report.method = kSimulationMethod;
  init_core_properties(report);

  Switch sw(switch_bits, fault);
  const std::uint32_t n = sw.ports();
  Rng rng(stimulus.seed);
  SwitchMonitor monitor(n, "switch p=" + std::to_string(switch_bits));
  std::vector<PortDriver> drivers(n);
  std::vector<SinkDriver> sinks(n);
  std::vector<ForwardSignals> fwd(n);
  std::vector<BackwardSignals> bwd(n);

  for (std::uint64_t cycle = 0; cycle < stimulus.cycles; ++cycle) {
    if (stimulus.legality == Legality::legal) {
      for (std::uint32_t q = 0; q < n; ++q) {
        fwd[q] = drivers[q].drive(rng, switch_bits, sw.backward_out()[q]);
      }
      for (std::uint32_t r = 0; r < n; ++r) {
        bwd[r] = sinks[r].drive(rng, sw.forward_out()[r]);
      }
    } else {
      for (std::uint32_t q = 0; q < n; ++q) {
        fwd[q] = {rng.chance(7, 8), rng.chance(3, 4), rng.bit()};
      }
      for (std::uint32_t r = 0; r < n; ++r) {
        bwd[r] = {rng.chance(1, 16), rng.chance(3, 4)};
      }
    }
    sw.step(fwd, bwd);
    monitor.observe(sample_switch(sw, cycle, fwd, bwd), report);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Network level

namespace {

std::vector<bool> tagged_payload(std::uint32_t source, std::uint32_t nodes) {
  std::vector<bool> bits{true};
  const auto width = static_cast<std::uint32_t>(std::bit_width(nodes - 1));
  for (std::uint32_t i = width; i-- > 0;) bits.push_back((source >> i) & 1u);
  bits.push_back(false);
  bits.push_back(true);
  return bits;
}

std::vector<std::uint32_t> plan_grouping(const StagePlan& plan) {
  std::vector<std::uint32_t> g;
  for (const auto& st : plan.stages) g.push_back(st.port_bits);
  return g;
}

RouteHeader random_header(Rng& rng, const Topology& topology) {
  std::vector<bool> bits(topology.header_bits());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = rng.bit();
  return RouteHeader(std::move(bits), plan_grouping(topology.plan()));
}

void record_route(CheckReport& report, const RouteCheck& rc,
                  std::uint32_t source, const RouteHeader& header,
                  std::uint32_t expected) {
  PropertyResult& p = report.get("N4", Level::network);
  if (!rc.precondition) return;
  ++p.hits;
  if (rc.correct) {
    ++p.passes;
    return;
  }
  ++p.failures;
  if (p.counterexamples.size() < kMaxCounterexamples) {
    Counterexample c;
    c.where = "source " + std::to_string(source) + " header " + header.grouped();
    c.window.push_back(
        "expected " + std::to_string(expected) + ", reached " +
        (rc.destination ? std::to_string(*rc.destination) : std::string("none")));
    p.counterexamples.push_back(std::move(c));
  }
}

}  // namespace

RouteCheck check_route(Network& network, std::uint32_t source,
                       const RouteHeader& header, bool target_err) {
  const Topology& topo = network.topology();
  const auto payload = tagged_payload(source, topo.nodes());
  const auto init = InitiatorModel::single_route(source, header, payload);
  std::vector<TargetModel> targets;
  if (target_err) {
    for (std::uint32_t q = 0; q < topo.nodes(); ++q) {
      TargetModel t;
      t.node = q;
      t.assert_err_at = 0;
      targets.push_back(t);
    }
  }
  RunOptions options;
  options.record_bit_events = false;
  options.max_cycles = 16ull * (topo.header_bits() + topo.stage_count()) + 64;
  const Trace trace = run(network, std::span(&init, 1), targets, options);
  const InitiatorReport& rep = trace.summary.initiators.front();

  RouteCheck rc;
  rc.destination = rep.destination;
  rc.precondition = rep.opened_cycle.has_value() && !rep.err_cycle &&
                    !rep.reject_stage && trace.summary.completed;
  if (rep.destination && trace.summary.targets[*rep.destination].err_asserted) {
    rc.precondition = false;
  }
  if (rc.precondition && rep.destination) {
    const std::uint32_t expected = decode_destination(topo, source, header);
    rc.correct = *rep.destination == expected &&
                 trace.summary.targets[expected].bits_from(source) == payload;
  }
  return rc;
}

CheckReport check_network(const Topology& topology, const Stimulus& stimulus,
                          const NetworkCampaign& campaign, SwitchFault fault) {
  CheckReport report;
  report.method = kSimulationMethod;
  report.get("N4", Level::network);
  init_core_properties(report);

  Rng rng(stimulus.seed);
  Network net(topology, fault);
  const std::uint32_t n = topology.nodes();

  if (campaign.pair_samples == 0) {
    if (topology.header_bits() > 20) {
      throw std::invalid_argument(
          "exhaustive pair enumeration needs at most 20 header bits");
    }
    const auto headers = all_headers(topology);
    for (std::uint32_t src = 0; src < n; ++src) {
      for (const auto& h : headers) {
        record_route(report, check_route(net, src, h), src, h,
                     decode_destination(topology, src, h));
      }
    }
  } else {
    for (std::uint64_t i = 0; i < campaign.pair_samples; ++i) {
      const auto src = static_cast<std::uint32_t>(rng.below(n));
      const RouteHeader h = random_header(rng, topology);
      record_route(report, check_route(net, src, h), src, h,
                   decode_destination(topology, src, h));
    }
  }

  const std::uint64_t extent = topology.header_bits() + topology.stage_count();
  for (std::uint64_t round = 0; round < campaign.contention_rounds; ++round) {
    std::vector<std::uint32_t> nodes(n);
    for (std::uint32_t q = 0; q < n; ++q) nodes[q] = q;
    rng.shuffle(nodes);
    const auto count = static_cast<std::uint32_t>(rng.between(2, n));
    std::vector<InitiatorModel> inits;
    for (std::uint32_t i = 0; i < count; ++i) {
      std::vector<bool> payload(rng.below(17));
      for (std::size_t b = 0; b < payload.size(); ++b) payload[b] = rng.bit();
      inits.push_back(InitiatorModel::single_route(
          nodes[i], random_header(rng, topology), payload, rng.below(5)));
    }
    std::vector<TargetModel> targets;
    for (std::uint32_t q = 0; q < n; ++q) {
      TargetModel t;
      t.node = q;
      t.consume_rate = {1, static_cast<std::uint32_t>(rng.between(1, 3))};
      if (rng.chance(1, 3)) t.assert_err_at = rng.below(extent + 10);
      targets.push_back(t);
    }

    std::vector<std::vector<SwitchMonitor>> monitors(topology.stage_count());
    for (std::uint32_t t = 0; t < topology.stage_count(); ++t) {
      for (std::uint32_t w = 0; w < topology.stage(t).switch_count; ++w) {
        monitors[t].emplace_back(topology.stage(t).ports(),
                                 "stage " + std::to_string(t) + " switch " +
                                     std::to_string(w) + ", round " +
                                     std::to_string(round));
      }
    }
    RunOptions options;
    options.record_bit_events = false;
    if (stimulus.cycles > 0) options.max_cycles = stimulus.cycles;
    options.observer = [&](const Network& nw) {
      const std::uint64_t cycle = nw.cycle() - 1;
      for (std::uint32_t t = 0; t < topology.stage_count(); ++t) {
        const std::uint32_t ports = topology.stage(t).ports();
        for (std::uint32_t w = 0; w < topology.stage(t).switch_count; ++w) {
          const std::uint32_t base = topology.port_base(t, w);
          monitors[t][w].observe(
              sample_switch(nw.switch_at(t, w), cycle,
                            nw.stage_forward_in(t).subspan(base, ports),
                            nw.stage_backward_in(t).subspan(base, ports)),
              report);
        }
      }
    };
    run(net, inits, targets, options);
  }
  return report;
}

CheckReport exhaustive_small(const Topology& topology) {
  const std::uint32_t n = topology.nodes();
  if (n > 8) {
    throw std::invalid_argument(
        "exhaustive mode supports at most 8 nodes (" + std::to_string(n) +
        " requested); use randomized sampling for larger networks");
  }
  CheckReport report;
  report.method = kExhaustiveMethod;
  report.get("R1", Level::network);
  report.get("N4", Level::network);

  std::vector<std::uint32_t> mapping(n);
  for (std::uint32_t q = 0; q < n; ++q) mapping[q] = q;
  do {
    const Permutation perm(mapping);
    bool ok = true;
    std::string detail;
    try {
      const RouteSet routes = route_permutation(topology, perm);
      const RouteSetReport rr = verify_routeset(topology, routes);
      PropertyResult& n4 = report.get("N4", Level::network);
      for (const auto& o : rr.routes) {
        if (o.opened && !o.rejected) {
          ++n4.hits;
          if (o.correct()) {
            ++n4.passes;
          } else {
            ++n4.failures;
          }
        }
        if (!o.correct()) {
          ok = false;
          detail = "route from " + std::to_string(o.source) + " failed";
        }
      }
    } catch (const RoutingError& e) {
      ok = false;
      detail = e.what();
    }
    PropertyResult& r = report.get("R1", Level::network);
    ++r.hits;
    if (ok) {
      ++r.passes;
    } else {
      ++r.failures;
      if (r.counterexamples.size() < kMaxCounterexamples) {
        Counterexample c;
        std::string text;
        for (auto d : mapping) text += std::to_string(d) + ' ';
        c.where = "permutation " + text;
        c.window.push_back(detail);
        r.counterexamples.push_back(std::move(c));
      }
    }
  } while (std::next_permutation(mapping.begin(), mapping.end()));
  return report;
}

// ---------------------------------------------------------------------------
// Coverage

const CoverageRow* CoverageSummary::find(std::string_view id) const {
  for (const auto& r : rows) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::string CoverageSummary::to_table() const {
  std::ostringstream os;
  os << std::left << std::setw(6) << "id" << std::setw(9) << "level"
     << std::setw(32) << "checked by" << std::right << std::setw(12) << "hits"
     << "  status\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(6) << r.id << std::setw(9)
       << to_string(r.level) << std::setw(32) << r.checked_by << std::right
       << std::setw(12) << r.hits << "  " << r.status << '\n';
  }
  return os.str();
}

CoverageSummary coverage_report(std::span<const CheckReport> reports) {
  CheckReport merged;
  for (const auto& r : reports) merged.merge(r);
  const bool network_level =
      std::any_of(merged.properties.begin(), merged.properties.end(),
                  [](const PropertyResult& p) { return p.level == Level::network; });

  CoverageSummary summary;
  for (const auto& spec : property_catalog()) {
    CoverageRow row;
    row.id = spec.id;
    row.level = spec.level;
    row.checked_by = spec.checked_by;
    if (spec.id == "S4") {
      row.status = network_level ? "static (tdm)" : "uncovered";
    } else if (const PropertyResult* p = merged.find(spec.id)) {
      row.hits = p->hits;
      switch (p->status()) {
        case Status::fail:
          row.status = "FAIL";
          break;
        case Status::vacuous:
          row.status = "vacuous";
          break;
        default:
          row.status = "covered";
          break;
      }
    } else {
      row.status = "uncovered";
    }
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

// ---------------------------------------------------------------------------
// Campaigns

CheckReport run_campaign(const CampaignConfig& config, SwitchFault fault) {
  if (config.seeds.empty()) {
    throw std::invalid_argument("campaign needs at least one seed");
  }
  std::optional<Topology> topology;
  if (config.level == Level::network) {
    topology = build_topology({config.nodes, config.switch_bits});
    if (config.exhaustive && config.nodes > 8) {
      // Fail before spending time on the sampled part.
      exhaustive_small(*topology);
    }
  } else if (config.level != Level::core) {
    throw std::invalid_argument("campaign level must be core or network");
  }

  std::vector<std::future<CheckReport>> jobs;
  for (const auto seed : config.seeds) {
    const Stimulus stimulus{seed, config.cycles, config.legality};
    if (config.level == Level::core) {
      jobs.push_back(std::async(std::launch::async, [=] {
        return check_core(config.switch_bits, stimulus, fault);
      }));
    } else {
      jobs.push_back(std::async(std::launch::async, [&, stimulus] {
        return check_network(*topology, stimulus, config.network, fault);
      }));
    }
  }
  CheckReport merged;
  for (auto& job : jobs) merged.merge(job.get());
  if (config.level == Level::network && config.exhaustive) {
    merged.merge(exhaustive_small(*topology));
  }
  return merged;
}

}  // namespace mcenoc
