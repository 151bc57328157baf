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

// mcenoc: command-line front end for topology construction, routing,
// simulation, TDM analytics and verification campaigns.
//
// Exit codes: 0 success, 1 property or validation failure, 2 usage or
// input error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcenoc/io.hpp"
#include "mcenoc/netsim.hpp"
#include "mcenoc/propcheck.hpp"
#include "mcenoc/routing.hpp"
#include "mcenoc/tdm.hpp"
#include "mcenoc/topology.hpp"

namespace {

using namespace mcenoc;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MCENOC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw UsageError(std::string("MCENOC_SEED is not an integer: ") + env);
    }
  }
  return 1;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string plan_summary(const Topology& t) {
  const auto& stages = t.plan().stages;
  bool uniform = true;
  for (const auto& st : stages) uniform &= st.port_bits == stages[0].port_bits;
  std::ostringstream os;
  if (uniform) {
    os << stages.size() << " stages of " << stages[0].ports() << "-port switches";
  } else {
    os << stages.size() << " stages: ";
    for (std::size_t i = 0; i < stages.size(); ++i) {
      if (i) os << ", ";
      os << stages[i].ports() << "-port ×" << stages[i].switch_count;
    }
  }
  os << "; P=" << t.header_bits();
  return os.str();
}

Topology topology_from(const std::string& file, std::uint32_t nodes,
                       std::uint32_t switch_bits) {
  if (!file.empty()) return io::parse_topology(io::read_file(file));
  if (nodes == 0) throw UsageError("give --topology or --nodes");
  return build_topology({nodes, switch_bits});
}

// ---------------------------------------------------------------------------

struct TopoArgs {
  std::uint32_t nodes = 0;
  std::uint32_t switch_bits = 1;
  std::string out;
  bool validate = false;
};

int cmd_topo(const TopoArgs& a) {
  const Topology t = build_topology({a.nodes, a.switch_bits});
  std::cout << plan_summary(t) << '\n';
  int rc = kOk;
  if (a.validate) {
    const ValidationReport v = validate(t);
    for (const auto& e : v.entries) {
      std::cout << (e.passed ? "  ok    " : "  FAIL  ") << e.check << ": "
                << e.detail << '\n';
    }
    if (!v.ok()) rc = kFailed;
  }
  if (!a.out.empty()) write_output(a.out, io::topology_json(t));
  return rc;
}

struct DrawArgs {
  std::string topology;
  std::uint32_t nodes = 0;
  std::uint32_t switch_bits = 1;
  std::string format = "dot";
  std::string out;
};

int cmd_draw(const DrawArgs& a) {
  const Topology t = topology_from(a.topology, a.nodes, a.switch_bits);
  write_output(a.out, emit_diagram(t, parse_diagram_format(a.format)));
  return kOk;
}

struct RouteArgs {
  std::string topology;
  std::string perm;
  std::string out;
};

int cmd_route(const RouteArgs& a) {
  const Topology t = io::parse_topology(io::read_file(a.topology));
  const Permutation p = io::parse_permutation(io::read_file(a.perm));
  if (p.size() != t.nodes()) {
    throw UsageError("permutation has " + std::to_string(p.size()) +
                     " entries but the network has " +
                     std::to_string(t.nodes()) + " nodes");
  }
  const RouteSet routes = route_permutation(t, p);
  const RouteSetReport report = verify_routeset(t, routes);
  write_output(a.out, io::routeset_json(routes));
  std::ostream& msg = a.out.empty() ? std::cerr : std::cout;
  if (report.all_correct()) {
    msg << "verified: " << routes.size() << " routes conflict-free in "
        << report.cycles << " cycles\n";
    return kOk;
  }
  msg << "verification FAILED: " << report.opened() << " of " << routes.size()
      << " routes opened, " << report.rejected() << " rejected\n";
  return kFailed;
}

struct SimArgs {
  std::string topology;
  std::string scenario;
  std::string trace;
  std::string full_dump;
  std::optional<std::uint64_t> seed;
};

int cmd_sim(const SimArgs& a) {
  const Topology t = io::parse_topology(io::read_file(a.topology));
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();
  const io::Scenario sc = io::parse_scenario(io::read_file(a.scenario), t, seed);

  Network net(t);
  RunOptions options;
  options.record_signals = !a.full_dump.empty();
  if (sc.max_cycles) options.max_cycles = *sc.max_cycles;
  const Trace trace = run(net, sc.initiators, sc.targets, options);

  if (!a.trace.empty()) write_output(a.trace, trace.to_text());
  if (!a.full_dump.empty()) {
    std::ofstream out(a.full_dump, std::ios::binary);
    if (!out) throw UsageError("cannot write " + a.full_dump);
    write_vcd(out, t, trace);
  }

  const std::uint64_t p = t.header_bits();
  const std::uint64_t s = t.stage_count();
  std::optional<std::uint64_t> max_setup;
  std::optional<std::uint64_t> max_err;
  for (const auto& r : trace.summary.initiators) {
    if (auto l = r.setup_latency()) max_setup = std::max(max_setup.value_or(0), *l);
    if (r.reject_stage) {
      if (auto l = r.error_latency()) max_err = std::max(max_err.value_or(0), *l);
    }
  }
  std::uint64_t delivered = 0;
  std::uint64_t lost = 0;
  for (const auto& tr : trace.summary.targets) {
    delivered += tr.delivered.size();
    lost += tr.lost;
  }

  std::cout << "cycles: " << trace.summary.cycles
            << (trace.summary.completed ? "" : " (timeout)") << '\n';
  std::cout << "initiators: " << sc.initiators.size() << '\n';
  std::cout << "routes opened: " << trace.count(EventKind::route_opened)
            << ", rejected: " << trace.count(EventKind::route_rejected)
            << ", aborted: " << trace.count(EventKind::route_aborted) << '\n';
  bool within = true;
  if (max_setup) {
    within &= *max_setup <= p + s;
    std::cout << "max setup latency: " << *max_setup << " cycles (bound P+S = "
              << p + s << ")\n";
  }
  if (max_err) {
    within &= *max_err <= 2 * p + s;
    std::cout << "max error latency: " << *max_err
              << " cycles (bound 2P+S = " << 2 * p + s << ")\n";
  }
  std::cout << "bits delivered: " << delivered << ", lost: " << lost << '\n';
  return within && trace.summary.completed ? kOk : kFailed;
}

struct TdmModelArgs {
  std::vector<std::uint32_t> nodes{128};
  std::uint32_t switch_bits = 1;
  std::vector<double> eff{0.99};
  double freq = 364e6;
  std::uint32_t width = 1;
  bool bandwidth = false;
};

int cmd_tdm_model(const TdmModelArgs& a) {
  if (a.bandwidth) {
    std::cout << "N,width,f_Hz,bisection_bits_per_s,bisection_Gbit_s\n";
    for (auto n : a.nodes) {
      const BandwidthReport b = bisection_bandwidth(a.freq, a.width, n);
      char line[160];
      std::snprintf(line, sizeof line, "%u,%u,%.6g,%.6g,%.3f\n", n, a.width,
                    a.freq, b.bisection_bits_per_s,
                    b.bisection_bits_per_s / 1e9);
      std::cout << line;
    }
    return kOk;
  }
  std::vector<TimingModel> models;
  for (auto n : a.nodes) {
    for (auto e : a.eff) models.push_back({a.freq, e, n, a.switch_bits});
  }
  std::cout << model_csv(models);
  return kOk;
}

struct TdmScheduleArgs {
  std::string kind = "all-to-all";
  std::uint32_t nodes = 8;
  std::uint32_t switch_bits = 1;
  std::uint32_t dims = 2;
  std::uint32_t source = 0;
  std::uint64_t cycles = 0;
  double eff = 0.99;
  std::string input;
  std::string out;
  bool validate = false;
};

int cmd_tdm_schedule(const TdmScheduleArgs& a) {
  const Topology t = build_topology({a.nodes, a.switch_bits});
  std::uint64_t cycles = a.cycles;
  if (cycles == 0) {
    cycles = static_cast<std::uint64_t>(
        std::ceil(tdm_cycle_time({364e6, a.eff, a.nodes, a.switch_bits}).slot_cycles));
  }
  TdmSchedule s;
  if (!a.input.empty()) {
    s = io::parse_schedule(io::read_file(a.input));
  } else if (a.kind == "all-to-all") {
    s = all_to_all_schedule(a.nodes, cycles);
  } else if (a.kind == "mesh") {
    s = mesh_emulation_schedule(a.nodes, a.dims, cycles);
  } else if (a.kind == "broadcast") {
    s = broadcast_schedule(a.nodes, a.source, cycles);
  } else {
    throw UsageError("unknown schedule kind " + a.kind);
  }
  if (a.input.empty()) write_output(a.out, io::schedule_json(s));
  std::ostream& msg = a.out.empty() && a.input.empty() ? std::cerr : std::cout;
  msg << s.slots.size() << " slots\n";
  if (!a.validate) return kOk;
  const ScheduleReport r = validate_schedule(t, s);
  for (const auto& i : r.issues) {
    msg << "slot " << i.slot << " [" << to_string(i.kind) << "] " << i.message
        << '\n';
  }
  msg << (r.ok() ? "schedule valid: " : "schedule INVALID: ") << r.slots_checked
      << " slots, " << r.routes_verified << " routes simulated\n";
  return r.ok() ? kOk : kFailed;
}

struct VerifyArgs {
  std::string config;
  std::string level = "core";
  std::uint32_t nodes = 8;
  std::uint32_t switch_bits = 1;
  std::uint64_t cycles = 100000;
  std::vector<std::uint64_t> seeds;
  bool exhaustive = false;
  bool unconstrained = false;
  std::uint64_t samples = 1000;
  std::uint64_t rounds = 100;
  std::string fault = "none";
  std::string json;
};

SwitchFault parse_fault(const std::string& name) {
  for (auto f : {SwitchFault::none, SwitchFault::forward_after_err,
                 SwitchFault::ignore_owner, SwitchFault::flip_direction}) {
    if (to_string(f) == name) return f;
  }
  throw UsageError("unknown fault " + name);
}

int cmd_verify(const VerifyArgs& a) {
  CampaignConfig c;
  if (!a.config.empty()) {
    c = io::parse_campaign(io::read_file(a.config));
  } else {
    if (a.level == "core") {
      c.level = Level::core;
    } else if (a.level == "network") {
      c.level = Level::network;
    } else {
      throw UsageError("--level must be core or network");
    }
    c.nodes = a.nodes;
    c.switch_bits = a.switch_bits;
    c.cycles = a.cycles;
    c.seeds = a.seeds.empty() ? std::vector<std::uint64_t>{default_seed()} : a.seeds;
    c.exhaustive = a.exhaustive;
    c.legality = a.unconstrained ? Legality::unconstrained : Legality::legal;
    c.network.pair_samples = a.samples;
    c.network.contention_rounds = a.rounds;
  }
  if (c.exhaustive && (c.level != Level::network || c.nodes > 8)) {
    throw UsageError("--exhaustive needs --level network and at most 8 nodes; "
                     "use --samples for randomized checking of larger networks");
  }
  const CheckReport report = run_campaign(c, parse_fault(a.fault));
  std::cout << report.to_table() << '\n';
  std::cout << coverage_report(std::span(&report, 1)).to_table();
  if (!a.json.empty()) write_output(a.json, report.to_json());
  return report.failed() ? kFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mcenoc: circuit-switched network-on-chip toolkit"};
  app.require_subcommand(1);

  TopoArgs topo;
  auto* topo_cmd = app.add_subcommand("topo", "Plan stages and emit topology JSON");
  topo_cmd->add_option("--nodes,-n", topo.nodes, "Node count (power of two)")->required();
  topo_cmd->add_option("--switch-bits,-p", topo.switch_bits, "Bits per switch (degree 2^p)");
  topo_cmd->add_option("--out,-o", topo.out, "Topology JSON path");
  topo_cmd->add_flag("--validate", topo.validate, "Run wiring validation");

  DrawArgs draw;
  auto* draw_cmd = app.add_subcommand("draw", "Emit a DOT or TikZ diagram");
  draw_cmd->add_option("--topology,-t", draw.topology, "Topology JSON");
  draw_cmd->add_option("--nodes,-n", draw.nodes, "Node count");
  draw_cmd->add_option("--switch-bits,-p", draw.switch_bits, "Bits per switch");
  draw_cmd->add_option("--format,-f", draw.format, "dot or tikz");
  draw_cmd->add_option("--out,-o", draw.out, "Output path");

  RouteArgs route;
  auto* route_cmd = app.add_subcommand("route", "Compute and verify headers for a permutation");
  route_cmd->add_option("--topology,-t", route.topology, "Topology JSON")->required();
  route_cmd->add_option("--perm", route.perm, "Permutation JSON")->required();
  route_cmd->add_option("--out,-o", route.out, "Routeset JSON path");

  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("sim", "Simulate a scenario cycle by cycle");
  sim_cmd->add_option("--topology,-t", sim.topology, "Topology JSON")->required();
  sim_cmd->add_option("--scenario,-s", sim.scenario, "Scenario JSON")->required();
  sim_cmd->add_option("--trace", sim.trace, "Event trace path");
  sim_cmd->add_option("--full-dump", sim.full_dump, "VCD dump path");
  sim_cmd->add_option("--seed", sim.seed, "Seed for generated payloads");

  auto* tdm_cmd = app.add_subcommand("tdm", "TDM timing model and schedules");
  tdm_cmd->require_subcommand(1);
  TdmModelArgs model;
  auto* model_cmd = tdm_cmd->add_subcommand("model", "Slot and cycle times, or bandwidth");
  model_cmd->add_option("--nodes,-n", model.nodes, "Node counts");
  model_cmd->add_option("--switch-bits,-p", model.switch_bits, "Bits per switch");
  model_cmd->add_option("--eff", model.eff, "Payload efficiencies in (0, 1)");
  model_cmd->add_option("--freq", model.freq, "Clock frequency in Hz");
  model_cmd->add_option("--width", model.width, "Link width in bits");
  model_cmd->add_flag("--bandwidth", model.bandwidth, "Report bisection bandwidth");
  TdmScheduleArgs sched;
  auto* sched_cmd = tdm_cmd->add_subcommand("schedule", "Generate or validate a schedule");
  sched_cmd->add_option("--kind", sched.kind, "all-to-all, mesh or broadcast");
  sched_cmd->add_option("--nodes,-n", sched.nodes, "Node count");
  sched_cmd->add_option("--switch-bits,-p", sched.switch_bits, "Bits per switch");
  sched_cmd->add_option("--dims", sched.dims, "Mesh dimensions");
  sched_cmd->add_option("--source", sched.source, "Broadcast source");
  sched_cmd->add_option("--cycles", sched.cycles, "Slot length (default from --eff)");
  sched_cmd->add_option("--eff", sched.eff, "Payload efficiency for the default slot length");
  sched_cmd->add_option("--input,-i", sched.input, "Schedule JSON to validate");
  sched_cmd->add_option("--out,-o", sched.out, "Schedule JSON path");
  sched_cmd->add_flag("--validate", sched.validate, "Simulate every slot");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run property campaigns");
  verify_cmd->add_option("--config,-c", verify.config, "Campaign JSON");
  verify_cmd->add_option("--level", verify.level, "core or network");
  verify_cmd->add_option("--nodes,-n", verify.nodes, "Node count (network level)");
  verify_cmd->add_option("--switch-bits,-p", verify.switch_bits, "Bits per switch");
  verify_cmd->add_option("--cycles", verify.cycles, "Cycles per seed");
  verify_cmd->add_option("--seeds,--seed", verify.seeds, "Seeds (default MCENOC_SEED or 1)");
  verify_cmd->add_flag("--exhaustive", verify.exhaustive, "Sweep every permutation (N <= 8)");
  verify_cmd->add_flag("--unconstrained", verify.unconstrained, "Protocol-agnostic stimulus");
  verify_cmd->add_option("--samples", verify.samples, "Route samples, 0 for all pairs");
  verify_cmd->add_option("--rounds", verify.rounds, "Contention rounds per seed");
  verify_cmd->add_option("--fault", verify.fault, "Inject a switch mutant");
  verify_cmd->add_option("--json", verify.json, "Machine-readable report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*topo_cmd) return cmd_topo(topo);
    if (*draw_cmd) return cmd_draw(draw);
    if (*route_cmd) return cmd_route(route);
    if (*sim_cmd) return cmd_sim(sim);
    if (*model_cmd) return cmd_tdm_model(model);
    if (*sched_cmd) return cmd_tdm_schedule(sched);
    if (*verify_cmd) return cmd_verify(verify);
  } catch (const RoutingError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
