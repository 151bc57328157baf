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

// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "mcenoc/netsim.hpp"
#include "mcenoc/propcheck.hpp"
#include "mcenoc/rng.hpp"
#include "mcenoc/routing.hpp"
#include "mcenoc/tdm.hpp"
#include "mcenoc/topology.hpp"

using namespace mcenoc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) {
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

bool within(double value, double target, double rel) {
  return std::fabs(value - target) <= rel * std::fabs(target);
}

// Rounds to `digits` significant figures.
double sig(double v, int digits) {
  const double scale = std::pow(10.0, digits - 1 - std::floor(std::log10(std::fabs(v))));
  return std::round(v * scale) / scale;
}

std::vector<bool> random_bits(Rng& rng, std::size_t n) {
  std::vector<bool> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.bit();
  return v;
}

Permutation random_permutation(Rng& rng, std::uint32_t n) {
  std::vector<std::uint32_t> m(n);
  std::iota(m.begin(), m.end(), 0u);
  rng.shuffle(m);
  return Permutation(std::move(m));
}

RouteHeader random_header(Rng& rng, const Topology& t) {
  return regroup_header(random_bits(rng, t.header_bits()), t.plan());
}

// 1. Bisection bandwidth.
Outcome bandwidth() {
  Outcome o;
  const double b8 = bisection_bandwidth(364e6, 1, 8).bisection_bits_per_s;
  const double b32 = bisection_bandwidth(364e6, 1, 32).bisection_bits_per_s;
  o.require(b8 == 364e6 * 1 * 8, "8-port product");
  o.require(b32 == 364e6 * 1 * 32, "32-port product");
  o.require(sig(b8 / 1e9, 2) == 2.9, "8-port rounds to 2.9 Gbit/s");
  o.require(sig(b32 / 1e9, 3) == 11.6, "32-port rounds to 11.6 Gbit/s");
  o.note(fmt("%.3f", b8 / 1e9) + " and " + fmt("%.3f", b32 / 1e9) + " Gbit/s");
  return o;
}

// 2. TDM cycle model.
Outcome tdm_model() {
  Outcome o;
  const auto a = tdm_cycle_time({364e6, 0.99, 128, 1});
  const auto b = tdm_cycle_time({364e6, 0.99, 65536, 1});
  o.require(within(a.cycle_seconds, 914e-6, 0.005), "914 us cycle at 128 nodes");
  o.require(within(b.slot_seconds, 17.03e-6, 0.005), "17.03 us slot at 65536 nodes");
  o.require(within(b.cycle_seconds, 1.12, 0.005), "1.12 s cycle at 65536 nodes");
  o.note("cycle(128) " + fmt("%.1f", a.cycle_seconds * 1e6) + " us, slot(65536) " +
         fmt("%.2f", b.slot_seconds * 1e6) + " us, cycle(65536) " +
         fmt("%.3f", b.cycle_seconds) + " s");
  return o;
}

// 3. Stage planning.
Outcome stage_planning() {
  Outcome o;
  const auto p32 = plan_stages(32, 2);
  std::vector<std::uint32_t> bits;
  std::vector<std::uint32_t> counts;
  for (const auto& s : p32.stages) {
    bits.push_back(s.port_bits);
    counts.push_back(s.switch_count);
  }
  o.require(bits == std::vector<std::uint32_t>{2, 2, 1, 2, 2}, "32-node stage degrees");
  o.require(counts == std::vector<std::uint32_t>{8, 8, 16, 8, 8}, "32-node switch counts");
  o.require(p32.total_header_bits == 9, "P = 9");
  std::vector<std::uint32_t> bits8;
  for (const auto& s : plan_stages(8, 2).stages) bits8.push_back(s.port_bits);
  o.require(bits8 == std::vector<std::uint32_t>{2, 1, 2}, "8-node plan [2,1,2]");
  o.note("(32,B=4) [2,2,1,2,2] P=9; (8,B=4) [2,1,2]");
  return o;
}

// 4. Setup and error latency bounds.
Outcome latency_bounds() {
  Outcome o;
  Rng rng(4004);
  std::uint64_t routes = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t worst_setup_margin = UINT64_MAX;
  std::uint64_t worst_err_margin = UINT64_MAX;
  for (std::uint32_t n : {8u, 16u, 32u}) {
    for (std::uint32_t p : {1u, 2u}) {
      const Topology t = build_topology({n, p});
      Network net(t);
      const std::uint64_t P = t.header_bits();
      const std::uint64_t S = t.stage_count();
      for (int i = 0; i < 200; ++i) {
        const auto src = static_cast<std::uint32_t>(rng.below(n));
        const auto m = measure_setup_latency(net, src, random_header(rng, t));
        ++routes;
        o.require(m.opened, "idle-network route opened");
        if (!m.opened) continue;
        o.require(m.cycles <= P + S, "setup <= P+S");
        worst_setup_margin = std::min(worst_setup_margin, P + S - std::min(m.cycles, P + S));
      }
      for (int i = 0; i < 200; ++i) {
        const auto c = engineer_conflict(t, S - 1, rng.next());
        if (!c) {
          o.require(false, "engineered final-stage conflict");
          continue;
        }
        const std::vector<bool> payload(2 * P + S + 4, true);
        const InitiatorModel sc[2] = {
            InitiatorModel::single_route(c->source_a, c->header_a, payload),
            InitiatorModel::single_route(c->source_b, c->header_b, payload,
                                         rng.below(3))};
        const auto e = measure_error_latency(net, sc);
        ++conflicts;
        o.require(e.stage == S - 1, "conflict at the final stage");
        o.require(e.cycles <= 2 * P + S, "err latency <= 2P+S");
        worst_err_margin =
            std::min(worst_err_margin, 2 * P + S - std::min(e.cycles, 2 * P + S));
      }
    }
  }
  o.require(routes >= 1000 && conflicts >= 1000, "sample counts");
  o.note(std::to_string(routes) + " routes, " + std::to_string(conflicts) +
         " final-stage conflicts; min slack " + std::to_string(worst_setup_margin) +
         " (setup), " + std::to_string(worst_err_margin) + " (err) cycles");
  return o;
}

// 5. Rearrangeability.
Outcome rearrangeability() {
  Outcome o;
  std::uint64_t exhaustive = 0;
  for (auto spec : {NetworkSpec{4, 1}, NetworkSpec{8, 1}, NetworkSpec{8, 2}}) {
    const CheckReport r = exhaustive_small(build_topology(spec));
    const PropertyResult* r1 = r.find("R1");
    const std::uint64_t expect = spec.nodes == 4 ? 24 : 40320;
    o.require(r1->passes == expect && r1->failures == 0,
              std::to_string(spec.nodes) + "-node exhaustive sweep");
    o.require(r.find("N4")->failures == 0, "endpoints in exhaustive sweep");
    exhaustive += r1->passes;
  }
  Rng rng(5005);
  std::uint64_t sampled = 0;
  for (std::uint32_t p : {1u, 2u}) {
    const Topology t = build_topology({32, p});
    for (int i = 0; i < 10000; ++i) {
      const Permutation perm = random_permutation(rng, 32);
      bool ok = false;
      try {
        const RouteSet rs = route_permutation(t, perm);
        ok = verify_routeset(t, rs).all_correct();
        for (const auto& r : rs.routes) ok &= r.destination == perm[r.source];
      } catch (const RoutingError&) {
        ok = false;
      }
      o.require(ok, "32-node permutation");
      if (!ok) break;
      ++sampled;
    }
  }
  o.note(std::to_string(exhaustive) + " exhaustive (4: 24, 8: 40320 for B=2 and B=4), " +
         std::to_string(sampled) + " random at 32 nodes (B=2 and B=4)");
  return o;
}

// 6. Network equivalence of the 2-port and 4-port 8-node variants.
Outcome equivalence() {
  Outcome o;
  const Topology two = build_topology({8, 1});
  const Topology four = build_topology({8, 2});
  Network n2(two);
  Network n4(four);
  std::uint64_t agree = 0;
  for (std::uint32_t src = 0; src < 8; ++src) {
    for (const auto& h : all_headers(two)) {
      const auto a = measure_setup_latency(n2, src, h);
      const auto b = measure_setup_latency(n4, src, regroup_header(h.bits(), four.plan()));
      if (a.opened && b.opened && a.destination == b.destination) ++agree;
    }
  }
  o.require(agree == 256, "identical destinations for 8 x 32 headers");
  const auto v2 = measure_setup_latency(n2, 0, RouteHeader::parse("10001"));
  const auto v4 = measure_setup_latency(n4, 0, RouteHeader::parse("10-0-01"));
  o.require(v2.destination == 1u, "10001 from node 0 reaches node 1 (2-port)");
  o.require(v4.destination == 1u, "10-0-01 from node 0 reaches node 1 (4-port)");
  o.note(std::to_string(agree) + "/256 agree; 10001 and 10-0-01 from 0 reach node 1");
  return o;
}

// 7. Property campaign with mutants.
Outcome property_campaign() {
  Outcome o;
  for (std::uint32_t p = 1; p <= 3; ++p) {
    CampaignConfig c;
    c.switch_bits = p;
    c.seeds = {71, 72, 73, 74};
    c.cycles = 250000;
    const CheckReport r = run_campaign(c);
    for (const char* id : {"C1", "C15"}) {
      const PropertyResult* pr = r.find(id);
      o.require(pr->failures == 0 && pr->hits > 0,
                std::string(id) + " at p=" + std::to_string(p));
    }
    o.note("p=" + std::to_string(p) + ": C1 " + std::to_string(r.find("C1")->hits) +
           " hits, C15 " + std::to_string(r.find("C15")->hits) + " hits");
  }
  for (std::uint32_t p : {1u, 2u}) {
    const Topology t = build_topology({8, p});
    const CheckReport r = check_network(t, {77, 0}, {0, 200});
    const PropertyResult* n4 = r.find("N4");
    o.require(n4->failures == 0 && n4->hits == 256,
              "N4 exhaustive at 8 nodes, p=" + std::to_string(p));
    o.require(!r.failed(), "embedded switch monitors");
  }
  const Stimulus mut{78, 200000, Legality::legal};
  o.require(check_core(1, mut, SwitchFault::forward_after_err).find("C15")->failures > 0,
            "C15 kills forward_after_err");
  o.require(check_core(1, mut, SwitchFault::ignore_owner).find("C1")->failures > 0,
            "C1 kills ignore_owner");
  o.require(check_network(build_topology({8, 1}), {78, 0}, {0, 0},
                          SwitchFault::flip_direction)
                    .find("N4")
                    ->failures > 0,
            "N4 kills flip_direction");
  o.note("N4 256/256 at 8 nodes; all three mutants killed");
  return o;
}

// 8. Flow control.
Outcome flow_control() {
  Outcome o;
  Rng rng(8008);
  std::uint64_t scenarios = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint32_t n = i % 2 ? 16 : 8;
    const Topology t = build_topology({n, static_cast<std::uint32_t>(rng.between(1, 2))});
    Network net(t);
    const std::uint64_t S = t.stage_count();
    const auto src = static_cast<std::uint32_t>(rng.below(n));
    const RouteHeader h = random_header(rng, t);
    const auto init = InitiatorModel::single_route(
        src, h, random_bits(rng, rng.between(1, 200)), rng.below(4));
    TargetModel tgt;
    tgt.node = decode_destination(t, src, h);
    tgt.fifo_capacity = 2 * S;
    tgt.cts_threshold = 2 * S;
    const auto den = static_cast<std::uint32_t>(rng.between(1, 16));
    tgt.consume_rate = {static_cast<std::uint32_t>(rng.between(1, den)), den};
    const FlowCheck fc = check_flow(net, init, tgt);
    o.require(fc.no_loss, "lossless with 2S buffer");
    if (!fc.no_loss) break;
    ++scenarios;
  }
  // Below the bound: one bit short, target stalled.
  std::uint64_t lost = 0;
  for (std::uint32_t n : {8u, 16u, 32u}) {
    const Topology t = build_topology({n, 1});
    Network net(t);
    const std::uint64_t S = t.stage_count();
    const RouteHeader h = random_header(rng, t);
    const auto init = InitiatorModel::single_route(0, h, random_bits(rng, 100));
    TargetModel tgt;
    tgt.node = decode_destination(t, 0, h);
    tgt.fifo_capacity = 2 * S - 1;
    tgt.cts_threshold = 2 * S - 1;
    tgt.consume_rate = {0, 1};
    lost += check_flow(net, init, tgt, 5000).lost;
  }
  o.require(lost > 0, "loss with a buffer below 2S");
  o.note(std::to_string(scenarios) + " lossless scenarios; " + std::to_string(lost) +
         " bits lost with 2S-1 buffers");
  return o;
}

// 9. Non-interference.
Outcome non_interference() {
  Outcome o;
  Rng rng(9009);
  std::uint64_t pairs = 0;
  std::uint64_t compared = 0;
  RunOptions opts;
  opts.record_signals = true;
  opts.record_bit_events = false;
  for (std::uint32_t p : {1u, 2u}) {
    const Topology t = build_topology({16, p});
    Network net(t);
    for (int i = 0; i < 500; ++i) {
      const RouteSet rs = route_permutation(t, random_permutation(rng, 16));
      const auto ia = static_cast<std::size_t>(rng.below(16));
      auto ib = static_cast<std::size_t>(rng.below(15));
      if (ib >= ia) ++ib;
      const Route& a = rs.routes[ia];
      const Route& b = rs.routes[ib];
      const auto path = route_path(t, a.source, a.header);
      const auto on_path = [&](const SignalChange& c) {
        return c.link == 0 ? c.port == a.source : c.port == path[c.link - 1];
      };
      const auto ma = InitiatorModel::single_route(
          a.source, a.header, random_bits(rng, rng.between(1, 40)), rng.below(4));
      const InitiatorModel both[2] = {
          ma, InitiatorModel::single_route(b.source, b.header,
                                           random_bits(rng, rng.between(1, 40)),
                                           rng.below(6))};
      const Trace alone = run(net, std::span(&ma, 1), {}, opts);
      const Trace shared = run(net, both, {}, opts);
      std::vector<SignalChange> x;
      std::vector<SignalChange> y;
      std::copy_if(alone.signals.begin(), alone.signals.end(), std::back_inserter(x), on_path);
      std::copy_if(shared.signals.begin(), shared.signals.end(), std::back_inserter(y), on_path);
      o.require(!x.empty() && x == y, "identical path signals");
      if (x != y) break;
      compared += x.size();
      ++pairs;
    }
  }
  o.require(pairs >= 1000, "1000 pairs");
  o.note(std::to_string(pairs) + " pairs at 16 nodes, " + std::to_string(compared) +
         " path signal changes compared");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "bisection bandwidth", bandwidth},
      {2, "TDM cycle model", tdm_model},
      {3, "stage planning", stage_planning},
      {4, "latency bounds", latency_bounds},
      {5, "rearrangeability", rearrangeability},
      {6, "network equivalence", equivalence},
      {7, "property campaign", property_campaign},
      {8, "flow control", flow_control},
      {9, "non-interference", non_interference},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
