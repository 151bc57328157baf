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

#include "mcenoc/routing.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <utility>

#include "mcenoc/netsim.hpp"

namespace mcenoc {

// ---------------------------------------------------------------------------
// Permutation / RouteHeader

Permutation::Permutation(std::vector<std::uint32_t> mapping)
    : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t src = 0; src < mapping_.size(); ++src) {
    const auto dst = mapping_[src];
    if (dst >= mapping_.size()) {
      throw std::invalid_argument("permutation: destination " +
                                  std::to_string(dst) + " out of range");
    }
    if (seen[dst]) {
      throw std::invalid_argument("permutation: destination " +
                                  std::to_string(dst) +
                                  " used twice (not a bijection)");
    }
    seen[dst] = true;
  }
}

Permutation Permutation::identity(std::uint32_t n) {
  std::vector<std::uint32_t> m(n);
  std::iota(m.begin(), m.end(), 0u);
  return Permutation(std::move(m));
}

RouteHeader::RouteHeader(std::vector<bool> bits,
                         std::vector<std::uint32_t> grouping)
    : bits_(std::move(bits)), grouping_(std::move(grouping)) {
  const auto total =
      std::accumulate(grouping_.begin(), grouping_.end(), std::size_t{0});
  if (total != bits_.size()) {
    throw std::invalid_argument("route header: grouping covers " +
                                std::to_string(total) + " bits, header has " +
                                std::to_string(bits_.size()));
  }
}

RouteHeader RouteHeader::parse(std::string_view text) {
  std::vector<bool> bits;
  std::vector<std::uint32_t> grouping;
  std::uint32_t group = 0;
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(c == '1');
      ++group;
    } else if (c == '-') {
      if (group == 0) throw std::invalid_argument("route header: empty group");
      grouping.push_back(group);
      group = 0;
    } else {
      throw std::invalid_argument("route header: unexpected character '" +
                                  std::string(1, c) + "'");
    }
  }
  if (group > 0) grouping.push_back(group);
  return RouteHeader(std::move(bits), std::move(grouping));
}

RouteHeader RouteHeader::parse(std::string_view text, const StagePlan& plan) {
  return regroup_header(parse(text).bits(), plan);
}

std::string RouteHeader::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::string RouteHeader::grouped() const {
  std::string s;
  std::size_t pos = 0;
  for (std::size_t g = 0; g < grouping_.size(); ++g) {
    if (g > 0) s.push_back('-');
    for (std::uint32_t i = 0; i < grouping_[g]; ++i) {
      s.push_back(bits_[pos++] ? '1' : '0');
    }
  }
  return s;
}

RouteHeader regroup_header(const std::vector<bool>& radix2_bits,
                           const StagePlan& plan) {
  if (radix2_bits.size() != plan.total_header_bits) {
    throw std::invalid_argument(
        "regroup: header has " + std::to_string(radix2_bits.size()) +
        " bits, plan needs " + std::to_string(plan.total_header_bits));
  }
  return RouteHeader(radix2_bits, plan.port_bits());
}

// ---------------------------------------------------------------------------
// Static path evaluation

namespace {

void check_header(const Topology& topo, const RouteHeader& header) {
  if (header.size() != topo.header_bits()) {
    throw std::invalid_argument("header has " + std::to_string(header.size()) +
                                " bits, topology needs " +
                                std::to_string(topo.header_bits()));
  }
}

}  // namespace

std::vector<std::uint32_t> route_path(const Topology& topology,
                                      std::uint32_t src,
                                      const RouteHeader& header) {
  check_header(topology, header);
  if (src >= topology.nodes()) {
    throw std::out_of_range("source node out of range");
  }
  std::vector<std::uint32_t> outs;
  outs.reserve(topology.stage_count());
  std::uint32_t port = src;
  std::size_t pos = 0;
  for (std::uint32_t t = 0; t < topology.stage_count(); ++t) {
    std::uint32_t dir = 0;
    for (std::uint32_t i = 0; i < topology.stage(t).port_bits; ++i) {
      dir = (dir << 1) | (header.bits()[pos++] ? 1u : 0u);
    }
    const std::uint32_t out =
        topology.port_base(t, topology.switch_of(t, port)) + dir;
    outs.push_back(out);
    if (t + 1 < topology.stage_count()) port = topology.next_port(t, out);
  }
  return outs;
}

std::uint32_t decode_destination(const Topology& topology, std::uint32_t src,
                                 const RouteHeader& header) {
  return route_path(topology, src, header).back();
}

bool routeset_conflict_free(const Topology& topology, const RouteSet& routes) {
  const std::uint32_t stages = topology.stage_count();
  std::vector<std::vector<bool>> used(
      stages, std::vector<bool>(topology.nodes(), false));
  for (const auto& route : routes.routes) {
    if (route.header.size() != topology.header_bits()) return false;
    const auto path = route_path(topology, route.source, route.header);
    if (path.back() != route.destination) return false;
    for (std::uint32_t t = 0; t < stages; ++t) {
      if (used[t][path[t]]) return false;
      used[t][path[t]] = true;
    }
  }
  return true;
}

std::vector<RouteHeader> all_headers(const Topology& topology) {
  const std::uint32_t p = topology.header_bits();
  if (p > 24) throw std::invalid_argument("header space too large to enumerate");
  const auto grouping = topology.plan().port_bits();
  std::vector<RouteHeader> out;
  out.reserve(std::size_t{1} << p);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << p); ++v) {
    std::vector<bool> bits(p);
    for (std::uint32_t i = 0; i < p; ++i) bits[i] = (v >> (p - 1 - i)) & 1u;
    out.emplace_back(std::move(bits), grouping);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Permutation routing

namespace {

struct Edge {
  std::uint32_t left;
  std::uint32_t right;
};

/// Splits a regular bipartite multigraph of even degree into two halves of
/// half the degree. Walks start at the lowest unassigned edge; edges taken
/// from the left side go to half 0 and edges taken from the right to half 1.
std::vector<std::uint8_t> euler_split(const std::vector<Edge>& edges,
                                      std::uint32_t left_count,
                                      std::uint32_t right_count) {
  const std::uint32_t vertices = left_count + right_count;
  std::vector<std::vector<std::uint32_t>> adj(vertices);
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].left].push_back(e);
    adj[left_count + edges[e].right].push_back(e);
  }
  std::vector<std::size_t> cursor(vertices, 0);
  std::vector<bool> used(edges.size(), false);
  std::vector<std::uint8_t> half(edges.size(), 0);

  auto next_unused = [&](std::uint32_t v) -> std::optional<std::uint32_t> {
    auto& c = cursor[v];
    while (c < adj[v].size() && used[adj[v][c]]) ++c;
    if (c == adj[v].size()) return std::nullopt;
    return adj[v][c];
  };

  for (std::uint32_t start = 0; start < edges.size(); ++start) {
    if (used[start]) continue;
    std::uint32_t e = start;
    std::uint8_t side = 0;
    for (;;) {
      used[e] = true;
      half[e] = side;
      const std::uint32_t v =
          side == 0 ? left_count + edges[e].right : edges[e].left;
      const auto next = next_unused(v);
      if (!next) break;
      e = *next;
      side ^= 1;
    }
  }
  return half;
}

/// Colours a d-regular bipartite multigraph with d colours (d a power of two).
void colour_edges(const std::vector<Edge>& edges,
                  const std::vector<std::uint32_t>& ids,
                  std::uint32_t left_count, std::uint32_t right_count,
                  std::uint32_t degree, std::uint32_t base,
                  std::vector<std::uint32_t>& colour) {
  if (degree == 1) {
    for (auto id : ids) colour[id] = base;
    return;
  }
  std::vector<Edge> sub;
  sub.reserve(ids.size());
  for (auto id : ids) sub.push_back(edges[id]);
  const auto half = euler_split(sub, left_count, right_count);
  std::vector<std::uint32_t> upper;
  std::vector<std::uint32_t> lower;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    (half[i] == 0 ? upper : lower).push_back(ids[i]);
  }
  colour_edges(edges, upper, left_count, right_count, degree / 2, base,
               colour);
  colour_edges(edges, lower, left_count, right_count, degree / 2,
               base + degree / 2, colour);
}

class Decomposer {
 public:
  explicit Decomposer(const Topology& topo)
      : topo_(topo),
        direction_(topo.stage_count(),
                   std::vector<std::uint32_t>(topo.nodes(), UINT32_MAX)) {}

  void solve(std::uint32_t first, std::uint32_t last,
             std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs);

  std::uint32_t direction(std::uint32_t stage, std::uint32_t port) const {
    return direction_[stage][port];
  }

 private:
  using ComponentMap = std::vector<std::vector<std::uint32_t>>;

  const ComponentMap& components(std::uint32_t lo, std::uint32_t hi);

  const Topology& topo_;
  std::vector<std::vector<std::uint32_t>> direction_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, ComponentMap> cache_;
};

/// Connected components of switches in stages [lo, hi], labelled by the
/// smallest flat switch index they contain.
const Decomposer::ComponentMap& Decomposer::components(std::uint32_t lo,
                                                       std::uint32_t hi) {
  const auto key = std::make_pair(lo, hi);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  std::vector<std::uint32_t> offset;
  std::uint32_t total = 0;
  for (std::uint32_t t = lo; t <= hi; ++t) {
    offset.push_back(total);
    total += topo_.stage(t).switch_count;
  }
  std::vector<std::uint32_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint32_t b = lo; b < hi; ++b) {
    for (std::uint32_t i = 0; i < topo_.nodes(); ++i) {
      const auto a = find(offset[b - lo] + topo_.switch_of(b, i));
      const auto c = find(offset[b + 1 - lo] +
                          topo_.switch_of(b + 1, topo_.next_port(b, i)));
      if (a != c) parent[std::max(a, c)] = std::min(a, c);
    }
  }
  ComponentMap map(hi - lo + 1);
  for (std::uint32_t t = lo; t <= hi; ++t) {
    map[t - lo].resize(topo_.stage(t).switch_count);
    for (std::uint32_t w = 0; w < map[t - lo].size(); ++w) {
      map[t - lo][w] = find(offset[t - lo] + w);
    }
  }
  return cache_.emplace(key, std::move(map)).first->second;
}

void Decomposer::solve(
    std::uint32_t first, std::uint32_t last,
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
  std::sort(pairs.begin(), pairs.end());

  if (first == last) {
    for (auto [entry, exit] : pairs) {
      if (topo_.switch_of(first, entry) != topo_.switch_of(first, exit)) {
        throw RoutingError("middle stage " + std::to_string(first) +
                           ": entry and exit ports on different switches");
      }
      direction_[first][entry] = topo_.local_port(first, exit);
    }
    return;
  }

  const auto& comp = components(first + 1, last - 1);
  const auto& comp_after_first = comp.front();
  const auto& comp_before_last = comp.back();
  const std::uint32_t degree = topo_.stage(first).ports();
  if (topo_.stage(last).ports() != degree) {
    throw RoutingError("stages " + std::to_string(first) + " and " +
                       std::to_string(last) + " differ in switch degree");
  }

  // Compact indices for the outer switches touched by this subproblem.
  std::map<std::uint32_t, std::uint32_t> left_index;
  std::map<std::uint32_t, std::uint32_t> right_index;
  for (auto [entry, exit] : pairs) {
    left_index.emplace(topo_.switch_of(first, entry), 0);
    right_index.emplace(topo_.switch_of(last, exit), 0);
  }
  std::uint32_t idx = 0;
  for (auto& kv : left_index) kv.second = idx++;
  idx = 0;
  for (auto& kv : right_index) kv.second = idx++;

  // Subnetworks reachable from the first stage, in label order.
  std::vector<std::uint32_t> labels;
  for (auto& [sw, _] : left_index) {
    const std::uint32_t base = topo_.port_base(first, sw);
    for (std::uint32_t o = 0; o < degree; ++o) {
      const auto g = topo_.next_port(first, base + o);
      labels.push_back(comp_after_first[topo_.switch_of(first + 1, g)]);
    }
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.size() != degree) {
    throw RoutingError("stage " + std::to_string(first) + " reaches " +
                       std::to_string(labels.size()) + " subnetworks, expected " +
                       std::to_string(degree));
  }
  auto label_index = [&](std::uint32_t label) -> std::uint32_t {
    return static_cast<std::uint32_t>(
        std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  };

  // out_port[left][c]: local output of the first-stage switch into
  // subnetwork c; in_port[right][c]: local input of the last-stage switch
  // coming from subnetwork c.
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::vector<std::uint32_t>> out_port(
      left_index.size(), std::vector<std::uint32_t>(degree, kUnset));
  std::vector<std::vector<std::uint32_t>> in_port(
      right_index.size(), std::vector<std::uint32_t>(degree, kUnset));
  for (auto& [sw, li] : left_index) {
    const std::uint32_t base = topo_.port_base(first, sw);
    for (std::uint32_t o = 0; o < degree; ++o) {
      const auto g = topo_.next_port(first, base + o);
      const auto c = label_index(comp_after_first[topo_.switch_of(first + 1, g)]);
      if (c >= degree || out_port[li][c] != kUnset) {
        throw RoutingError("stage " + std::to_string(first) + " switch " +
                           std::to_string(sw) +
                           " has two links into one subnetwork");
      }
      out_port[li][c] = o;
    }
  }
  for (auto& [sw, ri] : right_index) {
    const std::uint32_t base = topo_.port_base(last, sw);
    for (std::uint32_t ip = 0; ip < degree; ++ip) {
      const auto pred = topo_.prev_port(last - 1, base + ip);
      const auto c =
          label_index(comp_before_last[topo_.switch_of(last - 1, pred)]);
      if (c >= degree || labels[c] != comp_before_last[topo_.switch_of(
                                          last - 1, pred)] ||
          in_port[ri][c] != kUnset) {
        throw RoutingError("stage " + std::to_string(last) + " switch " +
                           std::to_string(sw) +
                           " is not fed once by every subnetwork");
      }
      in_port[ri][c] = ip;
    }
  }

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  std::vector<std::uint32_t> per_left(left_index.size(), 0);
  std::vector<std::uint32_t> per_right(right_index.size(), 0);
  for (auto [entry, exit] : pairs) {
    const auto l = left_index[topo_.switch_of(first, entry)];
    const auto r = right_index[topo_.switch_of(last, exit)];
    ++per_left[l];
    ++per_right[r];
    edges.push_back({l, r});
  }
  auto full = [&](const std::vector<std::uint32_t>& v) {
    return std::all_of(v.begin(), v.end(),
                       [&](std::uint32_t d) { return d == degree; });
  };
  if (!full(per_left) || !full(per_right)) {
    throw RoutingError("subproblem at stages " + std::to_string(first) + ".." +
                       std::to_string(last) + " is not a full permutation");
  }

  std::vector<std::uint32_t> ids(edges.size());
  std::iota(ids.begin(), ids.end(), 0u);
  std::vector<std::uint32_t> colour(edges.size(), 0);
  colour_edges(edges, ids, static_cast<std::uint32_t>(left_index.size()),
               static_cast<std::uint32_t>(right_index.size()), degree, 0,
               colour);

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> sub(degree);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [entry, exit] = pairs[i];
    const auto c = colour[i];
    const auto lsw = topo_.switch_of(first, entry);
    const auto rsw = topo_.switch_of(last, exit);
    const auto o = out_port[edges[i].left][c];
    const auto ip = in_port[edges[i].right][c];
    direction_[first][entry] = o;
    const auto in_port_global = topo_.port_base(last, rsw) + ip;
    direction_[last][in_port_global] = topo_.local_port(last, exit);
    sub[c].emplace_back(
        topo_.next_port(first, topo_.port_base(first, lsw) + o),
        topo_.prev_port(last - 1, in_port_global));
  }
  for (auto& s : sub) solve(first + 1, last - 1, std::move(s));
}

}  // namespace

RouteSet route_permutation(const Topology& topology, const Permutation& perm) {
  const std::uint32_t n = topology.nodes();
  if (perm.size() != n) {
    throw std::invalid_argument("permutation has " +
                                std::to_string(perm.size()) +
                                " entries, topology has " + std::to_string(n) +
                                " nodes");
  }
  Decomposer dec(topology);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(n);
  for (std::uint32_t q = 0; q < n; ++q) pairs.emplace_back(q, perm[q]);
  dec.solve(0, topology.stage_count() - 1, std::move(pairs));

  const auto grouping = topology.plan().port_bits();
  RouteSet out;
  out.routes.reserve(n);
  for (std::uint32_t q = 0; q < n; ++q) {
    std::vector<bool> bits;
    bits.reserve(topology.header_bits());
    std::uint32_t port = q;
    for (std::uint32_t t = 0; t < topology.stage_count(); ++t) {
      const std::uint32_t m = topology.stage(t).port_bits;
      const std::uint32_t dir = dec.direction(t, port);
      for (std::uint32_t i = m; i-- > 0;) bits.push_back((dir >> i) & 1u);
      const std::uint32_t out_port =
          topology.port_base(t, topology.switch_of(t, port)) + dir;
      if (t + 1 < topology.stage_count()) {
        port = topology.next_port(t, out_port);
      }
    }
    out.routes.push_back({q, RouteHeader(std::move(bits), grouping), perm[q]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simulation-backed verification

std::size_t RouteSetReport::opened() const {
  return static_cast<std::size_t>(std::count_if(
      routes.begin(), routes.end(), [](const RouteOutcome& r) { return r.opened; }));
}

std::size_t RouteSetReport::rejected() const {
  return static_cast<std::size_t>(
      std::count_if(routes.begin(), routes.end(),
                    [](const RouteOutcome& r) { return r.rejected; }));
}

bool RouteSetReport::all_correct() const {
  return std::all_of(routes.begin(), routes.end(),
                     [](const RouteOutcome& r) { return r.correct(); });
}

namespace {

/// Marker bit followed by the source index, so misdelivery is visible.
std::vector<bool> tag_payload(std::uint32_t source, std::uint32_t nodes) {
  std::vector<bool> bits{true};
  for (std::uint32_t i = static_cast<std::uint32_t>(std::bit_width(nodes - 1));
       i-- > 0;) {
    bits.push_back((source >> i) & 1u);
  }
  return bits;
}

}  // namespace

RouteSetReport verify_routeset(const Topology& topology,
                               const RouteSet& routes) {
  RouteSetReport report;
  if (routes.empty()) return report;

  Network net(topology);
  std::vector<InitiatorModel> initiators;
  initiators.reserve(routes.size());
  for (const auto& route : routes.routes) {
    initiators.push_back(InitiatorModel::single_route(
        route.source, route.header, tag_payload(route.source, topology.nodes())));
  }
  RunOptions options;
  options.max_cycles = 64ull * (topology.header_bits() + topology.stage_count()) + 64;
  const Trace trace = run(net, initiators, {}, options);
  report.cycles = trace.summary.cycles;

  for (const auto& route : routes.routes) {
    RouteOutcome outcome;
    outcome.source = route.source;
    outcome.expected = route.destination;
    if (const auto* rep = trace.summary.initiator(route.source)) {
      outcome.opened = rep->opened_cycle.has_value();
      outcome.destination = rep->destination;
      outcome.rejected = rep->reject_stage.has_value();
      if (rep->destination) {
        outcome.payload_intact =
            trace.summary.targets[*rep->destination].bits_from(route.source) ==
            tag_payload(route.source, topology.nodes());
      }
    }
    report.routes.push_back(outcome);
  }
  return report;
}

}  // namespace mcenoc
