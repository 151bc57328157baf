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

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "mcenoc/topology.hpp"

namespace mcenoc {

namespace {

std::string port_name(const Topology& topo, std::uint32_t stage,
                      std::uint32_t port) {
  std::ostringstream os;
  os << 's' << stage << "_w" << topo.switch_of(stage, port) << "_p"
     << topo.local_port(stage, port);
  return os.str();
}

std::string emit_dot(const Topology& topo) {
  std::ostringstream os;
  const auto& plan = topo.plan();
  const std::uint32_t stages = topo.stage_count();
  const std::uint32_t n = topo.nodes();

  os << "digraph mcenoc {\n"
     << "  // N=" << n << " B=" << topo.spec().switch_degree()
     << " S=" << stages << " P=" << topo.header_bits() << "\n"
     << "  rankdir=LR;\n"
     << "  node [shape=circle, fontsize=10];\n";
  for (std::uint32_t q = 0; q < n; ++q) {
    os << "  n" << q << "_tx [label=\"" << q << "\"];\n";
  }
  for (std::uint32_t t = 0; t < stages; ++t) {
    const auto& st = plan.stages[t];
    for (std::uint32_t w = 0; w < st.switch_count; ++w) {
      os << "  subgraph cluster_s" << t << "_w" << w << " {\n"
         << "    label=\"s" << t << "_w" << w << "\";\n";
      for (std::uint32_t p = 0; p < st.ports(); ++p) {
        os << "    s" << t << "_w" << w << "_p" << p
           << " [shape=point];\n";
      }
      os << "  }\n";
    }
  }
  for (std::uint32_t q = 0; q < n; ++q) {
    os << "  n" << q << "_rx [label=\"" << q << "\"];\n";
  }
  for (std::uint32_t q = 0; q < n; ++q) {
    os << "  n" << q << "_tx -> " << port_name(topo, 0, q) << ";\n";
  }
  for (std::uint32_t b = 0; b < topo.boundary_count(); ++b) {
    for (std::uint32_t i = 0; i < n; ++i) {
      os << "  " << port_name(topo, b, i) << " -> "
         << port_name(topo, b + 1, topo.next_port(b, i)) << ";\n";
    }
  }
  for (std::uint32_t q = 0; q < n; ++q) {
    os << "  " << port_name(topo, stages - 1, q) << " -> n" << q << "_rx;\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_tikz(const Topology& topo) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  const auto& plan = topo.plan();
  const std::uint32_t stages = topo.stage_count();
  const std::uint32_t n = topo.nodes();
  constexpr double kStageGap = 3.0;
  constexpr double kPortGap = 0.5;
  constexpr double kHalfWidth = 0.4;

  auto port_y = [&](std::uint32_t port) { return -kPortGap * port; };
  auto stage_x = [&](std::uint32_t t) { return kStageGap * (t + 1); };

  os << "% N=" << n << " B=" << topo.spec().switch_degree() << " S=" << stages
     << " P=" << topo.header_bits() << "\n"
     << "\\begin{tikzpicture}[switch/.style={draw, rectangle, "
        "minimum width=0.8cm}]\n";
  for (std::uint32_t t = 0; t < stages; ++t) {
    const auto& st = plan.stages[t];
    os << "  % stage " << t << ": " << st.switch_count << " x " << st.ports()
       << "-port\n";
    for (std::uint32_t w = 0; w < st.switch_count; ++w) {
      const std::uint32_t first = topo.port_base(t, w);
      const std::uint32_t last = first + st.ports() - 1;
      const double top = port_y(first) + kPortGap / 2;
      const double bottom = port_y(last) - kPortGap / 2;
      os << "  \\node[switch, minimum height=" << (top - bottom)
         << "cm] (s" << t << "_w" << w << ") at (" << stage_x(t) << ","
         << (top + bottom) / 2 << ") {};\n";
      for (std::uint32_t p = 0; p < st.ports(); ++p) {
        const double y = port_y(first + p);
        os << "  \\coordinate (s" << t << "_w" << w << "_p" << p
           << "_in) at (" << stage_x(t) - kHalfWidth << "," << y << ");\n"
           << "  \\coordinate (s" << t << "_w" << w << "_p" << p
           << "_out) at (" << stage_x(t) + kHalfWidth << "," << y << ");\n";
      }
    }
  }
  for (std::uint32_t q = 0; q < n; ++q) {
    os << "  \\node[left] (n" << q << "_tx) at (0.00," << port_y(q) << ") {"
       << q << "};\n"
       << "  \\draw (n" << q << "_tx) -- (" << port_name(topo, 0, q)
       << "_in);\n";
  }
  for (std::uint32_t b = 0; b < topo.boundary_count(); ++b) {
    for (std::uint32_t i = 0; i < n; ++i) {
      os << "  \\draw (" << port_name(topo, b, i) << "_out) -- ("
         << port_name(topo, b + 1, topo.next_port(b, i)) << "_in);\n";
    }
  }
  const double right = stage_x(stages - 1) + kStageGap;
  for (std::uint32_t q = 0; q < n; ++q) {
    os << "  \\node[right] (n" << q << "_rx) at (" << right << ","
       << port_y(q) << ") {" << q << "};\n"
       << "  \\draw (" << port_name(topo, stages - 1, q) << "_out) -- (n" << q
       << "_rx);\n";
  }
  os << "\\end{tikzpicture}\n";
  return os.str();
}

}  // namespace

DiagramFormat parse_diagram_format(const std::string& name) {
  if (name == "dot") return DiagramFormat::dot;
  if (name == "tikz") return DiagramFormat::tikz;
  throw std::invalid_argument("unknown diagram format '" + name +
                              "' (expected dot or tikz)");
}

std::string emit_diagram(const Topology& topology, DiagramFormat format) {
  switch (format) {
    case DiagramFormat::dot:
      return emit_dot(topology);
    case DiagramFormat::tikz:
      return emit_tikz(topology);
  }
  throw std::invalid_argument("unknown diagram format");
}

}  // namespace mcenoc
