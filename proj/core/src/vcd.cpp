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

#include <ostream>
#include <string>

#include "mcenoc/netsim.hpp"

namespace mcenoc {

namespace {

std::string vcd_id(std::size_t index) {
  std::string id;
  do {
    id += static_cast<char>('!' + index % 94);
    index /= 94;
  } while (index > 0);
  return id;
}

}  // namespace

void write_vcd(std::ostream& os, const Topology& topology, const Trace& trace) {
  const std::uint32_t links = topology.stage_count() + 1;
  const std::uint32_t n = topology.nodes();
  const auto index = [n](std::uint32_t link, std::uint32_t port,
                         Signal signal) {
    return (std::size_t{link} * n + port) * 5 + static_cast<std::size_t>(signal);
  };

  os << "$timescale 1ns $end\n";
  os << "$scope module mcenoc $end\n";
  for (std::uint32_t l = 0; l < links; ++l) {
    os << "$scope module link" << l << " $end\n";
    for (std::uint32_t p = 0; p < n; ++p) {
      for (std::uint32_t s = 0; s < 5; ++s) {
        const auto sig = static_cast<Signal>(s);
        os << "$var wire 1 " << vcd_id(index(l, p, sig)) << " p" << p << '_'
           << to_string(sig) << " $end\n";
      }
    }
    os << "$upscope $end\n";
  }
  os << "$upscope $end\n$enddefinitions $end\n";

  os << "#0\n$dumpvars\n";
  for (std::uint32_t l = 0; l < links; ++l) {
    for (std::uint32_t p = 0; p < n; ++p) {
      for (std::uint32_t s = 0; s < 5; ++s) {
        const auto sig = static_cast<Signal>(s);
        os << (sig == Signal::cts ? '1' : '0') << vcd_id(index(l, p, sig))
           << '\n';
      }
    }
  }
  os << "$end\n";

  std::uint64_t stamp = 0;
  for (const auto& c : trace.signals) {
    if (c.cycle != stamp) {
      stamp = c.cycle;
      os << '#' << stamp << '\n';
    }
    os << (c.value ? '1' : '0') << vcd_id(index(c.link, c.port, c.signal))
       << '\n';
  }
  os << '#' << trace.summary.cycles << '\n';
}

}  // namespace mcenoc
