// Copyright 2026 The Blotto Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blotto/strategy_io.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace blotto {
namespace {

constexpr std::string_view kHeader = "var_kind,i,a_or_k,b_or_action,value";

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

int parse_int(std::string_view s, int line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("line " + std::to_string(line) +
                                ": bad integer '" + std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("line " + std::to_string(line) +
                                ": bad number '" + std::string(s) + "'");
  }
  return v;
}

nlohmann::json profile_json(const BehavioralProfile& p) {
  nlohmann::json mix = nlohmann::json::array();
  for (const auto& [alloc, prob] : p.allocation_mix) {
    mix.push_back({{"allocation", alloc}, {"probability", prob}});
  }
  return {{"allocation_mix", mix},
          {"allocation", p.allocation},
          {"actions", p.actions}};
}

}  // namespace

bool uses_two_level(const BlottoInstance& inst, Player player,
                    SeqPolytope* kind, double* root) {
  SeqPolytope k = SeqPolytope::kP;
  switch (lp_setting_for(inst)) {
    case LpSetting::kTwoSidedSum:
      return false;
    case LpSetting::kOneSidedMinDiscrete:
      if (player == Player::kTwo) return false;
      k = SeqPolytope::kP;
      break;
    case LpSetting::kOneSidedSumLinear:
      k = player == Player::kOne ? SeqPolytope::kSimplexProduct : SeqPolytope::kQ;
      break;
    case LpSetting::kOneSidedMinLinear:
      k = player == Player::kOne ? SeqPolytope::kP : SeqPolytope::kQ;
      break;
  }
  if (kind != nullptr) *kind = k;
  if (root != nullptr) *root = k == SeqPolytope::kQ ? inst.m2 : 1.0;
  return true;
}

std::string strategy_to_csv(const SeqForm& strategy) {
  std::ostringstream os;
  os << kHeader << '\n';
  if (const auto* s = std::get_if<SequenceStrategy>(&strategy)) {
    const LayeredStrategyDag& dag = *s->dag;
    for (int e = 0; e < dag.num_h(); ++e) {
      const FlowEdge& edge = dag.edge(e);
      os << "h," << edge.layer << ',' << edge.from << ',' << edge.to << ','
         << format_double(s->values[e]) << '\n';
    }
    for (int i = 0; i < dag.n(); ++i) {
      for (int k = 0; k <= dag.m(); ++k) {
        for (int a = 0; a < dag.action_counts()[i]; ++a) {
          const int idx = dag.x_index(i, k, a);
          if (idx < 0) continue;
          os << "x," << i << ',' << k << ',' << a << ','
             << format_double(s->values[idx]) << '\n';
        }
      }
    }
    return os.str();
  }
  const auto& y = std::get<TwoLevelSeqStrategy>(strategy);
  os << "y,-1,-1,-1," << format_double(y.root) << '\n';
  for (std::size_t i = 0; i < y.battlefield.size(); ++i) {
    os << "y," << i << ",-1,-1," << format_double(y.battlefield[i]) << '\n';
    for (std::size_t a = 0; a < y.action[i].size(); ++a) {
      os << "y," << i << ",-1," << a << ',' << format_double(y.action[i][a])
         << '\n';
    }
  }
  return os.str();
}

SeqForm strategy_from_csv(std::string_view text, const BlottoInstance& inst,
                          Player player) {
  SeqPolytope kind = SeqPolytope::kP;
  double root = 1.0;
  const bool two_level = uses_two_level(inst, player, &kind, &root);

  SequenceStrategy flow;
  TwoLevelSeqStrategy y;
  if (two_level) {
    y.kind = kind;
    y.root = root;
    y.battlefield.assign(inst.n, 0.0);
    y.action.resize(inst.n);
    const std::vector<int> counts = action_counts(inst, player);
    for (int i = 0; i < inst.n; ++i) y.action[i].assign(counts[i], 0.0);
  } else {
    flow.dag = dag_for_player(inst, player);
    flow.values.assign(flow.dag->dim(), 0.0);
  }

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    if (!header) {
      if (raw != kHeader) {
        throw std::invalid_argument("line " + std::to_string(line) +
                                    ": expected header '" +
                                    std::string(kHeader) + "'");
      }
      header = true;
      continue;
    }
    const auto f = split(raw);
    if (f.size() != 5) {
      throw std::invalid_argument("line " + std::to_string(line) +
                                  ": expected 5 fields");
    }
    const int i = parse_int(f[1], line);
    const int a = parse_int(f[2], line);
    const int b = parse_int(f[3], line);
    const double v = parse_double(f[4], line);
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("line " + std::to_string(line) + ": " + why);
    };
    if (f[0] == "h" || f[0] == "x") {
      if (two_level) fail("flow row in a two-level strategy dump");
      int idx = -1;
      if (i >= 0 && i < inst.n) {
        if (f[0] == "h") {
          idx = flow.dag->h_index(i, a, b);
        } else if (a >= 0 && a <= flow.dag->m() && b >= 0 &&
                   b < flow.dag->action_counts()[i]) {
          idx = flow.dag->x_index(i, a, b);
        }
      }
      if (idx < 0) fail("no such variable");
      flow.values[idx] = v;
    } else if (f[0] == "y") {
      if (!two_level) fail("y row in a flow strategy dump");
      if (a != -1) fail("y rows have a_or_k = -1");
      if (i == -1 && b == -1) {
        y.root = v;
      } else if (i < 0 || i >= inst.n) {
        fail("battlefield out of range");
      } else if (b == -1) {
        y.battlefield[i] = v;
      } else if (b >= 0 && b < static_cast<int>(y.action[i].size())) {
        y.action[i][b] = v;
      } else {
        fail("action out of range");
      }
    } else {
      fail("unknown var_kind '" + std::string(f[0]) + "'");
    }
  }
  if (!header) throw std::invalid_argument("empty strategy dump");
  if (two_level) return y;
  return flow;
}

std::string profile_to_json(const BehavioralProfile& profile) {
  return profile_json(profile).dump(2) + "\n";
}

std::string equilibrium_to_json(const Equilibrium& eq) {
  nlohmann::json j = {{"setting", to_string(eq.setting)},
                      {"side", to_string(eq.side)},
                      {"value", eq.value},
                      {"player1", profile_json(eq.profile1)},
                      {"player2", profile_json(eq.profile2)}};
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace blotto
