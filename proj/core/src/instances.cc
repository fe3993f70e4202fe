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

#include "blotto/instances.h"

#include <fstream>
#include <functional>
#include <initializer_list>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "blotto/rng.h"

namespace blotto {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw std::invalid_argument("instance schema error at " + path + ": " + what);
}

void require_positive(int v, const char* name) {
  if (v < 1) {
    throw std::invalid_argument(std::string(name) + " must be at least 1");
  }
}

std::vector<double> draw(SplitMix64& rng, std::size_t count, double lo,
                         double hi) {
  std::vector<double> out(count);
  for (double& v : out) v = rng.uniform(lo, hi);
  return out;
}

json matrix_to_json(const std::vector<double>& values, int rows, int cols) {
  json out = json::array();
  for (int r = 0; r < rows; ++r) {
    json row = json::array();
    for (int c = 0; c < cols; ++c) {
      row.push_back(values[static_cast<std::size_t>(r) * cols + c]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

json tensor_to_json(const DenseTensor& t) {
  // Nested arrays in axis order; the flat buffer is row-major.
  std::size_t pos = 0;
  std::function<json(std::size_t)> build = [&](std::size_t axis) -> json {
    json arr = json::array();
    for (std::size_t j = 0; j < t.shape[axis]; ++j) {
      if (axis + 1 == t.shape.size()) {
        arr.push_back(t.values[pos++]);
      } else {
        arr.push_back(build(axis + 1));
      }
    }
    return arr;
  };
  return build(0);
}

json payoff_to_json(const PayoffSpec& spec) {
  if (const auto* t = std::get_if<DenseTensor>(&spec)) {
    return {{"kind", "tensor"}, {"u", tensor_to_json(*t)}};
  }
  const auto& p = std::get<ParametricMatrix>(spec);
  json out{{"kind", to_string(p.kind)}};
  switch (p.kind) {
    case ParametricKind::kQuadratic:
      out["b"] = matrix_to_json(p.quad, p.rows, p.cols);
      [[fallthrough]];
    case ParametricKind::kAffine:
      out["c"] = matrix_to_json(p.lin, p.rows, p.cols);
      out["d"] = matrix_to_json(p.constant, p.rows, p.cols);
      break;
    case ParametricKind::kLogMatrix:
      out["A"] = matrix_to_json(p.constant, p.rows, p.cols);
      out["C"] = matrix_to_json(p.lin, p.rows, p.cols);
      break;
  }
  return out;
}

// Schema reader that tracks the key path for error messages.
class Reader {
 public:
  static void only_keys(const json& obj, const std::string& path,
                        std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) schema_error(path, "expected an object");
    std::set<std::string> ok;
    for (const char* k : allowed) ok.insert(k);
    for (const auto& [key, _] : obj.items()) {
      if (!ok.count(key)) schema_error(path, "unknown key \"" + key + "\"");
    }
  }

  static const json& key(const json& obj, const std::string& path,
                         const char* name) {
    const auto it = obj.find(name);
    if (it == obj.end()) {
      schema_error(path, std::string("missing key \"") + name + "\"");
    }
    return *it;
  }

  static double number(const json& v, const std::string& path) {
    if (!v.is_number()) schema_error(path, "expected a number");
    return v.get<double>();
  }

  static int integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) schema_error(path, "expected an integer");
    return v.get<int>();
  }

  static std::string text(const json& v, const std::string& path) {
    if (!v.is_string()) schema_error(path, "expected a string");
    return v.get<std::string>();
  }

  static std::vector<double> matrix(const json& v, const std::string& path,
                                    int rows, int cols) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows) {
      schema_error(path, "expected " + std::to_string(rows) + " rows");
    }
    std::vector<double> out;
    for (int r = 0; r < rows; ++r) {
      const std::string row_path = path + "[" + std::to_string(r) + "]";
      const json& row = v[r];
      if (!row.is_array() || static_cast<int>(row.size()) != cols) {
        schema_error(row_path, "expected " + std::to_string(cols) + " columns");
      }
      for (int c = 0; c < cols; ++c) {
        out.push_back(number(row[c], row_path + "[" + std::to_string(c) + "]"));
      }
    }
    return out;
  }

  // Rectangular nested array of numbers; returns the shape.
  static DenseTensor tensor(const json& v, const std::string& path) {
    DenseTensor t;
    const json* level = &v;
    while (level->is_array()) {
      if (level->empty()) schema_error(path, "tensor has an empty axis");
      t.shape.push_back(level->size());
      level = &(*level)[0];
    }
    if (t.shape.empty()) schema_error(path, "expected a nested array");
    flatten(v, path, t, 0);
    return t;
  }

 private:
  static void flatten(const json& v, const std::string& path, DenseTensor& t,
                      std::size_t axis) {
    if (axis == t.shape.size()) {
      t.values.push_back(number(v, path));
      return;
    }
    if (!v.is_array() || v.size() != t.shape[axis]) {
      schema_error(path, "ragged tensor: axis " + std::to_string(axis) +
                             " should have length " +
                             std::to_string(t.shape[axis]));
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
      flatten(v[j], path + "[" + std::to_string(j) + "]", t, axis + 1);
    }
  }
};

PayoffSpec payoff_from_json(const json& v, const std::string& path, int a1,
                            int a2) {
  if (!v.is_object()) schema_error(path, "expected an object");
  const std::string kind = Reader::text(Reader::key(v, path, "kind"), path + ".kind");
  if (kind == "tensor") {
    Reader::only_keys(v, path, {"kind", "u"});
    return Reader::tensor(Reader::key(v, path, "u"), path + ".u");
  }
  ParametricMatrix p;
  p.rows = a1;
  p.cols = a2;
  auto mat = [&](const char* name) {
    return Reader::matrix(Reader::key(v, path, name), path + "." + name, a1, a2);
  };
  if (kind == "affine") {
    Reader::only_keys(v, path, {"kind", "c", "d"});
    p.kind = ParametricKind::kAffine;
    p.lin = mat("c");
    p.constant = mat("d");
  } else if (kind == "quadratic") {
    Reader::only_keys(v, path, {"kind", "b", "c", "d"});
    p.kind = ParametricKind::kQuadratic;
    p.quad = mat("b");
    p.lin = mat("c");
    p.constant = mat("d");
  } else if (kind == "log_matrix") {
    Reader::only_keys(v, path, {"kind", "A", "C"});
    p.kind = ParametricKind::kLogMatrix;
    p.constant = mat("A");
    p.lin = mat("C");
  } else {
    schema_error(path + ".kind", "unknown payoff kind \"" + kind + "\"");
  }
  return p;
}

}  // namespace

BlottoInstance gen_soft_blotto_double(int n, int m1, int m2,
                                      std::uint64_t /*seed*/, Sidedness sided) {
  require_positive(n, "n");
  if (m1 < 0 || m2 < 0) throw std::invalid_argument("budgets must be >= 0");
  BlottoInstance inst;
  inst.n = n;
  inst.m1 = sided == Sidedness::kOneSided ? 0 : m1;
  inst.m2 = m2;
  inst.mode = SoldierMode::kDiscrete;
  inst.sided = sided;
  inst.aggregator = Aggregator::kSum;
  const double denom = static_cast<double>(n) * (n + 1);
  for (int i = 0; i < n; ++i) {
    const double worth = 2.0 * (i + 1) / denom;
    const int k1_max = sided == Sidedness::kOneSided ? 0 : m1;
    DenseTensor t = sided == Sidedness::kOneSided
                        ? DenseTensor::one_sided(2, 2, m2 + 1)
                        : DenseTensor::two_sided(2, 2, m1 + 1, m2 + 1);
    for (int a1 = 0; a1 < 2; ++a1) {
      for (int a2 = 0; a2 < 2; ++a2) {
        const double stake = (a1 == 1 ? 2.0 : 1.0) * (a2 == 1 ? 2.0 : 1.0);
        for (int k1 = 0; k1 <= k1_max; ++k1) {
          for (int k2 = 0; k2 <= m2; ++k2) {
            const double p =
                k1 + k2 == 0 ? 0.5 : static_cast<double>(k1) / (k1 + k2);
            t.at(a1, a2, k1, k2) = worth * stake * (1.0 - 2.0 * p);
          }
        }
      }
    }
    inst.battlefields.push_back({2, 2, std::move(t)});
  }
  return inst;
}

BlottoInstance gen_random_parametric(int n, double m2, ParametricKind kind,
                                     int a1, int a2, std::uint64_t seed) {
  require_positive(n, "n");
  require_positive(a1, "a1");
  require_positive(a2, "a2");
  if (kind == ParametricKind::kLogMatrix) {
    throw std::invalid_argument("use gen_log_security for log_matrix payoffs");
  }
  BlottoInstance inst;
  inst.n = n;
  inst.m1 = 0.0;
  inst.m2 = m2;
  inst.mode = SoldierMode::kContinuous;
  inst.sided = Sidedness::kOneSided;
  inst.aggregator = Aggregator::kMin;
  SplitMix64 rng(seed);
  const std::size_t size = static_cast<std::size_t>(a1) * a2;
  for (int i = 0; i < n; ++i) {
    ParametricMatrix p = ParametricMatrix::zeros(kind, a1, a2);
    if (kind == ParametricKind::kQuadratic) p.quad = draw(rng, size, 0.0, 100.0);
    p.lin = draw(rng, size, 0.0, 100.0);
    p.constant = draw(rng, size, 0.0, 100.0);
    inst.battlefields.push_back({a1, a2, std::move(p)});
  }
  require_valid(inst);
  return inst;
}

BlottoInstance gen_log_security(int n, double m2, int a1, int a2,
                                std::uint64_t seed) {
  require_positive(n, "n");
  require_positive(a1, "a1");
  require_positive(a2, "a2");
  BlottoInstance inst;
  inst.n = n;
  inst.m1 = 0.0;
  inst.m2 = m2;
  inst.mode = SoldierMode::kContinuous;
  inst.sided = Sidedness::kOneSided;
  inst.aggregator = Aggregator::kMin;
  SplitMix64 rng(seed);
  const std::size_t size = static_cast<std::size_t>(a1) * a2;
  for (int i = 0; i < n; ++i) {
    ParametricMatrix p = ParametricMatrix::zeros(ParametricKind::kLogMatrix, a1, a2);
    p.constant = draw(rng, size, -1.0, 1.0);
    p.lin = draw(rng, size, 0.0, 1.0);
    inst.battlefields.push_back({a1, a2, std::move(p)});
  }
  require_valid(inst);
  return inst;
}

std::string instance_to_json(const BlottoInstance& inst) {
  json out;
  out["n"] = inst.n;
  out["m1"] = inst.m1;
  out["m2"] = inst.m2;
  out["mode"] = to_string(inst.mode);
  out["sided"] = to_string(inst.sided);
  out["aggregator"] = to_string(inst.aggregator);
  json bfs = json::array();
  for (const auto& bf : inst.battlefields) {
    bfs.push_back({{"a1", bf.a1}, {"a2", bf.a2}, {"payoff", payoff_to_json(bf.payoff)}});
  }
  out["battlefields"] = std::move(bfs);
  return out.dump(2) + "\n";
}

BlottoInstance instance_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports "... at line L, column C: ..." in e.what().
    throw std::invalid_argument(std::string("malformed instance JSON: ") + e.what());
  }
  const std::string root = "$";
  Reader::only_keys(doc, root,
                    {"n", "m1", "m2", "mode", "sided", "aggregator", "battlefields"});
  BlottoInstance inst;
  inst.n = Reader::integer(Reader::key(doc, root, "n"), "$.n");
  inst.m1 = Reader::number(Reader::key(doc, root, "m1"), "$.m1");
  inst.m2 = Reader::number(Reader::key(doc, root, "m2"), "$.m2");

  const std::string mode = Reader::text(Reader::key(doc, root, "mode"), "$.mode");
  if (mode == "discrete") {
    inst.mode = SoldierMode::kDiscrete;
  } else if (mode == "continuous") {
    inst.mode = SoldierMode::kContinuous;
  } else {
    schema_error("$.mode", "expected \"discrete\" or \"continuous\"");
  }
  const std::string sided = Reader::text(Reader::key(doc, root, "sided"), "$.sided");
  if (sided == "one_sided") {
    inst.sided = Sidedness::kOneSided;
  } else if (sided == "two_sided") {
    inst.sided = Sidedness::kTwoSided;
  } else {
    schema_error("$.sided", "expected \"one_sided\" or \"two_sided\"");
  }
  const std::string agg =
      Reader::text(Reader::key(doc, root, "aggregator"), "$.aggregator");
  if (agg == "sum") {
    inst.aggregator = Aggregator::kSum;
  } else if (agg == "min") {
    inst.aggregator = Aggregator::kMin;
  } else {
    schema_error("$.aggregator", "expected \"sum\" or \"min\"");
  }

  const json& bfs = Reader::key(doc, root, "battlefields");
  if (!bfs.is_array()) schema_error("$.battlefields", "expected an array");
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    const std::string path = "$.battlefields[" + std::to_string(i) + "]";
    const json& bf = bfs[i];
    Reader::only_keys(bf, path, {"a1", "a2", "payoff"});
    BattlefieldSpec spec;
    spec.a1 = Reader::integer(Reader::key(bf, path, "a1"), path + ".a1");
    spec.a2 = Reader::integer(Reader::key(bf, path, "a2"), path + ".a2");
    if (spec.a1 < 1 || spec.a2 < 1) {
      schema_error(path, "action counts must be at least 1");
    }
    spec.payoff = payoff_from_json(Reader::key(bf, path, "payoff"),
                                   path + ".payoff", spec.a1, spec.a2);
    inst.battlefields.push_back(std::move(spec));
  }
  require_valid(inst);
  return inst;
}

BlottoInstance read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return instance_from_json(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_instance(const BlottoInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file " + path);
  out << instance_to_json(inst);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace blotto
