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

#include "blotto/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace blotto {

std::string to_string(SoldierMode mode) {
  return mode == SoldierMode::kDiscrete ? "discrete" : "continuous";
}

std::string to_string(Sidedness sided) {
  return sided == Sidedness::kOneSided ? "one_sided" : "two_sided";
}

std::string to_string(Aggregator aggregator) {
  return aggregator == Aggregator::kSum ? "sum" : "min";
}

std::string to_string(ParametricKind kind) {
  switch (kind) {
    case ParametricKind::kAffine:
      return "affine";
    case ParametricKind::kQuadratic:
      return "quadratic";
    case ParametricKind::kLogMatrix:
      return "log_matrix";
  }
  return "unknown";
}

DenseTensor DenseTensor::two_sided(int a1, int a2, int k1_size, int k2_size) {
  DenseTensor t;
  t.shape = {static_cast<std::size_t>(a1), static_cast<std::size_t>(a2),
             static_cast<std::size_t>(k1_size),
             static_cast<std::size_t>(k2_size)};
  t.values.assign(t.shape[0] * t.shape[1] * t.shape[2] * t.shape[3], 0.0);
  return t;
}

DenseTensor DenseTensor::one_sided(int a1, int a2, int k2_size) {
  DenseTensor t;
  t.shape = {static_cast<std::size_t>(a1), static_cast<std::size_t>(a2),
             static_cast<std::size_t>(k2_size)};
  t.values.assign(t.shape[0] * t.shape[1] * t.shape[2], 0.0);
  return t;
}

std::size_t DenseTensor::offset(int a1, int a2, int k1, int k2) const {
  const bool rank4 = has_k1_axis();
  if (!rank4 && shape.size() != 3) {
    throw std::invalid_argument("tensor must have rank 3 or 4");
  }
  auto check = [](int v, std::size_t dim, const char* axis) {
    if (v < 0 || static_cast<std::size_t>(v) >= dim) {
      throw std::out_of_range(std::string("tensor index out of range on axis ") +
                              axis + ": " + std::to_string(v));
    }
  };
  check(a1, shape[0], "a1");
  check(a2, shape[1], "a2");
  if (rank4) {
    check(k1, shape[2], "k1");
    check(k2, shape[3], "k2");
    return ((static_cast<std::size_t>(a1) * shape[1] + a2) * shape[2] + k1) *
               shape[3] +
           k2;
  }
  if (k1 != 0) {
    throw std::out_of_range("one-sided tensor has no k1 axis");
  }
  check(k2, shape[2], "k2");
  return (static_cast<std::size_t>(a1) * shape[1] + a2) * shape[2] + k2;
}

double DenseTensor::at(int a1, int a2, int k1, int k2) const {
  return values[offset(a1, a2, k1, k2)];
}

double& DenseTensor::at(int a1, int a2, int k1, int k2) {
  return values[offset(a1, a2, k1, k2)];
}

ParametricMatrix ParametricMatrix::zeros(ParametricKind kind, int rows,
                                         int cols) {
  ParametricMatrix p;
  p.kind = kind;
  p.rows = rows;
  p.cols = cols;
  const std::size_t size = static_cast<std::size_t>(rows) * cols;
  if (kind == ParametricKind::kQuadratic) p.quad.assign(size, 0.0);
  p.lin.assign(size, 0.0);
  p.constant.assign(size, 0.0);
  return p;
}

double ParametricMatrix::value(int a1, int a2, double sigma) const {
  if (sigma < 0.0) throw std::invalid_argument("allocation must be >= 0");
  if (a1 < 0 || a1 >= rows || a2 < 0 || a2 >= cols) {
    throw std::out_of_range("parametric entry index out of range");
  }
  const std::size_t e = index(a1, a2);
  switch (kind) {
    case ParametricKind::kAffine:
      return lin[e] * sigma + constant[e];
    case ParametricKind::kQuadratic:
      return (quad[e] * sigma + lin[e]) * sigma + constant[e];
    case ParametricKind::kLogMatrix:
      return constant[e] + lin[e] * std::log1p(sigma);
  }
  return 0.0;
}

double ParametricMatrix::derivative(int a1, int a2, double sigma) const {
  if (sigma < 0.0) throw std::invalid_argument("allocation must be >= 0");
  if (a1 < 0 || a1 >= rows || a2 < 0 || a2 >= cols) {
    throw std::out_of_range("parametric entry index out of range");
  }
  const std::size_t e = index(a1, a2);
  switch (kind) {
    case ParametricKind::kAffine:
      return lin[e];
    case ParametricKind::kQuadratic:
      return 2.0 * quad[e] * sigma + lin[e];
    case ParametricKind::kLogMatrix:
      return lin[e] / (sigma + 1.0);
  }
  return 0.0;
}

bool ParametricMatrix::is_increasing() const {
  bool any_slope = false;
  for (double v : lin) {
    if (v < 0.0) return false;
    any_slope = any_slope || v > 0.0;
  }
  for (double v : quad) {
    if (v < 0.0) return false;
    any_slope = any_slope || v > 0.0;
  }
  return any_slope;
}

int BlottoInstance::discrete_budget(Player player) const {
  if (player == Player::kOne && is_one_sided()) return 0;
  const double m = player == Player::kOne ? m1 : m2;
  return static_cast<int>(std::lround(m));
}

namespace {

std::string bf_path(std::size_t i) {
  return "battlefields[" + std::to_string(i) + "]";
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

void check_tensor(const BlottoInstance& inst, std::size_t i,
                  const BattlefieldSpec& bf, const DenseTensor& t,
                  std::vector<Violation>& out) {
  const std::string path = bf_path(i) + ".payoff.u";
  if (inst.mode != SoldierMode::kDiscrete) {
    out.push_back({path, "tensor payoffs require discrete mode"});
    return;
  }
  const std::size_t want_rank = inst.is_one_sided() ? 3 : 4;
  if (t.shape.size() != want_rank) {
    if (inst.is_one_sided() && t.shape.size() == 4) {
      out.push_back({path, "one_sided tensor must not have a k1 axis"});
    } else {
      out.push_back({path, "tensor rank " + std::to_string(t.shape.size()) +
                               ", expected " + std::to_string(want_rank)});
    }
    return;
  }
  std::vector<std::size_t> want = {static_cast<std::size_t>(bf.a1),
                                   static_cast<std::size_t>(bf.a2)};
  if (!inst.is_one_sided()) {
    want.push_back(
        static_cast<std::size_t>(inst.discrete_budget(Player::kOne)) + 1);
  }
  want.push_back(
      static_cast<std::size_t>(inst.discrete_budget(Player::kTwo)) + 1);
  static const char* kAxes[] = {"a1", "a2", "k1", "k2"};
  for (std::size_t d = 0; d < want.size(); ++d) {
    if (t.shape[d] != want[d]) {
      const char* axis = (want_rank == 3 && d == 2) ? "k2" : kAxes[d];
      out.push_back({path, std::string("dimension mismatch on axis ") + axis +
                               ": got " + std::to_string(t.shape[d]) +
                               ", expected " + std::to_string(want[d])});
    }
  }
  std::size_t expected = 1;
  for (std::size_t d : t.shape) expected *= d;
  if (t.values.size() != expected) {
    out.push_back({path, "value count does not match shape"});
  }
  if (!all_finite(t.values)) out.push_back({path, "non-finite entry"});
}

void check_parametric(const BlottoInstance& inst, std::size_t i,
                      const BattlefieldSpec& bf, const ParametricMatrix& p,
                      std::vector<Violation>& out) {
  const std::string path = bf_path(i) + ".payoff";
  if (inst.mode != SoldierMode::kContinuous) {
    out.push_back({path, "parametric payoffs require continuous mode"});
  }
  if (!inst.is_one_sided()) {
    out.push_back({path, "parametric payoffs read only Player 2's allocation; "
                         "instance must be one_sided"});
  }
  if (p.rows != bf.a1 || p.cols != bf.a2) {
    out.push_back({path, "coefficient matrix is " + std::to_string(p.rows) +
                             "x" + std::to_string(p.cols) + ", expected " +
                             std::to_string(bf.a1) + "x" +
                             std::to_string(bf.a2)});
    return;
  }
  const std::size_t size = static_cast<std::size_t>(p.rows) * p.cols;
  auto check = [&](const std::vector<double>& m, const char* name) {
    if (m.size() != size) {
      out.push_back({path + "." + name, "coefficient count mismatch"});
    } else if (!all_finite(m)) {
      out.push_back({path + "." + name, "non-finite coefficient"});
    }
  };
  const bool log = p.kind == ParametricKind::kLogMatrix;
  if (p.kind == ParametricKind::kQuadratic) check(p.quad, "b");
  check(p.lin, log ? "C" : "c");
  check(p.constant, log ? "A" : "d");
}

}  // namespace

std::vector<Violation> validate_instance(const BlottoInstance& inst) {
  std::vector<Violation> out;
  if (inst.n < 1) out.push_back({"n", "must be >= 1"});
  auto check_budget = [&](double m, const char* name) {
    if (!std::isfinite(m) || m < 0.0) {
      out.push_back({name, "budget must be a finite value >= 0"});
    } else if (inst.is_discrete() && m != std::floor(m)) {
      out.push_back({name, "discrete budget must be an integer"});
    }
  };
  check_budget(inst.m1, "m1");
  check_budget(inst.m2, "m2");
  if (inst.is_one_sided() && inst.m1 != 0.0) {
    out.push_back({"m1", "one_sided instances give Player 1 no soldiers; "
                         "m1 must be 0"});
  }
  if (inst.n >= 1 &&
      inst.battlefields.size() != static_cast<std::size_t>(inst.n)) {
    out.push_back({"battlefields", "expected " + std::to_string(inst.n) +
                                       " entries, got " +
                                       std::to_string(inst.battlefields.size())});
  }
  for (std::size_t i = 0; i < inst.battlefields.size(); ++i) {
    const BattlefieldSpec& bf = inst.battlefields[i];
    if (bf.a1 < 1) out.push_back({bf_path(i) + ".a1", "must be >= 1"});
    if (bf.a2 < 1) out.push_back({bf_path(i) + ".a2", "must be >= 1"});
    if (bf.a1 < 1 || bf.a2 < 1) continue;
    if (const auto* t = std::get_if<DenseTensor>(&bf.payoff)) {
      check_tensor(inst, i, bf, *t, out);
    } else {
      check_parametric(inst, i, bf, std::get<ParametricMatrix>(bf.payoff),
                       out);
    }
  }
  return out;
}

void require_valid(const BlottoInstance& inst) {
  const auto violations = validate_instance(inst);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid instance:";
  for (const auto& v : violations) msg << "\n  " << v.path << ": " << v.message;
  throw std::invalid_argument(msg.str());
}

double battlefield_payoff(const PayoffSpec& spec, int a1, int a2, double z1,
                          double z2) {
  if (z1 < 0.0 || z2 < 0.0) {
    throw std::invalid_argument("allocation must be >= 0");
  }
  if (const auto* t = std::get_if<DenseTensor>(&spec)) {
    const int k1 = static_cast<int>(std::lround(z1));
    const int k2 = static_cast<int>(std::lround(z2));
    return t->at(a1, a2, t->has_k1_axis() ? k1 : 0, k2);
  }
  return std::get<ParametricMatrix>(spec).value(a1, a2, z2);
}

double expected_battlefield_utility(const PayoffSpec& spec,
                                    std::span<const double> delta1,
                                    std::span<const double> delta2, double z1,
                                    double z2) {
  int rows = 0;
  int cols = 0;
  if (const auto* t = std::get_if<DenseTensor>(&spec)) {
    rows = static_cast<int>(t->shape[0]);
    cols = static_cast<int>(t->shape[1]);
  } else {
    const auto& p = std::get<ParametricMatrix>(spec);
    rows = p.rows;
    cols = p.cols;
  }
  if (static_cast<int>(delta1.size()) != rows ||
      static_cast<int>(delta2.size()) != cols) {
    throw std::invalid_argument("strategy dimension does not match subgame");
  }
  double total = 0.0;
  for (int r = 0; r < rows; ++r) {
    if (delta1[r] == 0.0) continue;
    double row = 0.0;
    for (int c = 0; c < cols; ++c) {
      row += delta2[c] * battlefield_payoff(spec, r, c, z1, z2);
    }
    total += delta1[r] * row;
  }
  return total;
}

double aggregate(std::span<const double> values, Aggregator aggregator) {
  if (values.empty()) throw std::invalid_argument("aggregate of empty list");
  if (aggregator == Aggregator::kSum) {
    return std::accumulate(values.begin(), values.end(), 0.0);
  }
  return *std::min_element(values.begin(), values.end());
}

bool is_distribution(std::span<const double> p, double tolerance) {
  if (p.empty()) return false;
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= -tolerance)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tolerance;
}

}  // namespace blotto
