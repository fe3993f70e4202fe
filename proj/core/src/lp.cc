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

#include "blotto/lp.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace blotto {

int LpModel::add_variable(std::string name, double lower, double upper) {
  const int id = static_cast<int>(variables.size());
  if (!var_by_name_.emplace(name, id).second) {
    throw std::invalid_argument("duplicate variable name: " + name);
  }
  variables.push_back({std::move(name), lower, upper});
  return id;
}

int LpModel::add_constraint(std::string name, std::vector<LpTerm> terms,
                            RowSense sense, double rhs) {
  const int id = static_cast<int>(constraints.size());
  if (!row_by_name_.emplace(name, id).second) {
    throw std::invalid_argument("duplicate constraint name: " + name);
  }
  constraints.push_back({std::move(name), std::move(terms), sense, rhs});
  return id;
}

std::optional<int> LpModel::find_variable(std::string_view name) const {
  auto it = var_by_name_.find(std::string(name));
  if (it == var_by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> LpModel::find_constraint(std::string_view name) const {
  auto it = row_by_name_.find(std::string(name));
  if (it == row_by_name_.end()) return std::nullopt;
  return it->second;
}

int LpModel::variable(std::string_view name) const {
  auto id = find_variable(name);
  if (!id) throw std::out_of_range("no variable named " + std::string(name));
  return *id;
}

int LpModel::constraint(std::string_view name) const {
  auto id = find_constraint(name);
  if (!id) throw std::out_of_range("no constraint named " + std::string(name));
  return *id;
}

std::vector<std::string> LpModel::check() const {
  std::vector<std::string> out;
  const int nv = static_cast<int>(variables.size());
  auto check_terms = [&](const std::vector<LpTerm>& terms,
                         const std::string& where) {
    for (const auto& t : terms) {
      if (t.var < 0 || t.var >= nv) {
        out.push_back(where + ": undeclared variable id " + std::to_string(t.var));
      } else if (!std::isfinite(t.coef)) {
        out.push_back(where + ": non-finite coefficient");
      }
    }
  };
  check_terms(objective, "objective");
  for (const auto& c : constraints) {
    check_terms(c.terms, c.name);
    if (!std::isfinite(c.rhs)) out.push_back(c.name + ": non-finite rhs");
  }
  for (const auto& v : variables) {
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower == kInf ||
        v.upper == -kInf) {
      out.push_back(v.name + ": invalid bounds");
    }
  }
  return out;
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

namespace {

// Equality-form problem: minimize c'x subject to A x = b, x >= 0, b >= 0.
struct StandardForm {
  int rows = 0;
  int cols = 0;
  int first_artificial = 0;
  std::vector<int> col_start;
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<double> cost;
  std::vector<double> b;
  std::vector<double> row_sign;
  std::vector<int> initial_basis;

  // Original variable j is shift[j] + sign_pos * col_pos - col_neg.
  std::vector<double> shift;
  std::vector<int> col_pos;
  std::vector<double> sign_pos;
  std::vector<int> col_neg;
};

struct Entry {
  int row;
  double value;
};

StandardForm to_standard_form(const LpModel& model, double objective_sign) {
  StandardForm sf;
  const int nv = static_cast<int>(model.variables.size());
  std::vector<std::vector<Entry>> columns;
  std::vector<double> cost;
  sf.shift.assign(nv, 0.0);
  sf.col_pos.assign(nv, -1);
  sf.sign_pos.assign(nv, 1.0);
  sf.col_neg.assign(nv, -1);

  std::vector<double> obj(nv, 0.0);
  for (const auto& t : model.objective) obj[t.var] += t.coef;

  struct BoundRow {
    int col;
    double limit;
  };
  std::vector<BoundRow> bound_rows;
  for (int j = 0; j < nv; ++j) {
    const auto& v = model.variables[j];
    const int col = static_cast<int>(columns.size());
    columns.emplace_back();
    sf.col_pos[j] = col;
    if (std::isfinite(v.lower)) {
      sf.shift[j] = v.lower;
      cost.push_back(objective_sign * obj[j]);
      if (std::isfinite(v.upper)) bound_rows.push_back({col, v.upper - v.lower});
    } else if (std::isfinite(v.upper)) {
      sf.shift[j] = v.upper;
      sf.sign_pos[j] = -1.0;
      cost.push_back(-objective_sign * obj[j]);
    } else {
      cost.push_back(objective_sign * obj[j]);
      sf.col_neg[j] = static_cast<int>(columns.size());
      columns.emplace_back();
      cost.push_back(-objective_sign * obj[j]);
    }
  }

  const int n_model_rows = static_cast<int>(model.constraints.size());
  sf.rows = n_model_rows + static_cast<int>(bound_rows.size());
  std::vector<RowSense> senses(sf.rows, RowSense::kLessEqual);
  std::vector<double> rhs(sf.rows, 0.0);
  for (int r = 0; r < n_model_rows; ++r) {
    const auto& c = model.constraints[r];
    senses[r] = c.sense;
    double adjusted = c.rhs;
    // Merge repeated variables so each column holds one entry per row.
    std::vector<std::pair<int, double>> merged;
    for (const auto& t : c.terms) merged.emplace_back(t.var, t.coef);
    std::sort(merged.begin(), merged.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t k = 0; k < merged.size();) {
      const int j = merged[k].first;
      double coef = 0.0;
      for (; k < merged.size() && merged[k].first == j; ++k) coef += merged[k].second;
      if (coef == 0.0) continue;
      adjusted -= coef * sf.shift[j];
      columns[sf.col_pos[j]].push_back({r, coef * sf.sign_pos[j]});
      if (sf.col_neg[j] >= 0) columns[sf.col_neg[j]].push_back({r, -coef});
    }
    rhs[r] = adjusted;
  }
  for (std::size_t k = 0; k < bound_rows.size(); ++k) {
    const int r = n_model_rows + static_cast<int>(k);
    columns[bound_rows[k].col].push_back({r, 1.0});
    rhs[r] = bound_rows[k].limit;
  }

  sf.row_sign.assign(sf.rows, 1.0);
  for (int r = 0; r < sf.rows; ++r) {
    if (rhs[r] < 0.0) sf.row_sign[r] = -1.0;
  }
  for (auto& col : columns) {
    for (auto& e : col) e.value *= sf.row_sign[e.row];
  }
  sf.b.resize(sf.rows);
  for (int r = 0; r < sf.rows; ++r) sf.b[r] = rhs[r] * sf.row_sign[r];

  sf.initial_basis.assign(sf.rows, -1);
  for (int r = 0; r < sf.rows; ++r) {
    if (senses[r] == RowSense::kEqual) continue;
    const double coef =
        (senses[r] == RowSense::kLessEqual ? 1.0 : -1.0) * sf.row_sign[r];
    const int col = static_cast<int>(columns.size());
    columns.push_back({{r, coef}});
    cost.push_back(0.0);
    if (coef > 0.0) sf.initial_basis[r] = col;
  }
  sf.first_artificial = static_cast<int>(columns.size());
  for (int r = 0; r < sf.rows; ++r) {
    if (sf.initial_basis[r] >= 0) continue;
    sf.initial_basis[r] = static_cast<int>(columns.size());
    columns.push_back({{r, 1.0}});
    cost.push_back(0.0);
  }

  sf.cols = static_cast<int>(columns.size());
  sf.cost = std::move(cost);
  sf.col_start.reserve(sf.cols + 1);
  sf.col_start.push_back(0);
  for (const auto& col : columns) {
    for (const auto& e : col) {
      sf.row_index.push_back(e.row);
      sf.value.push_back(e.value);
    }
    sf.col_start.push_back(static_cast<int>(sf.row_index.size()));
  }
  return sf;
}

class RevisedSimplex {
 public:
  RevisedSimplex(const StandardForm& sf, const SimplexOptions& options)
      : sf_(sf),
        opt_(options),
        m_(sf.rows),
        basis_(sf.initial_basis),
        position_(sf.cols, -1),
        binv_(static_cast<std::size_t>(m_) * m_, 0.0),
        xb_(sf.b),
        twin_(sf.cols, -1) {
    for (std::size_t j = 0; j < sf.col_neg.size(); ++j) {
      if (sf.col_neg[j] < 0) continue;
      twin_[sf.col_pos[j]] = sf.col_neg[j];
      twin_[sf.col_neg[j]] = sf.col_pos[j];
    }
    for (int r = 0; r < m_; ++r) {
      position_[basis_[r]] = r;
      binv_[static_cast<std::size_t>(r) * m_ + r] = 1.0;
    }
  }

  LpStatus run_phase_one() {
    if (sf_.first_artificial == sf_.cols) return LpStatus::kOptimal;
    std::vector<double> cost(sf_.cols, 0.0);
    for (int j = sf_.first_artificial; j < sf_.cols; ++j) cost[j] = 1.0;
    const LpStatus status = iterate(cost);
    if (status == LpStatus::kIterationLimit) return status;
    double infeasibility = 0.0;
    double scale = 1.0;
    for (double v : sf_.b) scale = std::max(scale, std::abs(v));
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] >= sf_.first_artificial) infeasibility += std::max(xb_[r], 0.0);
    }
    if (infeasibility > opt_.feasibility_tolerance * scale) {
      return LpStatus::kInfeasible;
    }
    drive_out_artificials();
    return LpStatus::kOptimal;
  }

  LpStatus run_phase_two() { return iterate(sf_.cost); }

  std::vector<double> column_values() const {
    std::vector<double> x(sf_.cols, 0.0);
    for (int r = 0; r < m_; ++r) x[basis_[r]] = std::max(xb_[r], 0.0);
    return x;
  }

  std::vector<double> row_prices(const std::vector<double>& cost) const {
    std::vector<double> y(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double c = cost[basis_[r]];
      if (c == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int k = 0; k < m_; ++k) y[k] += c * row[k];
    }
    return y;
  }

  int iterations() const { return iterations_; }

 private:
  double reduced_cost(const std::vector<double>& cost,
                      const std::vector<double>& y, int j) const {
    double d = cost[j];
    for (int p = sf_.col_start[j]; p < sf_.col_start[j + 1]; ++p) {
      d -= y[sf_.row_index[p]] * sf_.value[p];
    }
    return d;
  }

  void ftran(int j, std::vector<double>& u) const {
    std::fill(u.begin(), u.end(), 0.0);
    for (int p = sf_.col_start[j]; p < sf_.col_start[j + 1]; ++p) {
      const int k = sf_.row_index[p];
      const double a = sf_.value[p];
      for (int r = 0; r < m_; ++r) u[r] += binv_[static_cast<std::size_t>(r) * m_ + k] * a;
    }
  }

  void pivot(int leave_row, int enter, const std::vector<double>& u) {
    const double piv = u[leave_row];
    double* prow = &binv_[static_cast<std::size_t>(leave_row) * m_];
    for (int k = 0; k < m_; ++k) prow[k] /= piv;
    for (int r = 0; r < m_; ++r) {
      if (r == leave_row || u[r] == 0.0) continue;
      double* row = &binv_[static_cast<std::size_t>(r) * m_];
      const double f = u[r];
      for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }
    position_[basis_[leave_row]] = -1;
    basis_[leave_row] = enter;
    position_[enter] = leave_row;
    ++pivots_since_refactor_;
    if (pivots_since_refactor_ >= opt_.refactor_every) refactor();
  }

  // Rebuilds the basis inverse by Gauss-Jordan elimination with partial
  // pivoting and recomputes the basic solution.
  void refactor() {
    pivots_since_refactor_ = 0;
    std::vector<double> a(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const int j = basis_[r];
      for (int p = sf_.col_start[j]; p < sf_.col_start[j + 1]; ++p) {
        a[static_cast<std::size_t>(sf_.row_index[p]) * m_ + r] = sf_.value[p];
      }
    }
    std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) inv[static_cast<std::size_t>(r) * m_ + r] = 1.0;
    for (int c = 0; c < m_; ++c) {
      int best = c;
      for (int r = c + 1; r < m_; ++r) {
        if (std::abs(a[static_cast<std::size_t>(r) * m_ + c]) >
            std::abs(a[static_cast<std::size_t>(best) * m_ + c])) {
          best = r;
        }
      }
      if (std::abs(a[static_cast<std::size_t>(best) * m_ + c]) < 1e-14) {
        return;  // Keep the product-form inverse if the basis looks singular.
      }
      if (best != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(a[static_cast<std::size_t>(best) * m_ + k],
                    a[static_cast<std::size_t>(c) * m_ + k]);
          std::swap(inv[static_cast<std::size_t>(best) * m_ + k],
                    inv[static_cast<std::size_t>(c) * m_ + k]);
        }
      }
      const double piv = a[static_cast<std::size_t>(c) * m_ + c];
      for (int k = 0; k < m_; ++k) {
        a[static_cast<std::size_t>(c) * m_ + k] /= piv;
        inv[static_cast<std::size_t>(c) * m_ + k] /= piv;
      }
      for (int r = 0; r < m_; ++r) {
        const double f = a[static_cast<std::size_t>(r) * m_ + c];
        if (r == c || f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          a[static_cast<std::size_t>(r) * m_ + k] -= f * a[static_cast<std::size_t>(c) * m_ + k];
          inv[static_cast<std::size_t>(r) * m_ + k] -= f * inv[static_cast<std::size_t>(c) * m_ + k];
        }
      }
    }
    binv_ = std::move(inv);
    for (int r = 0; r < m_; ++r) {
      double v = 0.0;
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int k = 0; k < m_; ++k) v += row[k] * sf_.b[k];
      xb_[r] = v;
    }
  }

  LpStatus iterate(const std::vector<double>& cost) {
    std::vector<double> u(m_);
    const long degenerate_limit = 5L * (m_ + sf_.cols);
    long degenerate_run = 0;
    while (true) {
      if (iterations_ >= opt_.max_iterations) return LpStatus::kIterationLimit;
      const bool bland = degenerate_run > degenerate_limit;
      const std::vector<double> y = row_prices(cost);
      int enter = -1;
      double best = -opt_.optimality_tolerance;
      for (int j = 0; j < sf_.first_artificial; ++j) {
        if (position_[j] >= 0) continue;
        // The two halves of a split free variable have opposite columns, so
        // one can never improve while the other is basic.
        if (twin_[j] >= 0 && position_[twin_[j]] >= 0) continue;
        const double d = reduced_cost(cost, y, j);
        if (d < best) {
          best = d;
          enter = j;
          if (bland) break;
        }
      }
      if (enter < 0) {
        if (pivots_since_refactor_ == 0) return LpStatus::kOptimal;
        refactor();  // re-price on a fresh inverse
        continue;
      }
      ftran(enter, u);

      int leave = -1;
      double theta = kInf;
      for (int r = 0; r < m_; ++r) {
        const bool artificial = basis_[r] >= sf_.first_artificial;
        double ratio;
        if (u[r] > opt_.pivot_tolerance) {
          ratio = std::max(xb_[r], 0.0) / u[r];
        } else if (artificial && u[r] < -opt_.pivot_tolerance &&
                   xb_[r] <= opt_.feasibility_tolerance) {
          ratio = 0.0;  // An artificial at zero must not grow.
        } else {
          continue;
        }
        if (leave < 0 || ratio < theta - 1e-12) {
          theta = ratio;
          leave = r;
        } else if (ratio <= theta + 1e-12 && basis_[r] < basis_[leave]) {
          theta = std::min(theta, ratio);
          leave = r;
        }
      }
      if (leave < 0) {
        // Confirm on a fresh factorization before giving up: drift in the
        // product-form inverse can fake a ray.
        if (pivots_since_refactor_ == 0) return LpStatus::kUnbounded;
        refactor();
        continue;
      }
      for (int r = 0; r < m_; ++r) xb_[r] -= theta * u[r];
      xb_[leave] = theta;
      pivot(leave, enter, u);
      ++iterations_;
      degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;
    }
  }

  void drive_out_artificials() {
    std::vector<double> u(m_);
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < sf_.first_artificial) continue;
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int j = 0; j < sf_.first_artificial; ++j) {
        if (position_[j] >= 0) continue;
        double alpha = 0.0;
        for (int p = sf_.col_start[j]; p < sf_.col_start[j + 1]; ++p) {
          alpha += row[sf_.row_index[p]] * sf_.value[p];
        }
        if (std::abs(alpha) > 1e-7) {
          ftran(j, u);
          const double level = xb_[r] / u[r];
          for (int q = 0; q < m_; ++q) xb_[q] -= level * u[q];
          xb_[r] = level;
          pivot(r, j, u);
          break;
        }
      }
    }
  }

  const StandardForm& sf_;
  const SimplexOptions& opt_;
  int m_;
  std::vector<int> basis_;
  std::vector<int> position_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  std::vector<int> twin_;
  int iterations_ = 0;
  int pivots_since_refactor_ = 0;
};

}  // namespace

LpSolution solve_lp(const LpModel& model, const SimplexOptions& options) {
  const auto problems = model.check();
  if (!problems.empty()) {
    throw std::invalid_argument("malformed LP: " + problems.front());
  }
  LpSolution sol;
  for (const auto& v : model.variables) {
    if (v.lower > v.upper) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
  }
  const double sign = model.sense == ObjectiveSense::kMinimize ? 1.0 : -1.0;
  const StandardForm sf = to_standard_form(model, sign);
  RevisedSimplex simplex(sf, options);
  LpStatus status = simplex.run_phase_one();
  if (status == LpStatus::kOptimal) status = simplex.run_phase_two();
  sol.status = status;
  sol.iterations = simplex.iterations();
  if (status != LpStatus::kOptimal) return sol;

  const std::vector<double> x = simplex.column_values();
  const int nv = static_cast<int>(model.variables.size());
  sol.primal.resize(nv);
  for (int j = 0; j < nv; ++j) {
    double v = sf.shift[j] + sf.sign_pos[j] * x[sf.col_pos[j]];
    if (sf.col_neg[j] >= 0) v -= x[sf.col_neg[j]];
    sol.primal[j] = v;
  }
  for (const auto& t : model.objective) sol.objective += t.coef * sol.primal[t.var];

  const std::vector<double> y = simplex.row_prices(sf.cost);
  sol.dual.resize(model.constraints.size());
  for (std::size_t r = 0; r < model.constraints.size(); ++r) {
    sol.dual[r] = sign * sf.row_sign[r] * y[r];
  }
  return sol;
}

double primal_residual(const LpModel& model, const std::vector<double>& primal) {
  double worst = 0.0;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const auto& v = model.variables[j];
    worst = std::max(worst, v.lower - primal[j]);
    worst = std::max(worst, primal[j] - v.upper);
  }
  for (const auto& c : model.constraints) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * primal[t.var];
    const double diff = lhs - c.rhs;
    switch (c.sense) {
      case RowSense::kLessEqual:
        worst = std::max(worst, diff);
        break;
      case RowSense::kGreaterEqual:
        worst = std::max(worst, -diff);
        break;
      case RowSense::kEqual:
        worst = std::max(worst, std::abs(diff));
        break;
    }
  }
  return worst;
}

double complementary_slackness_residual(const LpModel& model,
                                        const LpSolution& solution) {
  double worst = 0.0;
  for (std::size_t r = 0; r < model.constraints.size(); ++r) {
    const auto& c = model.constraints[r];
    if (c.sense == RowSense::kEqual) continue;
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * solution.primal[t.var];
    worst = std::max(worst, std::abs((lhs - c.rhs) * solution.dual[r]));
  }
  return worst;
}

namespace {

std::string format_number(double v) {
  if (v == 0.0) return "0";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view token, int line) {
  if (token == "inf" || token == "+inf") return kInf;
  if (token == "-inf") return -kInf;
  double v = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++begin;
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::invalid_argument("line " + std::to_string(line) +
                                ": expected a number, got '" +
                                std::string(token) + "'");
  }
  return v;
}

void check_name(const std::string& name) {
  const bool bad_start =
      name.empty() || std::isdigit(static_cast<unsigned char>(name[0])) ||
      name[0] == '.' || name[0] == '+' || name[0] == '-';
  const bool bad_char = std::any_of(name.begin(), name.end(), [](char ch) {
    return std::isspace(static_cast<unsigned char>(ch)) || ch == ':' ||
           ch == '\\' || ch == '<' || ch == '>' || ch == '=';
  });
  if (bad_start || bad_char) {
    throw std::invalid_argument("name not representable in LP format: '" +
                                name + "'");
  }
}

constexpr std::size_t kWrapColumn = 200;

void append_terms(std::string& out, std::size_t line_start,
                  const std::vector<LpTerm>& terms, const LpModel& model) {
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    std::string piece;
    if (k == 0) {
      piece = format_number(t.coef) + " " + model.variables[t.var].name;
    } else {
      piece = std::string(t.coef < 0 ? "- " : "+ ") +
              format_number(std::abs(t.coef)) + " " +
              model.variables[t.var].name;
    }
    if (k > 0 && out.size() - line_start + piece.size() + 1 > kWrapColumn) {
      out += "\n  ";
      line_start = out.size() - 2;
    } else {
      out += ' ';
    }
    out += piece;
  }
}

}  // namespace

std::string export_lp_text(const LpModel& model) {
  const auto problems = model.check();
  if (!problems.empty()) {
    throw std::invalid_argument("malformed LP: " + problems.front());
  }
  const int nv = static_cast<int>(model.variables.size());
  for (const auto& v : model.variables) check_name(v.name);
  for (const auto& c : model.constraints) {
    check_name(c.name);
    if (c.terms.empty()) {
      throw std::invalid_argument("constraint without terms: " + c.name);
    }
  }

  // Canonical variable order: first appearance in objective then rows, then
  // the rest by index. Parsing assigns ids in exactly this order.
  std::vector<int> order;
  std::vector<bool> seen(nv, false);
  std::vector<bool> used(nv, false);
  auto visit = [&](const std::vector<LpTerm>& terms) {
    for (const auto& t : terms) {
      used[t.var] = true;
      if (!seen[t.var]) {
        seen[t.var] = true;
        order.push_back(t.var);
      }
    }
  };
  visit(model.objective);
  for (const auto& c : model.constraints) visit(c.terms);
  for (int j = 0; j < nv; ++j) {
    if (!seen[j]) order.push_back(j);
  }

  std::string out;
  if (!model.setting.empty()) out += "\\ setting: " + model.setting + "\n";
  out += model.sense == ObjectiveSense::kMinimize ? "Minimize\n" : "Maximize\n";
  out += " obj:";
  if (model.objective.empty()) {
    out += " 0";
  } else {
    const std::size_t start = out.size() - 5;
    append_terms(out, start, model.objective, model);
  }
  out += "\nSubject To\n";
  for (const auto& c : model.constraints) {
    const std::size_t start = out.size();
    out += " " + c.name + ":";
    append_terms(out, start, c.terms, model);
    switch (c.sense) {
      case RowSense::kLessEqual:
        out += " <= ";
        break;
      case RowSense::kGreaterEqual:
        out += " >= ";
        break;
      case RowSense::kEqual:
        out += " = ";
        break;
    }
    out += format_number(c.rhs) + "\n";
  }
  out += "Bounds\n";
  for (int j : order) {
    const auto& v = model.variables[j];
    const bool lo_inf = std::isinf(v.lower);
    const bool hi_inf = std::isinf(v.upper);
    if (lo_inf && hi_inf) {
      out += " " + v.name + " free\n";
    } else if (!lo_inf && v.lower == v.upper) {
      out += " " + v.name + " = " + format_number(v.lower) + "\n";
    } else if (hi_inf) {
      if (v.lower != 0.0 || !used[j]) {
        out += " " + v.name + " >= " + format_number(v.lower) + "\n";
      }
    } else {
      out += " " + format_number(v.lower) + " <= " + v.name +
             " <= " + format_number(v.upper) + "\n";
    }
  }
  out += "End\n";
  return out;
}

LpModel parse_lp_text(std::string_view text) {
  LpModel model;
  enum class Section { kNone, kObjective, kConstraints, kBounds, kEnd };
  Section section = Section::kNone;

  struct Token {
    std::string text;
    int line;
  };
  std::vector<Token> objective_tokens;
  std::vector<Token> constraint_tokens;
  std::vector<std::vector<Token>> bound_lines;
  bool have_sense = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.front() == '\\') {
      constexpr std::string_view kSetting = "\\ setting: ";
      if (line.substr(0, kSetting.size()) == kSetting) {
        model.setting = std::string(line.substr(kSetting.size()));
      }
      continue;
    }
    std::istringstream words{std::string(line)};
    std::vector<Token> tokens;
    for (std::string w; words >> w;) tokens.push_back({w, line_no});
    if (tokens.empty()) continue;
    std::string head = tokens[0].text;
    std::transform(head.begin(), head.end(), head.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (tokens.size() == 1 && (head == "minimize" || head == "maximize")) {
      model.sense = head == "minimize" ? ObjectiveSense::kMinimize
                                       : ObjectiveSense::kMaximize;
      have_sense = true;
      section = Section::kObjective;
      continue;
    }
    if (tokens.size() == 2 && head == "subject") {
      section = Section::kConstraints;
      continue;
    }
    if (tokens.size() == 1 && head == "bounds") {
      section = Section::kBounds;
      continue;
    }
    if (tokens.size() == 1 && head == "end") {
      section = Section::kEnd;
      continue;
    }
    switch (section) {
      case Section::kObjective:
        objective_tokens.insert(objective_tokens.end(), tokens.begin(), tokens.end());
        break;
      case Section::kConstraints:
        constraint_tokens.insert(constraint_tokens.end(), tokens.begin(), tokens.end());
        break;
      case Section::kBounds:
        bound_lines.push_back(tokens);
        break;
      default:
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": content outside of a section");
    }
  }
  if (!have_sense) throw std::invalid_argument("missing Minimize/Maximize");
  if (section != Section::kEnd) throw std::invalid_argument("missing End");

  auto var_id = [&](const std::string& name) {
    if (auto id = model.find_variable(name)) return *id;
    return model.add_variable(name);
  };
  auto fail = [](int line, const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line) + ": " + msg);
  };
  // Reads "c x (+|- c x)*" starting at tokens[k]; stops at a sense token or
  // a label.
  auto read_terms = [&](const std::vector<Token>& tokens, std::size_t& k) {
    std::vector<LpTerm> terms;
    bool first = true;
    while (k < tokens.size()) {
      const std::string& t = tokens[k].text;
      if (t == "<=" || t == ">=" || t == "=" || t.back() == ':') break;
      double sign = 1.0;
      if (!first) {
        if (t != "+" && t != "-") fail(tokens[k].line, "expected + or -");
        sign = t == "-" ? -1.0 : 1.0;
        ++k;
      }
      if (k + 1 >= tokens.size()) fail(tokens.back().line, "truncated term");
      const double coef = parse_number(tokens[k].text, tokens[k].line);
      terms.push_back({var_id(tokens[k + 1].text), sign * coef});
      k += 2;
      first = false;
    }
    return terms;
  };

  if (objective_tokens.empty() || objective_tokens[0].text != "obj:") {
    throw std::invalid_argument("objective must be labelled 'obj:'");
  }
  if (objective_tokens.size() == 2 && objective_tokens[1].text == "0") {
    // Empty objective.
  } else {
    std::size_t k = 1;
    model.objective = read_terms(objective_tokens, k);
    if (k != objective_tokens.size()) fail(objective_tokens[k].line, "unexpected token");
  }

  for (std::size_t k = 0; k < constraint_tokens.size();) {
    const Token& label = constraint_tokens[k];
    if (label.text.size() < 2 || label.text.back() != ':') {
      fail(label.line, "expected a constraint label");
    }
    ++k;
    std::vector<LpTerm> terms = read_terms(constraint_tokens, k);
    if (k + 1 >= constraint_tokens.size()) fail(label.line, "missing sense or rhs");
    const std::string& s = constraint_tokens[k].text;
    RowSense sense = RowSense::kEqual;
    if (s == "<=") {
      sense = RowSense::kLessEqual;
    } else if (s == ">=") {
      sense = RowSense::kGreaterEqual;
    } else if (s != "=") {
      fail(constraint_tokens[k].line, "expected <=, >= or =");
    }
    const double rhs =
        parse_number(constraint_tokens[k + 1].text, constraint_tokens[k + 1].line);
    k += 2;
    model.add_constraint(label.text.substr(0, label.text.size() - 1),
                         std::move(terms), sense, rhs);
  }

  for (const auto& b : bound_lines) {
    const int line = b[0].line;
    if (b.size() == 2 && b[1].text == "free") {
      auto& v = model.variables[var_id(b[0].text)];
      v.lower = -kInf;
      v.upper = kInf;
    } else if (b.size() == 3 && (b[1].text == "=" || b[1].text == ">=" ||
                                 b[1].text == "<=")) {
      auto& v = model.variables[var_id(b[0].text)];
      const double val = parse_number(b[2].text, line);
      if (b[1].text == "=") {
        v.lower = v.upper = val;
      } else if (b[1].text == ">=") {
        v.lower = val;
      } else {
        v.upper = val;
      }
    } else if (b.size() == 5 && b[1].text == "<=" && b[3].text == "<=") {
      const double lo = parse_number(b[0].text, line);
      const double hi = parse_number(b[4].text, line);
      auto& v = model.variables[var_id(b[2].text)];
      v.lower = lo;
      v.upper = hi;
    } else {
      fail(line, "unrecognized bound");
    }
  }
  return model;
}

std::string solution_to_json(const LpModel& model, const LpSolution& solution) {
  nlohmann::json j;
  j["status"] = to_string(solution.status);
  j["value"] = solution.objective;
  j["iterations"] = solution.iterations;
  nlohmann::json primal = nlohmann::json::object();
  nlohmann::json dual = nlohmann::json::object();
  if (solution.status == LpStatus::kOptimal) {
    for (std::size_t v = 0; v < model.variables.size(); ++v) {
      primal[model.variables[v].name] = solution.primal[v];
    }
    for (std::size_t r = 0; r < model.constraints.size(); ++r) {
      dual[model.constraints[r].name] = solution.dual[r];
    }
  }
  j["primal"] = std::move(primal);
  j["dual"] = std::move(dual);
  return j.dump(2) + "\n";
}

}  // namespace blotto
