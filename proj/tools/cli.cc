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

#include "cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "blotto/instances.h"
#include "blotto/lp.h"
#include "blotto/lp_builders.h"
#include "blotto/oracles.h"
#include "blotto/regret.h"
#include "blotto/strategy_io.h"
#include "blotto/subgradient.h"

namespace blotto::cli {
namespace {

using Clock = std::chrono::steady_clock;

// Raised for inputs that fail validation; mapped to kExitValidation.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  try {
    return read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw ValidationError(e.what());
  }
}

BlottoInstance load_instance(const std::string& path) {
  try {
    return instance_from_json(read_input(path));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string fmt(double v, int precision = 10) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

LpSide parse_side(const std::string& s) {
  return s == "minmax" ? LpSide::kMinMax : LpSide::kMaxMin;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string kind = "doubling";
  int n = 2;
  double m1 = 1;
  double m2 = 1;
  int a1 = 2;
  int a2 = 2;
  std::string sided = "two_sided";
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& a, std::ostream& out) {
  BlottoInstance inst;
  if (a.kind == "doubling") {
    if (a.m1 != std::floor(a.m1) || a.m2 != std::floor(a.m2)) {
      throw ValidationError("doubling instances need integer budgets");
    }
    inst = gen_soft_blotto_double(a.n, static_cast<int>(a.m1), static_cast<int>(a.m2),
                                  a.seed,
                                  a.sided == "one_sided" ? Sidedness::kOneSided
                                                         : Sidedness::kTwoSided);
  } else if (a.kind == "affine") {
    inst = gen_random_parametric(a.n, a.m2, ParametricKind::kAffine, a.a1, a.a2, a.seed);
  } else if (a.kind == "quadratic") {
    inst = gen_random_parametric(a.n, a.m2, ParametricKind::kQuadratic, a.a1, a.a2, a.seed);
  } else {
    inst = gen_log_security(a.n, a.m2, a.a1, a.a2, a.seed);
  }
  emit(a.out, instance_to_json(inst), out);
  return kExitOk;
}

// ---- solve-lp / export-lp --------------------------------------------------

struct LpArgs {
  std::string instance;
  std::string side = "maxmin";
  std::string out;
  std::string solution;
  std::string strategy1;
  std::string strategy2;
};

int run_solve_lp(const LpArgs& a, std::ostream& out, std::ostream& err) {
  const BlottoInstance inst = load_instance(a.instance);
  const LpModel model = build_lp(inst, parse_side(a.side));
  const LpSolution sol = solve_lp(model);
  if (!a.solution.empty()) write_text_file(a.solution, solution_to_json(model, sol));
  if (sol.status != LpStatus::kOptimal) {
    err << "LP status: " << to_string(sol.status) << "\n";
    return kExitSolver;
  }
  const Equilibrium eq = extract_equilibrium(inst, model, sol);
  if (!a.strategy1.empty()) write_text_file(a.strategy1, strategy_to_csv(eq.seq1));
  if (!a.strategy2.empty()) write_text_file(a.strategy2, strategy_to_csv(eq.seq2));
  emit(a.out, equilibrium_to_json(eq), out);
  return kExitOk;
}

int run_export_lp(const LpArgs& a, std::ostream& out) {
  const BlottoInstance inst = load_instance(a.instance);
  emit(a.out, export_lp_text(build_lp(inst, parse_side(a.side))), out);
  return kExitOk;
}

// ---- learn -----------------------------------------------------------------

struct LearnArgs {
  std::string instance;
  std::string algorithm = "rm+";
  std::string update_mode = "simultaneous";
  std::string averaging = "uniform";
  int gap_check_every = 100;
  double gap_threshold = 0.002;
  int max_iters = 100000;
  std::uint64_t seed = 0;
  std::string trace;
  std::string profiles;
  std::string strategy1;
  std::string strategy2;
};

int run_learn(const LearnArgs& a, std::ostream& out) {
  const BlottoInstance inst = load_instance(a.instance);
  LearnConfig cfg;
  cfg.algorithm = parse_regret_algorithm(a.algorithm);
  cfg.update_mode = parse_update_mode(a.update_mode);
  cfg.averaging = parse_averaging(a.averaging);
  cfg.gap_check_every = a.gap_check_every;
  cfg.gap_threshold = a.gap_threshold;
  cfg.max_iters = a.max_iters;
  cfg.seed = a.seed;
  const SelfPlayResult r = self_play(inst, cfg);
  emit(a.trace, trace_to_csv(r.trace), out);
  if (!a.strategy1.empty()) write_text_file(a.strategy1, strategy_to_csv(r.average1));
  if (!a.strategy2.empty()) write_text_file(a.strategy2, strategy_to_csv(r.average2));
  if (!a.profiles.empty()) {
    const SeqForm s1 = r.average1;
    const SeqForm s2 = r.average2;
    nlohmann::json j = {
        {"value", r.value},
        {"gap", r.gap},
        {"converged", r.trace.converged},
        {"iterations", r.trace.iterations},
        {"player1", nlohmann::json::parse(profile_to_json(
                        to_behavioral(inst, Player::kOne, s1, s2)))},
        {"player2", nlohmann::json::parse(profile_to_json(
                        to_behavioral(inst, Player::kTwo, s2, s1)))}};
    write_text_file(a.profiles, j.dump(2) + "\n");
  }
  return kExitOk;
}

// ---- ascend ----------------------------------------------------------------

struct AscendArgs {
  std::string instance;
  double eta0 = 0.01;
  std::string schedule = "diminishing";
  int max_iters = 1000;
  std::string init = "uniform";
  std::vector<double> initial;
  int snapshot_every = 1;
  std::string trace;
  std::string out;
};

int run_ascend(const AscendArgs& a, std::ostream& out) {
  const BlottoInstance inst = load_instance(a.instance);
  AscentConfig cfg;
  cfg.eta0 = a.eta0;
  cfg.schedule = a.schedule == "constant" ? StepSchedule::kConstant
                                          : StepSchedule::kDiminishing;
  cfg.max_iters = a.max_iters;
  cfg.init = a.init == "given" ? AscentInit::kGiven : AscentInit::kUniform;
  cfg.initial = a.initial;
  cfg.snapshot_every = a.snapshot_every;
  const AscentResult r = run_psa(inst, cfg);
  emit(a.trace, ascent_trace_to_csv(r.trace, inst.n), out);
  if (!a.out.empty()) {
    const nlohmann::json j = {{"sigma", r.sigma}, {"value", r.value}};
    write_text_file(a.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

// ---- gap -------------------------------------------------------------------

struct GapArgs {
  std::string instance;
  std::string strategy1;
  std::string strategy2;
};

void require_feasible(const SeqForm& s, const std::string& what) {
  std::vector<Violation> v;
  if (const auto* flow = std::get_if<SequenceStrategy>(&s)) {
    v = check_sequence_strategy(*flow);
  } else {
    v = check_two_level(std::get<TwoLevelSeqStrategy>(s));
  }
  if (!v.empty()) {
    throw ValidationError(what + ": " + v.front().path + ": " + v.front().message);
  }
}

int run_gap(const GapArgs& a, std::ostream& out) {
  const BlottoInstance inst = load_instance(a.instance);
  SeqForm x1, x2;
  try {
    x1 = strategy_from_csv(read_input(a.strategy1), inst, Player::kOne);
    x2 = strategy_from_csv(read_input(a.strategy2), inst, Player::kTwo);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  require_feasible(x1, a.strategy1);
  require_feasible(x2, a.strategy2);
  const nlohmann::json j = {{"gap", saddle_point_gap(inst, x1, x2)},
                            {"value", profile_value(inst, x1, x2)}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

class Checker {
 public:
  explicit Checker(std::ostream& out) : out_(out) {}

  void near(const std::string& name, double got, double want, double tol) {
    const bool ok = std::abs(got - want) <= tol;
    out_ << (ok ? "PASS " : "FAIL ") << name << " computed=" << fmt(got)
         << " expected=" << fmt(want) << " tol=" << fmt(tol, 3) << "\n";
    failed_ |= !ok;
  }
  void holds(const std::string& name, bool ok, const std::string& detail) {
    out_ << (ok ? "PASS " : "FAIL ") << name << " " << detail << "\n";
    failed_ |= !ok;
  }
  bool failed() const { return failed_; }

 private:
  std::ostream& out_;
  bool failed_ = false;
};

BlottoInstance linear_min_instance(const std::vector<double>& slopes, double m2) {
  BlottoInstance inst;
  inst.n = static_cast<int>(slopes.size());
  inst.m1 = 0.0;
  inst.m2 = m2;
  inst.mode = SoldierMode::kContinuous;
  inst.sided = Sidedness::kOneSided;
  inst.aggregator = Aggregator::kMin;
  for (double c : slopes) {
    ParametricMatrix p = ParametricMatrix::zeros(ParametricKind::kAffine, 1, 1);
    p.lin[0] = c;
    inst.battlefields.push_back({1, 1, p});
  }
  return inst;
}

int run_verify(std::ostream& out) {
  Checker c(out);

  const auto d = ce_discrete_two_sided_min();
  c.near("discrete_two_sided_min.minmax", d.minmax, 0.8, 1e-3);
  c.near("discrete_two_sided_min.maxmin", d.maxmin, 2.0 / 3.0, 1e-3);
  c.holds("discrete_two_sided_min.no_equilibrium", d.maxmin < d.minmax,
          "maxmin=" + fmt(d.maxmin) + " minmax=" + fmt(d.minmax));

  const auto t = ce_continuous_two_sided();
  c.near("continuous_two_sided.sum.maxmin", t.sum_maxmin, 1.0, 1e-3);
  c.near("continuous_two_sided.sum.minmax", t.sum_minmax, 1.5, 1e-3);
  c.near("continuous_two_sided.min.maxmin", t.min_maxmin, 0.0, 1e-3);
  c.near("continuous_two_sided.min.minmax", t.min_minmax, 0.5, 1e-3);

  const auto s = ce_one_sided_sum_continuous();
  c.near("one_sided_sum.maxmin", s.maxmin, 4.0 - std::sqrt(2.0), 1e-3);
  c.near("one_sided_sum.minmax", s.minmax, 3.0, 1e-3);
  c.holds("one_sided_sum.no_equilibrium", s.maxmin < s.minmax,
          "maxmin=" + fmt(s.maxmin) + " minmax=" + fmt(s.minmax));

  const auto m = ce_one_sided_min_discontinuous();
  const double y = m.root;
  const double quartic = (((y - 6.0) * y + 14.0) * y - 13.0) * y + 4.0;
  c.near("one_sided_min.maxmin", m.maxmin, 0.0, 1e-9);
  c.near("one_sided_min.quartic_residual", quartic, 0.0, 1e-8);
  c.near("one_sided_min.minmax_vs_nested_search", m.minmax, m.minmax_numeric, 1e-3);
  c.near("one_sided_min.allocation_equalizes", 2.0 - m.allocation, m.root, 1e-7);

  struct Micro {
    int n, m1, m2;
  };
  for (const Micro& mi : {Micro{1, 1, 1}, Micro{2, 1, 1}, Micro{2, 2, 1}, Micro{3, 2, 2}}) {
    const BlottoInstance inst = gen_soft_blotto_double(mi.n, mi.m1, mi.m2);
    const std::string tag = "doubling_n" + std::to_string(mi.n) + "_m" +
                            std::to_string(mi.m1) + "_" + std::to_string(mi.m2);
    const Equilibrium eq = solve_equilibrium(inst);
    c.near(tag + ".lp_vs_brute_force", eq.value,
           brute_force_discrete_value(inst).maxmin, 1e-6);
    c.near(tag + ".equilibrium_gap", saddle_point_gap(inst, eq.seq1, eq.seq2), 0.0, 1e-5);
  }
  {
    BlottoInstance inst = gen_soft_blotto_double(2, 1, 2, 0, Sidedness::kOneSided);
    inst.aggregator = Aggregator::kMin;
    const DiscreteValue bf = brute_force_discrete_value(inst);
    c.near("one_sided_min_discrete.maxmin_lp_vs_brute_force",
           solve_equilibrium(inst, LpSide::kMaxMin).value, bf.maxmin, 1e-6);
    c.near("one_sided_min_discrete.minmax_lp_vs_brute_force",
           solve_equilibrium(inst, LpSide::kMinMax).value, bf.minmax, 1e-6);
  }
  {
    const GridMaximum g = grid_max_V(linear_min_instance({1.0, 2.0}, 3.0), 300);
    c.near("grid_max.equalizing_split.value", g.value, 2.0, 1e-6);
    c.near("grid_max.equalizing_split.sigma0", g.sigma[0], 2.0, 1e-6);
  }
  return c.failed() ? kExitValidation : kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::vector<int> n{2, 3, 4};
  int m1 = 3;
  int m2 = 3;
  int seeds = 1;
  int max_iters = 20000;
  int threads = 0;
  std::string out;
};

struct BenchRow {
  int n = 0;
  std::uint64_t seed = 0;
  int dim1 = 0;
  int dim2 = 0;
  double lp_value = 0.0;
  double lp_time = 0.0;
  double rm_value = 0.0;
  double rm_gap = 0.0;
  int rm_iters = 0;
  double rm_time = 0.0;
};

int worker_count(int requested, std::size_t jobs) {
  int cap = requested > 0 ? requested
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("BLOTTO_THREADS")) {
    const int limit = std::atoi(env);
    if (limit > 0) cap = std::min(cap, limit);
  }
  return std::max(1, std::min<int>(cap, static_cast<int>(jobs)));
}

int run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<int, std::uint64_t>> jobs;
  for (int n : a.n) {
    for (int s = 0; s < a.seeds; ++s) jobs.emplace_back(n, static_cast<std::uint64_t>(s));
  }
  std::vector<BenchRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  bool failed = false;
  auto work = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      BenchRow& row = rows[j];
      row.n = jobs[j].first;
      row.seed = jobs[j].second;
      try {
        const BlottoInstance inst = gen_soft_blotto_double(row.n, a.m1, a.m2, row.seed);
        row.dim1 = dag_for_player(inst, Player::kOne)->dim();
        row.dim2 = dag_for_player(inst, Player::kTwo)->dim();
        auto t0 = Clock::now();
        row.lp_value = solve_equilibrium(inst).value;
        auto t1 = Clock::now();
        LearnConfig cfg;
        cfg.max_iters = a.max_iters;
        const SelfPlayResult r = self_play(inst, cfg);
        auto t2 = Clock::now();
        row.lp_time = std::chrono::duration<double>(t1 - t0).count();
        row.rm_time = std::chrono::duration<double>(t2 - t1).count();
        row.rm_value = r.value;
        row.rm_gap = r.gap;
        row.rm_iters = r.trace.iterations;
      } catch (const std::exception& e) {
        std::lock_guard lock(err_mu);
        err << "bench n=" << row.n << " seed=" << row.seed << ": " << e.what() << "\n";
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = worker_count(a.threads, jobs.size());
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv << "n,m1,m2,seed,dim1,dim2,lp_value,lp_time_s,rm_value,rm_gap,rm_iters,rm_time_s\n";
  for (const BenchRow& r : rows) {
    csv << r.n << ',' << a.m1 << ',' << a.m2 << ',' << r.seed << ',' << r.dim1 << ','
        << r.dim2 << ',' << fmt(r.lp_value) << ',' << fmt(r.lp_time, 6) << ','
        << fmt(r.rm_value) << ',' << fmt(r.rm_gap) << ',' << r.rm_iters << ','
        << fmt(r.rm_time, 6) << '\n';
  }
  emit(a.out, csv.str(), out);
  return failed ? kExitSolver : kExitOk;
}

void add_config_flag(CLI::App* sub) {
  sub->add_option("--config", "JSON file with default flag values");
}

}  // namespace

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (path.empty() || out.size() < 2) return args;

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const std::exception& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config " + path + ": expected an object");
  std::vector<std::string> flags;
  auto scalar = [&](const std::string& key, const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw std::invalid_argument("config " + path + ": $." + key +
                                ": expected a string, number, boolean or array");
  };
  for (const auto& [key, v] : j.items()) {
    if (v.is_boolean()) {
      if (v.get<bool>()) flags.push_back("--" + key);
    } else if (v.is_array()) {
      flags.push_back("--" + key);
      for (const auto& e : v) flags.push_back(scalar(key, e));
    } else {
      flags.push_back("--" + key + "=" + scalar(key, v));
    }
  }
  // Insert after the subcommand (the first token after the program name).
  out.insert(out.begin() + 2, flags.begin(), flags.end());
  return out;
}

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Two-level Colonel Blotto solvers", "blotto"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--kind", gen.kind, "Instance family")
      ->check(CLI::IsMember({"doubling", "affine", "quadratic", "log_matrix"}))
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Battlefields")->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--m1", gen.m1, "Player 1 budget")->capture_default_str();
  gen_cmd->add_option("--m2", gen.m2, "Player 2 budget")->capture_default_str();
  gen_cmd->add_option("--a1", gen.a1, "Player 1 actions (parametric)")->capture_default_str();
  gen_cmd->add_option("--a2", gen.a2, "Player 2 actions (parametric)")->capture_default_str();
  gen_cmd->add_option("--sided", gen.sided, "Sidedness (doubling)")
      ->check(CLI::IsMember({"one_sided", "two_sided"}))
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");
  add_config_flag(gen_cmd);

  LpArgs lp;
  auto* solve_cmd = app.add_subcommand("solve-lp", "Solve the equilibrium LP of an instance");
  auto* export_cmd = app.add_subcommand("export-lp", "Write the equilibrium LP in CPLEX LP format");
  for (auto* sub : {solve_cmd, export_cmd}) {
    sub->add_option("--instance", lp.instance, "Instance JSON")->required();
    sub->add_option("--side", lp.side, "Which player keeps the primal")
        ->check(CLI::IsMember({"maxmin", "minmax"}))
        ->capture_default_str();
    sub->add_option("--out", lp.out, "Output file (default stdout)");
    add_config_flag(sub);
  }
  solve_cmd->add_option("--solution", lp.solution, "Raw LP solution JSON");
  solve_cmd->add_option("--strategy1", lp.strategy1, "Player 1 strategy CSV");
  solve_cmd->add_option("--strategy2", lp.strategy2, "Player 2 strategy CSV");

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand("learn", "Regret-matching self-play");
  learn_cmd->add_option("--instance", learn.instance, "Instance JSON")->required();
  learn_cmd->add_option("--algorithm", learn.algorithm, "Local regret minimizer")
      ->check(CLI::IsMember({"rm", "rm+", "prm", "prm+"}))
      ->capture_default_str();
  learn_cmd->add_option("--update-mode", learn.update_mode, "Update order")
      ->check(CLI::IsMember({"simultaneous", "alternating"}))
      ->capture_default_str();
  learn_cmd->add_option("--averaging", learn.averaging, "Iterate averaging")
      ->check(CLI::IsMember({"uniform", "quadratic"}))
      ->capture_default_str();
  learn_cmd->add_option("--gap-check-every", learn.gap_check_every, "Gap check cadence")
      ->capture_default_str();
  learn_cmd->add_option("--gap-threshold", learn.gap_threshold, "Stop when the gap is at most this")
      ->capture_default_str();
  learn_cmd->add_option("--max-iters", learn.max_iters, "Iteration cap")->capture_default_str();
  learn_cmd->add_option("--seed", learn.seed, "Seed")->capture_default_str();
  learn_cmd->add_option("--trace", learn.trace, "Trace CSV (default stdout)");
  learn_cmd->add_option("--profiles", learn.profiles, "Averaged behavioral profiles JSON");
  learn_cmd->add_option("--strategy1", learn.strategy1, "Player 1 average strategy CSV");
  learn_cmd->add_option("--strategy2", learn.strategy2, "Player 2 average strategy CSV");
  add_config_flag(learn_cmd);

  AscendArgs ascend;
  auto* ascend_cmd = app.add_subcommand("ascend", "Projected subgradient ascent");
  ascend_cmd->add_option("--instance", ascend.instance, "Instance JSON")->required();
  ascend_cmd->add_option("--eta0", ascend.eta0, "Initial step size")->capture_default_str();
  ascend_cmd->add_option("--schedule", ascend.schedule, "Step schedule")
      ->check(CLI::IsMember({"diminishing", "constant"}))
      ->capture_default_str();
  ascend_cmd->add_option("--max-iters", ascend.max_iters, "Iterations")->capture_default_str();
  ascend_cmd->add_option("--init", ascend.init, "Starting allocation")
      ->check(CLI::IsMember({"uniform", "given"}))
      ->capture_default_str();
  ascend_cmd->add_option("--initial", ascend.initial, "Starting allocation for --init given")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  ascend_cmd->add_option("--snapshot-every", ascend.snapshot_every, "Allocation snapshot cadence")
      ->capture_default_str();
  ascend_cmd->add_option("--trace", ascend.trace, "Trace CSV (default stdout)");
  ascend_cmd->add_option("--out", ascend.out, "Best allocation JSON");
  add_config_flag(ascend_cmd);

  GapArgs gap;
  auto* gap_cmd = app.add_subcommand("gap", "Saddle-point gap of a strategy pair");
  gap_cmd->add_option("--instance", gap.instance, "Instance JSON")->required();
  gap_cmd->add_option("--strategy1", gap.strategy1, "Player 1 strategy CSV")->required();
  gap_cmd->add_option("--strategy2", gap.strategy2, "Player 2 strategy CSV")->required();
  add_config_flag(gap_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in oracle checks");
  add_config_flag(verify_cmd);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the LP against self-play");
  bench_cmd->add_option("--n", bench.n, "Battlefield counts")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->capture_default_str();
  bench_cmd->add_option("--m1", bench.m1, "Player 1 budget")->capture_default_str();
  bench_cmd->add_option("--m2", bench.m2, "Player 2 budget")->capture_default_str();
  bench_cmd->add_option("--seeds", bench.seeds, "Instances per battlefield count")
      ->capture_default_str();
  bench_cmd->add_option("--max-iters", bench.max_iters, "Self-play iteration cap")
      ->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (BLOTTO_THREADS caps)")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV file (default stdout)");
  add_config_flag(bench_cmd);

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitValidation;
  }
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen, out);
    if (*solve_cmd) return run_solve_lp(lp, out, err);
    if (*export_cmd) return run_export_lp(lp, out);
    if (*learn_cmd) return run_learn(learn, out);
    if (*ascend_cmd) return run_ascend(ascend, out);
    if (*gap_cmd) return run_gap(gap, out);
    if (*verify_cmd) return run_verify(out);
    if (*bench_cmd) return run_bench(bench, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}

}  // namespace blotto::cli
