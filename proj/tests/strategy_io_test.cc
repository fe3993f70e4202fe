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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "blotto/instances.h"
#include "blotto/lp_builders.h"
#include "blotto/regret.h"
#include "blotto/strategy_io.h"
#include "test_support.h"

namespace blotto {
namespace {

using testing::linear_instance;
using testing::random_discrete;

void expect_same(const SeqForm& a, const SeqForm& b) {
  ASSERT_EQ(a.index(), b.index());
  if (const auto* s = std::get_if<SequenceStrategy>(&a)) {
    EXPECT_EQ(s->values, std::get<SequenceStrategy>(b).values);
    return;
  }
  const auto& y = std::get<TwoLevelSeqStrategy>(a);
  const auto& z = std::get<TwoLevelSeqStrategy>(b);
  EXPECT_EQ(y.kind, z.kind);
  EXPECT_EQ(y.root, z.root);
  EXPECT_EQ(y.battlefield, z.battlefield);
  EXPECT_EQ(y.action, z.action);
}

TEST(StrategyCsv, FlowRoundTripIsExact) {
  const BlottoInstance inst = gen_soft_blotto_double(3, 2, 3);
  const Equilibrium eq = solve_equilibrium(inst);
  for (auto [player, s] : {std::pair{Player::kOne, eq.seq1}, std::pair{Player::kTwo, eq.seq2}}) {
    const std::string csv = strategy_to_csv(s);
    EXPECT_EQ(csv.rfind("var_kind,i,a_or_k,b_or_action,value\n", 0), 0u);
    expect_same(strategy_from_csv(csv, inst, player), s);
  }
}

TEST(StrategyCsv, TwoLevelRoundTripIsExact) {
  SplitMix64 rng(801);
  const BlottoInstance mn = random_discrete(rng, 3, 0, 2, 3, Sidedness::kOneSided, Aggregator::kMin);
  const Equilibrium a = solve_equilibrium(mn);
  expect_same(strategy_from_csv(strategy_to_csv(a.seq1), mn, Player::kOne), a.seq1);
  expect_same(strategy_from_csv(strategy_to_csv(a.seq2), mn, Player::kTwo), a.seq2);

  const BlottoInstance lin = linear_instance({1.0, 2.0, 3.0}, 2.0, Aggregator::kSum);
  const Equilibrium b = solve_equilibrium(lin);
  expect_same(strategy_from_csv(strategy_to_csv(b.seq1), lin, Player::kOne), b.seq1);
  expect_same(strategy_from_csv(strategy_to_csv(b.seq2), lin, Player::kTwo), b.seq2);
}

TEST(StrategyCsv, RowsForSmallFlow) {
  const DagPtr dag = build_dag(1, 0, {2});
  const std::string csv = strategy_to_csv(SeqForm{uniform_strategy(dag)});
  EXPECT_EQ(csv,
            "var_kind,i,a_or_k,b_or_action,value\n"
            "h,0,0,0,1\n"
            "x,0,0,0,0.5\n"
            "x,0,0,1,0.5\n");
}

TEST(StrategyCsv, Errors) {
  const BlottoInstance inst = gen_soft_blotto_double(2, 1, 1);
  const std::string header = "var_kind,i,a_or_k,b_or_action,value\n";
  auto message = [&](const std::string& text) {
    try {
      strategy_from_csv(text, inst, Player::kOne);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(header + "h,0,1,0,abc\n").find("line 2"), std::string::npos);
  EXPECT_NE(message(header + "h,5,1,0,1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message(header + "y,0,-1,-1,1\n").find("line 2"), std::string::npos);
  EXPECT_FALSE(message("kind,i\n").empty());
}

TEST(UsesTwoLevel, BySetting) {
  SeqPolytope kind;
  double root = 0.0;
  EXPECT_FALSE(uses_two_level(gen_soft_blotto_double(2, 1, 1), Player::kOne));
  const BlottoInstance lin = linear_instance({1.0, 2.0}, 3.0, Aggregator::kMin);
  ASSERT_TRUE(uses_two_level(lin, Player::kTwo, &kind, &root));
  EXPECT_EQ(kind, SeqPolytope::kQ);
  EXPECT_EQ(root, 3.0);
  ASSERT_TRUE(uses_two_level(lin, Player::kOne, &kind, &root));
  EXPECT_EQ(kind, SeqPolytope::kP);
  const BlottoInstance sum = linear_instance({1.0, 2.0}, 3.0, Aggregator::kSum);
  ASSERT_TRUE(uses_two_level(sum, Player::kOne, &kind, &root));
  EXPECT_EQ(kind, SeqPolytope::kSimplexProduct);
}

TEST(EquilibriumJson, Fields) {
  const Equilibrium eq = solve_equilibrium(gen_soft_blotto_double(2, 1, 1));
  const auto j = nlohmann::json::parse(equilibrium_to_json(eq));
  EXPECT_EQ(j.at("setting"), to_string(eq.setting));
  EXPECT_EQ(j.at("side"), "maxmin");
  EXPECT_NEAR(j.at("value").get<double>(), eq.value, 1e-15);
  double mass = 0.0;
  for (const auto& e : j.at("player2").at("allocation_mix")) mass += e.at("probability").get<double>();
  EXPECT_NEAR(mass, 1.0, 1e-9);
  EXPECT_EQ(j.at("player1").at("actions").size(), 2u);
}

TEST(TextFiles, MissingFileThrows) {
  EXPECT_THROW(read_text_file("/nonexistent/blotto/file"), std::runtime_error);
  EXPECT_THROW(write_text_file("/nonexistent/blotto/file", "x"), std::runtime_error);
}

}  // namespace
}  // namespace blotto
