#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "lgseq/codec.hpp"
#include "lgseq/decode_engine.hpp"
#include "lgseq/error.hpp"
#include "lgseq/synth_gen.hpp"
#include "oracles.hpp"

using namespace lgseq;

namespace {

const CodecConfig kCfg;
constexpr Token A = 200, L = 201, O = 202, C = 203, NCLS = 204, START = 205, EOK = 206, EOS = 207,
                PAD = 208;
constexpr std::size_t V = 209;

DecoderState replay(const std::vector<Token>& prefix, DecoderState s = DecoderState::edges()) {
  for (Token t : prefix) s = advance(std::move(s), t, kCfg);
  return s;
}

ProbTable one_hot(const std::vector<Token>& tokens) {
  ProbTable t(tokens.size(), V);
  for (std::size_t i = 0; i < tokens.size(); ++i) t.row(i)[static_cast<std::size_t>(tokens[i])] = 1.0f;
  return t;
}

ProbTable random_table(Rng& rng, std::size_t rows) {
  ProbTable t(rows, V);
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    std::vector<double> w(V);
    for (auto& x : w) {
      x = -std::log(1.0 - rng.uniform01());  // exponential draws give a flat Dirichlet row
      sum += x;
    }
    for (std::size_t c = 0; c < V; ++c) t.row(r)[c] = static_cast<float>(w[c] / sum);
  }
  return t;
}

ErrorCode error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

}  // namespace

TEST(NextMask, InitialStateAllowsXBinsAndEos) {
  const auto m = next_mask(DecoderState::edges(), kCfg);
  ASSERT_EQ(m.allowed.size(), 201u);
  for (Token x = 0; x < 200; ++x) EXPECT_TRUE(m.contains(x));
  EXPECT_TRUE(m.contains(EOS));
  EXPECT_FALSE(m.contains(A));
}

TEST(NextMask, ClassSlotWithoutKeypointsIsAncestorOnly) {
  const auto m = next_mask(replay({120, 40}), kCfg);
  EXPECT_EQ(m.allowed, (std::vector<Token>{A}));
}

TEST(NextMask, OffshootConRangesOverEmittedKeypoints) {
  const auto s = replay({120, 40, A, 0, 120, 40, 130, 40, L, 0, 125, 40, 140, 40, L, 0, 135, 40, 150, 30, O});
  EXPECT_EQ(next_mask(s, kCfg).allowed, (std::vector<Token>{1, 2, 3}));
}

TEST(NextMask, OccupiedBinForcesCloneWithAcyclicParents) {
  // chain 1 -> 2 -> 3, then revisit keypoint 2: only keypoint 1 may link into it.
  const auto s = replay({120, 40, A, 0, 120, 40, 130, 40, L, 0, 125, 40, 140, 40, L, 0, 135, 40, 130, 40});
  EXPECT_EQ(next_mask(s, kCfg).allowed, (std::vector<Token>{C}));
  EXPECT_EQ(next_mask(advance(s, C, kCfg), kCfg).allowed, (std::vector<Token>{1}));
}

TEST(NextMask, RootOfChainCannotBeRevisited) {
  // keypoint 1 reaches everything, so no keypoint can clone into it
  const auto s = replay({120, 40, A, 0, 120, 40, 130, 40, L, 0, 125, 40, 120});
  EXPECT_FALSE(next_mask(s, kCfg).contains(40));
  EXPECT_TRUE(next_mask(s, kCfg).contains(41));
}

TEST(NextMask, EdgeBudgetLeavesOnlyEos) {
  CodecConfig cfg;
  cfg.max_edges = 1;
  DecoderState s;
  for (Token t : {120, 40, A, 0, 120, 40}) s = advance(std::move(s), t, cfg);
  EXPECT_EQ(next_mask(s, cfg).allowed, (std::vector<Token>{EOS}));
}

TEST(NextMask, PromptPhaseGrammar) {
  CodecConfig cfg;
  cfg.max_prompt_points = 2;
  DecoderState s = DecoderState::prompt();
  EXPECT_EQ(next_mask(s, cfg).allowed, (std::vector<Token>{START}));
  s = advance(std::move(s), START, cfg);
  EXPECT_TRUE(next_mask(s, cfg).contains(PAD));
  s = advance(std::move(s), 10, cfg);
  EXPECT_FALSE(next_mask(s, cfg).contains(PAD));
  s = advance(std::move(s), 20, cfg);
  s = advance(std::move(s), PAD, cfg);
  EXPECT_EQ(next_mask(s, cfg).allowed, (std::vector<Token>{PAD}));
  s = advance(std::move(s), PAD, cfg);
  EXPECT_EQ(next_mask(s, cfg).allowed, (std::vector<Token>{EOK}));
  s = advance(std::move(s), EOK, cfg);
  EXPECT_EQ(s.phase, Phase::Edges);
  EXPECT_EQ(next_mask(s, cfg).allowed.size(), 201u);
}

TEST(Advance, RejectsIllegalAndFinishedStates) {
  EXPECT_EQ(error_of([] { replay({120, 40, L}); }), ErrorCode::IllegalToken);
  EXPECT_EQ(error_of([] { replay({EOS, 3}); }), ErrorCode::DecoderFinished);
}

TEST(Step, OneHotPicksThatTokenInBothModes) {
  std::vector<float> p(V, 0.0f);
  p[57] = 1.0f;
  Rng rng(1);
  EXPECT_EQ(step(DecoderState::edges(), p, DecodeMode::Greedy, rng, kCfg).token, 57);
  EXPECT_EQ(step(DecoderState::edges(), p, DecodeMode::Sample, rng, kCfg).token, 57);
}

TEST(Step, UniformAtClassSlotGivesAncestor) {
  const std::vector<float> p(V, 1.0f / V);
  Rng rng(1);
  EXPECT_EQ(step(replay({3, 4}), p, DecodeMode::Greedy, rng, kCfg).token, A);
  EXPECT_EQ(step(replay({3, 4}), p, DecodeMode::Sample, rng, kCfg).token, A);
}

TEST(Step, GreedyTiesGoToLowestId) {
  std::vector<float> p(V, 0.0f);
  p[150] = p[30] = p[EOS] = 0.25f;
  Rng rng(1);
  EXPECT_EQ(step(DecoderState::edges(), p, DecodeMode::Greedy, rng, kCfg).token, 30);
}

TEST(Step, Errors) {
  Rng rng(1);
  std::vector<float> illegal(V, 0.0f);
  illegal[A] = 1.0f;
  EXPECT_EQ(error_of([&] { step(DecoderState::edges(), illegal, DecodeMode::Greedy, rng, kCfg); }),
            ErrorCode::AllMaskedZero);
  const std::vector<float> short_row(10, 0.1f);
  EXPECT_EQ(error_of([&] { step(DecoderState::edges(), short_row, DecodeMode::Greedy, rng, kCfg); }),
            ErrorCode::LengthMismatch);
  std::vector<float> negative(V, 0.01f);
  negative[0] = -0.5f;
  EXPECT_EQ(error_of([&] { step(DecoderState::edges(), negative, DecodeMode::Greedy, rng, kCfg); }),
            ErrorCode::NonDistributionRow);
}

TEST(Step, SamplingFollowsMaskedDistribution) {
  std::vector<float> p(V, 0.0f);
  p[10] = 0.2f;
  p[20] = 0.6f;
  p[A] = 0.2f;  // masked at slot 0
  Rng rng(4);
  int tens = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) tens += step(DecoderState::edges(), p, DecodeMode::Sample, rng, kCfg).token == 10;
  EXPECT_NEAR(tens / static_cast<double>(n), 0.25, 0.015);
}

TEST(Run, ImmediateEosGivesEmptyDag) {
  const auto table = one_hot({EOS});
  TableProvider provider(table);
  Rng rng(0);
  const auto r = run(provider, kCfg, DecodeMode::Greedy, rng);
  EXPECT_TRUE(r.dag.keypoints.empty());
  EXPECT_EQ(r.tokens.size(), 601u);
  EXPECT_EQ(r.tokens[0], EOS);
}

TEST(Run, ExhaustedTableThrows) {
  const auto table = one_hot({120, 40});
  TableProvider provider(table);
  Rng rng(0);
  EXPECT_EQ(error_of([&] { run(provider, kCfg, DecodeMode::Greedy, rng); }), ErrorCode::ProviderExhausted);
}

TEST(RunProperty, OneHotReplayReproducesEncoding) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    const auto d = generate(spec, kCfg);
    const auto seq = encode(d, kCfg);
    const auto table = one_hot(seq.tokens_unpadded(kCfg));
    TableProvider provider(table);
    Rng rng(seed);
    const auto r = run(provider, kCfg, DecodeMode::Greedy, rng);
    ASSERT_EQ(r.tokens, seq.tokens(kCfg)) << seed;
    ASSERT_EQ(oracle::binned_edges(r.dag, kCfg), oracle::binned_edges(d, kCfg)) << seed;
  }
}

TEST(RunProperty, RandomTablesAlwaysDecode) {
  Rng gen(123);
  for (int trial = 0; trial < 60; ++trial) {
    const auto table = random_table(gen, 601);
    for (const auto mode : {DecodeMode::Greedy, DecodeMode::Sample}) {
      TableProvider provider(table);
      Rng rng(static_cast<std::uint64_t>(trial));
      const auto r = run(provider, kCfg, mode, rng);
      ASSERT_TRUE(validate_sequence(r.tokens, kCfg).empty()) << trial;
      ASSERT_TRUE(validate_dag(r.dag, 0.0).empty()) << trial;
    }
  }
}

TEST(RunProperty, SmallGridNeverDeadEnds) {
  // A 4 x 4 grid fills up quickly, exercising clone-only and exhausted-column states.
  CodecConfig cfg;
  cfg.x_min = -2.0;
  cfg.x_max = 2.0;
  cfg.y_min = -2.0;
  cfg.y_max = 2.0;
  cfg.x_bins = 4;
  cfg.y_bins = 4;
  cfg.max_edges = 40;
  const auto vsize = static_cast<std::size_t>(Vocabulary(cfg).size());
  Rng gen(5);
  std::vector<float> row(vsize);
  CallbackProvider provider([&](const DecoderState& s) -> std::span<const float> {
    // heavy weight on continuing so budgets get hit
    for (auto& p : row) p = static_cast<float>(gen.uniform01());
    if (s.slot == 0) row[static_cast<std::size_t>(Vocabulary(cfg).eos())] = 0.01f;
    return row;
  });
  for (int trial = 0; trial < 300; ++trial) {
    Rng rng(static_cast<std::uint64_t>(trial));
    const auto r = run(provider, cfg, trial % 2 ? DecodeMode::Sample : DecodeMode::Greedy, rng);
    ASSERT_TRUE(validate_sequence(r.tokens, cfg).empty()) << trial;
    ASSERT_LE(r.dag.keypoints.size(), 3u);
  }
}

TEST(SequenceNll, OneHotIsZero) {
  GenSpec spec;
  spec.seed = 2;
  const auto t = encode(generate(spec, kCfg), kCfg).tokens(kCfg);
  EXPECT_NEAR(sequence_nll(t, one_hot(t), ClassWeights{}, kCfg), 0.0, 1e-9);
}

TEST(SequenceNll, UniformTableClosedForm) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    const auto d = generate(spec, kCfg);
    Rng rng(seed);
    std::vector<Token> target = encode(d, kCfg).tokens(kCfg);
    target.insert(target.begin() + 6, {PAD, PAD, NCLS, PAD, PAD, PAD});
    std::size_t counted = 0;
    for (Token x : target) counted += x != PAD;
    const ProbTable uniform(target.size(), V, 1.0f / V);
    EXPECT_NEAR(sequence_nll(target, uniform, ClassWeights{}, kCfg), counted * std::log(209.0), 1e-6);
  }
}

TEST(SequenceNll, AllPadIsZero) {
  const std::vector<Token> target(30, PAD);
  EXPECT_EQ(sequence_nll(target, ProbTable(30, V, 1.0f / V), ClassWeights{}, kCfg), 0.0);
}

TEST(SequenceNll, PadRowsAreNeverRead) {
  const std::vector<Token> target{PAD, 120, PAD, 40, EOS, PAD};
  Rng rng(8);
  auto table = random_table(rng, target.size());
  const double base = sequence_nll(target, table, ClassWeights{}, kCfg);
  for (std::size_t r : {0u, 2u, 5u}) {
    for (auto& p : table.row(r)) p = static_cast<float>(rng.uniform(-5, 5));
  }
  table.row(2)[0] = std::nanf("");
  EXPECT_EQ(sequence_nll(target, table, ClassWeights{}, kCfg), base);
}

TEST(SequenceNll, WeightsScaleTheirCategory) {
  const std::vector<Token> target{120, 40, A, 0, 120, 40, 3, 4, NCLS, 0, 1, 2, EOS};
  const ProbTable uniform(target.size(), V, 1.0f / V);
  ClassWeights w;
  w.noise = 0.25;
  w.ancestor = 3.0;
  // closed form: 10 coordinates, 1 ancestor, 1 noise, 1 special
  const double want = (10 + 3.0 + 0.25 + 1) * std::log(209.0);
  EXPECT_NEAR(sequence_nll(target, uniform, w, kCfg), want, 1e-9);
}

TEST(SequenceNll, Errors) {
  const std::vector<Token> target{120, EOS};
  EXPECT_EQ(error_of([&] { sequence_nll(target, ProbTable(3, V, 1.0f / V), ClassWeights{}, kCfg); }),
            ErrorCode::LengthMismatch);
  EXPECT_EQ(error_of([&] { sequence_nll(target, ProbTable(2, V, 0.5f), ClassWeights{}, kCfg); }),
            ErrorCode::NonDistributionRow);
}
