#include <algorithm>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "lgseq/codec.hpp"
#include "lgseq/error.hpp"
#include "lgseq/rng.hpp"
#include "lgseq/synth_gen.hpp"
#include "oracles.hpp"
#include "test_graphs.hpp"

using namespace lgseq;
using lgseq::testing::straight_edge;

namespace {

const CodecConfig kCfg;
const Vocabulary kVocab(kCfg);
constexpr Token A = 200, L = 201, O = 202, C = 203, N = 204, EOS = 207, PAD = 208;

KeyPointDag chain(std::vector<Point2> pts) {
  KeyPointDag d;
  for (auto p : pts) d.keypoints.push_back({p.x, p.y, 0.0});
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) d.edges.push_back(straight_edge(d, i, i + 1));
  return d;
}

std::vector<Token> unpadded(const KeyPointDag& d) { return encode(d, kCfg).tokens_unpadded(kCfg); }

ErrorCode decode_error(const std::vector<Token>& t, const CodecConfig& cfg = kCfg) {
  try {
    decode(t, cfg);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;  // sentinel: decoded fine
}

}  // namespace

TEST(Encode, SingleStraightLane) {
  const auto t = unpadded(chain({{10, -5}, {30, -5}}));
  const std::vector<Token> want{120, 40, A, 0, 120, 40, 160, 40, L, 0, 140, 40, EOS};
  EXPECT_EQ(t, want);
}

TEST(Encode, ForkUsesOffshootForSecondBranch) {
  KeyPointDag d;
  d.keypoints = {{0, 0, 0}, {10, 3, 0}, {10, -3, 0}};  // id 2 is right-front of id 1
  d.edges = {straight_edge(d, 0, 1), straight_edge(d, 0, 2)};
  const auto seq = encode(d, kCfg);
  ASSERT_EQ(seq.sextets.size(), 3u);
  EXPECT_EQ(seq.sextets[0], (EdgeSextet{100, 50, KeyClass::Ancestor, 0, 100, 50}));
  EXPECT_EQ(seq.sextets[1], (EdgeSextet{120, 44, KeyClass::Lineal, 0, 110, 47}));
  EXPECT_EQ(seq.sextets[2], (EdgeSextet{120, 56, KeyClass::Offshoot, 1, 110, 53}));
}

TEST(Encode, MergeRevisitBecomesClone) {
  KeyPointDag d;
  d.keypoints = {{5, 5, 0}, {20, 0, 0}, {10, -5, 0}};  // b, m, a
  d.edges = {straight_edge(d, 2, 1), straight_edge(d, 0, 1)};
  const auto t = unpadded(d);
  const std::vector<Token> want{120, 40, A, 0, 120, 40,  // a
                                140, 50, L, 0, 130, 45,  // a -> m
                                110, 60, A, 0, 110, 60,  // b
                                140, 50, C, 3, 125, 55,  // b -> m, already realized
                                EOS};
  EXPECT_EQ(t, want);
}

TEST(Encode, EmptyDagIsEosThenPadding) {
  const auto t = encode(KeyPointDag{}, kCfg).tokens(kCfg);
  ASSERT_EQ(t.size(), 601u);
  EXPECT_EQ(t[0], EOS);
  EXPECT_TRUE(std::all_of(t.begin() + 1, t.end(), [](Token x) { return x == PAD; }));
}

TEST(Encode, TraceMapsSextetsBackToSource) {
  KeyPointDag d;
  d.keypoints = {{5, 5, 0}, {20, 0, 0}, {10, -5, 0}};
  d.edges = {straight_edge(d, 2, 1), straight_edge(d, 0, 1)};
  EncodeTrace tr;
  encode(d, kCfg, &tr);
  EXPECT_EQ(tr.keypoint_order, (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(tr.sextet_edge, (std::vector<std::size_t>{EncodeTrace::kNoEdge, 0, EncodeTrace::kNoEdge, 1}));
}

TEST(Encode, Errors) {
  KeyPointDag cyc = chain({{0, 0}, {10, 0}});
  cyc.edges.push_back(straight_edge(cyc, 1, 0));
  try {
    encode(cyc, kCfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidDag);
  }

  KeyPointDag same_bin;
  same_bin.keypoints = {{0.01, 0.01, 0}, {0.49, 0.49, 0}};
  try {
    encode(same_bin, kCfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CloneAmbiguity);
  }

  CodecConfig small;
  small.max_edges = 3;
  try {
    encode(chain({{0, 0}, {5, 0}, {10, 0}, {15, 0}}), small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyEdges);
    EXPECT_EQ(error_class(e.code()), ErrorClass::Budget);
  }

  CodecConfig wide;
  wide.max_edges = 400;
  KeyPointDag many;
  for (int i = 0; i < 200; ++i) many.keypoints.push_back({-49.75 + 0.5 * (i % 190), -19.75 + 5.0 * (i / 190), 0});
  try {
    encode(many, wide);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyKeypoints);
  }
}

TEST(EncodeProperty, InvariantUnderRelabeling) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    const auto d = generate(spec, kCfg);
    Rng rng(seed + 1000);
    std::vector<std::size_t> perm(d.keypoints.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
    KeyPointDag p;
    p.keypoints.resize(d.keypoints.size());
    for (std::size_t i = 0; i < perm.size(); ++i) p.keypoints[perm[i]] = d.keypoints[i];
    for (const auto& e : d.edges) p.edges.push_back({perm[e.src], perm[e.dst], e.control, e.score});
    std::reverse(p.edges.begin(), p.edges.end());
    ASSERT_EQ(encode(p, kCfg).tokens(kCfg), encode(d, kCfg).tokens(kCfg)) << seed;
  }
}

TEST(EncodeProperty, RoundTripAgreesWithBinnedEdgeOracle) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.roots = 1 + static_cast<int>(seed % 4);
    const auto d = generate(spec, kCfg);
    const auto tokens = encode(d, kCfg).tokens(kCfg);
    ASSERT_EQ(tokens.size(), 601u);
    const auto back = decode(tokens, kCfg);
    ASSERT_EQ(oracle::binned_keypoints(back, kCfg), oracle::binned_keypoints(d, kCfg)) << seed;
    ASSERT_EQ(oracle::binned_edges(back, kCfg), oracle::binned_edges(d, kCfg)) << seed;
    ASSERT_TRUE(validate_sequence(tokens, kCfg).empty());
    // re-encoding the decoded DAG is a fixed point
    ASSERT_EQ(encode(back, kCfg).tokens(kCfg), tokens) << seed;
  }
}

TEST(Decode, EosOnlyIsEmpty) {
  const auto d = decode(std::vector<Token>{EOS}, kCfg);
  EXPECT_TRUE(d.keypoints.empty());
  EXPECT_TRUE(d.edges.empty());
}

TEST(Decode, PlacesKeypointsAtBinCenters) {
  const std::vector<Token> t{120, 40, A, 0, 120, 40, 160, 40, L, 0, 140, 40, EOS};
  const auto d = decode(t, kCfg);
  ASSERT_EQ(d.keypoints.size(), 2u);
  EXPECT_DOUBLE_EQ(d.keypoints[0].x, 10.25);
  EXPECT_DOUBLE_EQ(d.keypoints[0].y, -4.75);
  ASSERT_EQ(d.edges.size(), 1u);
  EXPECT_EQ(d.edges[0].src, 0u);
  EXPECT_EQ(d.edges[0].dst, 1u);
  EXPECT_DOUBLE_EQ(d.edges[0].control.x, 20.25);
}

TEST(Decode, OffshootConBeyondEmittedKeypoints) {
  const std::vector<Token> t{120, 40, A, 0, 120, 40, 130, 40, O, 5, 125, 40, EOS};
  EXPECT_EQ(decode_error(t), ErrorCode::ConOutOfRange);
  const auto v = validate_sequence(t, kCfg);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].index, 9u);
  EXPECT_EQ(v[0].describe(), "ConOutOfRange@9");
}

TEST(Decode, StrictRules) {
  EXPECT_EQ(decode_error({120, 40, A, 0, 120, 40}), ErrorCode::MissingEos);
  EXPECT_EQ(decode_error({120, 40, A, 0, EOS}), ErrorCode::TruncatedSextet);
  EXPECT_EQ(decode_error({120, 40, 7, 0, 120, 40, EOS}), ErrorCode::BadSlotToken);
  EXPECT_EQ(decode_error({120, 40, L, 0, 120, 40, EOS}), ErrorCode::LinealWithoutPrevious);
  EXPECT_EQ(decode_error({120, 40, A, 0, 120, 40, 120, 40, A, 0, 120, 40, EOS}), ErrorCode::DuplicateKeypoint);
  EXPECT_EQ(decode_error({120, 40, A, 0, 120, 40, 150, 40, C, 1, 130, 40, EOS}), ErrorCode::CloneTargetMissing);
  EXPECT_EQ(decode_error({120, 40, A, 0, 120, 40, 130, 40, L, 0, 125, 40, 120, 40, C, 2, 125, 41, EOS}),
            ErrorCode::CloneCreatesCycle);
  CodecConfig small;
  small.max_edges = 1;
  EXPECT_EQ(decode_error({120, 40, A, 0, 120, 40, 130, 40, L, 0, 125, 40, EOS}, small),
            ErrorCode::SequenceTooLong);
}

TEST(Decode, CloneTargetMissingIndexIsSextetStart) {
  const std::vector<Token> t{120, 40, A, 0, 120, 40, 150, 40, C, 1, 130, 40, EOS};
  const auto v = validate_sequence(t, kCfg);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, ErrorCode::CloneTargetMissing);
  EXPECT_EQ(v[0].index, 6u);
}

TEST(Decode, NoiseSextetsAreDropped) {
  const std::vector<Token> t{120, 40, A, 0, 120, 40, 7, 9, N, PAD, PAD, PAD, 160, 40, L, 0, 140, 40, EOS};
  const auto d = decode(t, kCfg);
  EXPECT_EQ(d.keypoints.size(), 2u);
  EXPECT_EQ(d.edges.size(), 1u);
}

TEST(DecodeLenient, SkipsBadSextetAndKeepsTheRest) {
  const std::vector<Token> t{120, 40, A, 0, 120, 40, 120, 40, C, 9, 130, 40, 160, 40, L, 0, 140, 40, EOS};
  const auto r = decode_lenient(t, kCfg);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].rule, ErrorCode::ConOutOfRange);
  EXPECT_EQ(r.dag.keypoints.size(), 2u);
  EXPECT_EQ(r.dag.edges.size(), 1u);
}

TEST(ValidateSequenceProperty, AgreesWithStrictDecodeOnMutations) {
  Rng rng(77);
  int rejected = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    auto t = encode(generate(spec, kCfg), kCfg).tokens(kCfg);
    const int edits = 1 + static_cast<int>(rng.uniform_index(3));
    for (int k = 0; k < edits; ++k) {
      const auto at = rng.uniform_index(t.size() / 4);
      t[at] = static_cast<Token>(rng.uniform_index(static_cast<std::uint64_t>(kVocab.size())));
    }
    const auto v = validate_sequence(t, kCfg);
    const auto code = decode_error(t);
    if (v.empty()) {
      ASSERT_EQ(code, ErrorCode::ParseError) << seed;
    } else {
      ++rejected;
      ASSERT_EQ(code, v.front().rule) << seed;
    }
  }
  EXPECT_GT(rejected, 100);
}

TEST(ParseEdgeSequence, RecoversEncoderSextets) {
  GenSpec spec;
  spec.seed = 3;
  const auto seq = encode(generate(spec, kCfg), kCfg);
  EXPECT_EQ(parse_edge_sequence(seq.tokens(kCfg), kCfg).sextets, seq.sextets);
}
