#include <array>
#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "dimac/channel_law.hpp"
#include "dimac/channels.hpp"
#include "dimac/errors.hpp"
#include "dimac/exponents.hpp"
#include "dimac/random_instances.hpp"
#include "dimac/simulate.hpp"
#include "oracles.hpp"

using namespace dimac;

namespace {

InputPolicies uniform_binary(std::size_t n) {
  return InputPolicies::uniform(Alphabet(2), Alphabet(2), Alphabet(2), n);
}

std::vector<double> point_mass(std::size_t size, std::size_t at) {
  std::vector<double> w(size, 0.0);
  w[at] = 1.0;
  return w;
}

}  // namespace

TEST(CodeTrees, DeterministicKernelGivesIdenticalTrees) {
  const auto k = CausalKernel::iid(Alphabet(3), Alphabet(2), 4, {0.0, 1.0, 0.0});
  std::mt19937_64 rng(401);
  const CodeBook book = sample_code_trees(k, 5, rng);
  const std::vector<Symbol> z{1, 0, 1};
  for (const auto& t : book.trees) EXPECT_EQ(t.path(z), (std::vector<Symbol>{1, 1, 1, 1}));
  EXPECT_NEAR(book.rate(4), std::log2(5.0) / 4.0, 1e-15);
  EXPECT_THROW(sample_code_trees(k, 0, rng), InputError);
}

TEST(CodeTrees, ConcatenatedPathFrequencies) {
  const auto k = CausalKernel::uniform(Alphabet(2), Alphabet(2), 1).repeated(2);
  std::mt19937_64 rng(402);
  const std::size_t draws = 10000;
  const CodeBook book = sample_code_trees(k, draws, rng);
  std::array<std::size_t, 4> counts{};
  const std::vector<Symbol> z{1};
  for (const auto& t : book.trees) {
    const auto x = t.path(z);
    ++counts[static_cast<std::size_t>(x[0] * 2 + x[1])];
  }
  const double sigma = std::sqrt(0.25 * 0.75 / static_cast<double>(draws));
  for (std::size_t c : counts) {
    EXPECT_NEAR(static_cast<double>(c) / static_cast<double>(draws), 0.25, 3.0 * sigma);
  }
}

TEST(CodeTrees, FeedbackDrivenTreeBranchesAndLabelsAreStable) {
  const auto k = CausalKernel::feedback_driven(
      Alphabet(2), Alphabet(2), {{{0.5, 0.5}}, {{1.0, 0.0}, {0.0, 1.0}}});
  const CodeTree tree(&k, 77);
  for (Symbol z : {0, 1}) {
    const std::vector<Symbol> path{z};
    EXPECT_EQ(tree.path(path)[1], z);
    EXPECT_EQ(tree.symbol(1, path), z);
    EXPECT_EQ(tree.symbol(0, path), tree.path(path)[0]);
  }
  EXPECT_EQ(tree.path(std::vector<Symbol>{0})[0], tree.path(std::vector<Symbol>{1})[0]);
}

TEST(CodeTrees, NullFeedbackDegeneratesToCodeword) {
  const auto k = CausalKernel::uniform(Alphabet(2), Alphabet(2), 5);
  EXPECT_TRUE(k.feedback_independent());
  const CodeTree tree(&k, 99);
  const auto a = tree.path(std::vector<Symbol>{0, 0, 0, 0});
  EXPECT_EQ(a, tree.path(std::vector<Symbol>{1, 0, 1, 1}));
  const auto single = CausalKernel::uniform(Alphabet(2), Alphabet(1), 5);
  EXPECT_EQ(CodeTree(&single, 99).path(std::vector<Symbol>{0, 0, 0, 0}), a);
  EXPECT_FALSE(CausalKernel::feedback_driven(Alphabet(2), Alphabet(2),
                                             {{{0.5, 0.5}}, {{1.0, 0.0}, {0.0, 1.0}}})
                   .feedback_independent());
}

TEST(Transmit, NoiselessChannelIsDeterministic) {
  const FsMac clean = additive_modq_mac(2, NoiseChain::bernoulli(0.0));
  const auto k = CausalKernel::uniform(Alphabet(2), Alphabet(1), 6);
  const CodeTree t1(&k, 1), t2(&k, 2);
  const FeedbackFn none = FeedbackFn::none(Alphabet(2));
  std::mt19937_64 r1(5), r2(6);
  const auto a = transmit(clean, 0, t1, t2, none, none, r1);
  const auto b = transmit(clean, 0, t1, t2, none, none, r2);
  EXPECT_EQ(a.y, b.y);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(a.y[i], a.x1[i] ^ a.x2[i]);
}

TEST(Transmit, FeedbackReachesTheEncoderOneStepLater) {
  const FsMac id = memoryless_mac(2, 2, 2, {1, 0, 1, 0, 0, 1, 0, 1});
  const auto k = CausalKernel::feedback_driven(
      Alphabet(2), Alphabet(2), {{{0.5, 0.5}}, {{0.0, 1.0}, {1.0, 0.0}}, {{1, 0}, {1, 0}, {0, 1}, {0, 1}}});
  const CodeTree t1(&k, 11), t2(&k, 12);
  const FeedbackFn perfect = FeedbackFn::perfect(Alphabet(2));
  std::mt19937_64 rng(7);
  const auto tr = transmit(id, 0, t1, t2, perfect, perfect, rng);
  EXPECT_EQ(tr.y[0], tr.x1[0]);
  EXPECT_EQ(tr.x1[1], 1 - tr.y[0]);
  EXPECT_EQ(tr.x1[2], tr.y[0]);
}

TEST(Transmit, IgnoredFeedbackLeavesTrajectoriesUnchanged) {
  std::mt19937_64 gen(403);
  const FsMac ch = random_fsmac(2, 2, 2, 2, gen);
  const auto k = CausalKernel::uniform(Alphabet(2), Alphabet(2), 6);
  const auto k_none = CausalKernel::uniform(Alphabet(2), Alphabet(1), 6);
  const CodeTree a1(&k, 3), a2(&k, 4), b1(&k_none, 3), b2(&k_none, 4);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 r1(seed), r2(seed);
    const auto with = transmit(ch, 1, a1, a2, FeedbackFn::perfect(Alphabet(2)),
                               FeedbackFn::perfect(Alphabet(2)), r1);
    const auto without = transmit(ch, 1, b1, b2, FeedbackFn::none(Alphabet(2)),
                                  FeedbackFn::none(Alphabet(2)), r2);
    EXPECT_EQ(with.x1, without.x1);
    EXPECT_EQ(with.x2, without.x2);
    EXPECT_EQ(with.y, without.y);
  }
}

TEST(Transmit, UselessChannelOutputIgnoresTrees) {
  std::mt19937_64 gen(404);
  const FsMac ch = random_useless_fsmac(2, 2, 2, 2, gen);
  const auto k = CausalKernel::uniform(Alphabet(2), Alphabet(1), 2);
  const FeedbackFn none = FeedbackFn::none(Alphabet(2));
  const std::size_t trials = 10000;
  std::array<std::array<double, 4>, 2> counts{};
  for (int pair = 0; pair < 2; ++pair) {
    const CodeTree t1(&k, 100 + pair), t2(&k, 200 + 7 * pair);
    std::mt19937_64 rng(500 + pair);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto tr = transmit(ch, 0, t1, t2, none, none, rng);
      counts[pair][static_cast<std::size_t>(tr.y[0] * 2 + tr.y[1])] += 1.0;
    }
  }
  double chi2 = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    const double col = counts[0][c] + counts[1][c];
    for (int pair = 0; pair < 2; ++pair) {
      const double expected = col / 2.0;
      if (expected > 0.0) chi2 += std::pow(counts[pair][c] - expected, 2) / expected;
    }
  }
  EXPECT_LT(chi2, 16.27);  // 3 degrees of freedom, 0.1% level
}

TEST(MlDecode, NoiselessAndTrivialCodebooks) {
  const FsMac clean = additive_modq_mac(2, NoiseChain::bernoulli(0.0));
  const SequenceLikelihood law(clean, {1.0});
  const auto k1 = CausalKernel::uniform(Alphabet(2), Alphabet(1), 8);
  const auto k0 = CausalKernel::iid(Alphabet(2), Alphabet(1), 8, {1.0, 0.0});
  const FeedbackFn none = FeedbackFn::none(Alphabet(2));
  std::mt19937_64 rng(405);
  int decoded = 0;
  for (int t = 0; t < 200; ++t) {
    const CodeBook b1 = sample_code_trees(k1, 4, rng);
    const CodeBook b2 = sample_code_trees(k0, 1, rng);
    std::vector<std::vector<Symbol>> words;
    for (const auto& tr : b1.trees) words.push_back(tr.path(std::vector<Symbol>(7, 0)));
    bool distinct = true;
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) distinct = distinct && words[a] != words[b];
    }
    if (!distinct) continue;
    const std::size_t m = static_cast<std::size_t>(t % 4);
    const auto tx = transmit(clean, 0, b1.trees[m], b2.trees[0], none, none, rng);
    EXPECT_EQ(ml_decode(tx.y, b1, b2, none, none, law), (std::pair<std::size_t, std::size_t>{m, 0}));
    ++decoded;
  }
  EXPECT_GT(decoded, 150);
  const CodeBook one1 = sample_code_trees(k1, 1, rng);
  const CodeBook one2 = sample_code_trees(k1, 1, rng);
  EXPECT_EQ(ml_decode(std::vector<Symbol>(8, 1), one1, one2, none, none, law),
            (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(MlDecode, TiesGoToLowestPair) {
  std::mt19937_64 gen(406);
  const FsMac useless = random_useless_fsmac(2, 2, 2, 2, gen);
  const SequenceLikelihood law(useless, {0.5, 0.5});
  const auto k = CausalKernel::uniform(Alphabet(2), Alphabet(1), 3);
  const FeedbackFn none = FeedbackFn::none(Alphabet(2));
  std::mt19937_64 rng(7);
  const CodeBook b1 = sample_code_trees(k, 3, rng);
  const CodeBook b2 = sample_code_trees(k, 2, rng);
  EXPECT_EQ(ml_decode(std::vector<Symbol>{1, 0, 1}, b1, b2, none, none, law),
            (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(MlUnionBound, ClosedFormsAndOracle) {
  std::mt19937_64 rng(407);
  for (int trial = 0; trial < 6; ++trial) {
    const FsMac ch = random_fsmac(2, 2, 2, 2, rng);
    const auto pol = random_policies(ch, 2, true, rng);
    const std::size_t s0 = trial % 2;
    const auto law = channel_causal_law(ch, S0Mode::given(s0), 2);
    const PolicyWeights w = policy_weights(pol, law.shape());
    for (int t = 1; t <= 3; ++t) {
      EXPECT_NEAR(ml_union_bound(t, 3, 4, 0.0, w, law), 1.0, 1e-12);
      const double pre = t == 1 ? 2.0 : t == 2 ? 3.0 : 6.0;
      for (double rho : {0.4, 1.0}) {
        const double b = ml_union_bound(t, 3, 4, rho, w, law);
        const double ref =
            std::pow(pre, rho) * oracle::gallager_sum(t, rho, ch, pol, point_mass(2, s0), 2);
        EXPECT_NEAR(b, ref, 1e-12 * std::max(1.0, ref));
        const double e = gallager_E(static_cast<ErrorType>(t), rho, w, law);
        EXPECT_NEAR(b, std::pow(pre, rho) * std::exp2(-2.0 * e), 1e-12 * std::max(1.0, b));
      }
    }
    EXPECT_EQ(ml_union_bound(1, 1, 4, 0.5, w, law), 0.0);
    EXPECT_EQ(ml_union_bound(3, 4, 1, 0.5, w, law), 0.0);
    EXPECT_THROW(ml_union_bound(4, 2, 2, 0.5, w, law), InputError);
  }
}

TEST(Wilson, KnownValues) {
  const Interval zero = wilson_interval(0, 10);
  EXPECT_EQ(zero.lo, 0.0);
  EXPECT_NEAR(zero.hi, 3.8414588206941254 / 13.8414588206941254, 1e-12);
  const Interval half = wilson_interval(50, 100);
  EXPECT_NEAR(half.lo + half.hi, 1.0, 1e-12);
  EXPECT_LT(half.lo, 0.5);
}

TEST(Ensemble, NoiselessChannelErrsOnlyOnCollisions) {
  const FsMac clean = additive_modq_mac(2, NoiseChain::bernoulli(0.0));
  SimConfig cfg;
  cfg.n = 4;
  cfg.K = 2;
  cfg.M1 = 1;
  cfg.M2 = 1;
  cfg.trials = 500;
  const auto r = run_ensemble(clean, uniform_binary(4), cfg);
  EXPECT_EQ(r.correct, 500u);
  EXPECT_EQ(r.pe, 0.0);
  EXPECT_EQ(r.exponent_bound[0], 0.0);
  cfg.M1 = 2;
  cfg.trials = 4000;
  const auto c = run_ensemble(clean, uniform_binary(4), cfg);
  EXPECT_EQ(c.errors[1], 0u);
  EXPECT_EQ(c.errors[2], 0u);
  EXPECT_LT(c.rates[0], 0.01);
}

TEST(Ensemble, UselessChannelGuesses) {
  std::mt19937_64 gen(408);
  const FsMac useless = random_useless_fsmac(2, 2, 2, 2, gen);
  SimConfig cfg;
  cfg.n = 2;
  cfg.K = 1;
  cfg.trials = 4000;
  cfg.s0 = S0Mode::given(0);
  const auto pol = uniform_binary(2);
  const auto r = run_ensemble(useless, pol, cfg);
  EXPECT_NEAR(r.pe, 0.75, 4.0 * std::sqrt(0.75 * 0.25 / 4000.0));
  EXPECT_EQ(r.errors[0] + r.errors[1] + r.errors[2], r.trials - r.correct);
  EXPECT_EQ(r.s0_label, "given:0");
}

TEST(Ensemble, EmpiricalRatesRespectExactBound) {
  const FsMac bsc = additive_modq_mac(2, NoiseChain::bernoulli(0.1));
  SimConfig cfg;
  cfg.n = 6;
  cfg.trials = 2000;
  cfg.seed = 17;
  const auto r = run_ensemble(bsc, uniform_binary(6), cfg);
  for (int i = 0; i < 3; ++i) {
    ASSERT_TRUE(r.exact_bound[i].has_value());
    EXPECT_LE(r.intervals[i].hi, *r.exact_bound[i]) << "type " << i + 1;
  }
  EXPECT_NEAR(r.pe, r.rates[0] + r.rates[1] + r.rates[2], 1e-15);
}

TEST(Ensemble, SeedDeterminismAcrossThreads) {
  std::mt19937_64 gen(409);
  const FsMac ch = random_fsmac(2, 2, 2, 2, gen);
  const auto pol = random_policies(ch, 2, true, gen);
  SimConfig cfg;
  cfg.n = 2;
  cfg.K = 2;
  cfg.trials = 300;
  cfg.seed = 42;
  cfg.s0 = S0Mode::given(1);
  const auto a = run_ensemble(ch, pol, cfg);
  cfg.threads = 3;
  const auto b = run_ensemble(ch, pol, cfg);
  EXPECT_EQ(a.correct, b.correct);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(a.errors[i], b.errors[i]);
    EXPECT_EQ(a.exact_bound[i], b.exact_bound[i]);
    EXPECT_EQ(a.exponent_bound[i], b.exponent_bound[i]);
  }
  cfg.seed = 43;
  const auto c = run_ensemble(ch, pol, cfg);
  EXPECT_TRUE(c.correct != a.correct || c.errors[0] != a.errors[0] || c.errors[2] != a.errors[2]);
}

TEST(Ensemble, RejectsInvalidConfigs) {
  const FsMac bsc = additive_modq_mac(2, NoiseChain::bernoulli(0.1));
  SimConfig cfg;
  cfg.n = 2;
  cfg.trials = 0;
  EXPECT_THROW(run_ensemble(bsc, uniform_binary(2), cfg), InputError);
  cfg.trials = 10;
  cfg.s0 = S0Mode::worst();
  EXPECT_THROW(run_ensemble(bsc, uniform_binary(2), cfg), InputError);
  cfg.s0 = S0Mode::stationary();
  EXPECT_THROW(run_ensemble(bsc, uniform_binary(3), cfg), InputError);
}
