#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dimac/channel_law.hpp"
#include "dimac/channels.hpp"
#include "dimac/dirinfo.hpp"
#include "dimac/errors.hpp"
#include "dimac/random_instances.hpp"
#include "oracles.hpp"

using namespace dimac;

namespace {

JointLaw joint_for(const FsMac& ch, const InputPolicies& pol, const S0Mode& mode) {
  return joint_law(pol, channel_causal_law(ch, mode, pol.depth()));
}

FsMac identity_x1() { return memoryless_mac(2, 2, 2, {1, 0, 1, 0, 0, 1, 0, 1}); }
FsMac identity_x2() { return memoryless_mac(2, 2, 2, {1, 0, 0, 1, 1, 0, 0, 1}); }

}  // namespace

TEST(DirectedInfo, ClosedFormCases) {
  const auto u2 = InputPolicies::uniform(Alphabet(2), Alphabet(2), Alphabet(2), 2);
  EXPECT_NEAR(directed_info(joint_for(identity_x1(), u2, S0Mode::given(0)), Source::X1).total,
              2.0, 1e-12);
  const auto u1 = InputPolicies::uniform(Alphabet(2), Alphabet(2), Alphabet(2), 1);
  const FsMac bsc = additive_modq_mac(2, NoiseChain::bernoulli(0.1));
  const auto d = directed_info(joint_for(bsc, u1, S0Mode::given(0)), Source::X1X2);
  EXPECT_NEAR(d.total, 1.0 - oracle::h2(0.1), 1e-12);
  const FsMac flat = memoryless_mac(2, 2, 2, std::vector<double>(8, 0.5));
  EXPECT_EQ(directed_info(joint_for(flat, u2, S0Mode::given(0)), Source::X1X2).total, 0.0);
}

TEST(DirectedInfo, CausallyConditionedClosedForms) {
  const auto u1 = InputPolicies::uniform(Alphabet(2), Alphabet(2), Alphabet(2), 1);
  EXPECT_NEAR(directed_info_cc(joint_for(identity_x2(), u1, S0Mode::given(0)), Source::X1).total,
              0.0, 1e-12);
  const FsMac xor_mac = additive_modq_mac(2, NoiseChain::bernoulli(0.0));
  EXPECT_NEAR(directed_info_cc(joint_for(xor_mac, u1, S0Mode::given(0)), Source::X1).total, 1.0,
              1e-12);
  EXPECT_THROW(directed_info_cc(joint_for(xor_mac, u1, S0Mode::given(0)), Source::X1X2),
               InputError);
}

TEST(DirectedInfo, MatchesDefinitionOracleAndExpectationForm) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 12; ++trial) {
    const FsMac ch = random_fsmac(2, 2, 2, 2, rng);
    const std::size_t n = 1 + trial % 3;
    const auto pol = random_policies(ch, n, true, rng);
    const JointLaw j = joint_for(ch, pol, S0Mode::given(trial % 2));
    const auto d = oracle::outcomes_of(j);
    for (Source s : {Source::X1, Source::X2, Source::X1X2}) {
      const auto b = directed_info(j, s);
      const double ref = oracle::directed_info(d, s != Source::X2, s != Source::X1);
      EXPECT_NEAR(b.total, ref, 1e-10);
      EXPECT_NEAR(b.total, b.expectation_form, 1e-10);
      double sum = 0.0;
      for (double v : b.per_step) {
        EXPECT_GE(v, -1e-12);
        sum += v;
      }
      EXPECT_NEAR(sum, b.total, 1e-10);
    }
    for (Source s : {Source::X1, Source::X2}) {
      const auto b = directed_info_cc(j, s);
      EXPECT_NEAR(b.total, oracle::directed_info_cc(d, s == Source::X1), 1e-10);
      EXPECT_NEAR(b.total, b.expectation_form, 1e-10);
      for (double v : b.per_step) EXPECT_GE(v, -1e-12);
    }
  }
}

TEST(MutualInfo, BasicIdentities) {
  const auto u1 = InputPolicies::uniform(Alphabet(2), Alphabet(2), Alphabet(2), 1);
  const JointLaw j = joint_for(identity_x1(), u1, S0Mode::given(0));
  EXPECT_NEAR(mutual_info(j, kX1, kY), 1.0, 1e-12);
  EXPECT_NEAR(mutual_info(j, kX1, kX2), 0.0, 1e-12);
  EXPECT_THROW(mutual_info(j, kX1 | kY, kY), InputError);
}

TEST(StateKnowledge, StateKnowledgeChangesInformationByAtMostHS) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    const FsMac ch = random_fsmac(2 + trial % 2, 2, 2, 2, rng);
    const auto pol = random_policies(ch, 2, trial % 3 != 0, rng);
    const auto w = random_pmf(ch.states().size(), rng);
    for (Source s : {Source::X1, Source::X2, Source::X1X2}) {
      const auto r = directed_info_given_state(pol, ch, s, w);
      EXPECT_LE(std::abs(r.mixture - r.conditioned), r.state_entropy + 1e-10);
      EXPECT_LE(r.min, r.max);
    }
  }
}

TEST(StateKnowledge, SymmetricStatesGiveEqualValues) {
  const FsMac ge = gilbert_elliott_mac(0.2, 0.3, 0.1, 0.1);
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto pol = random_policies(ge, n, true, rng);
    const auto r = directed_info_given_state(pol, ge, Source::X1X2);
    EXPECT_NEAR(r.per_state[0], r.per_state[1], 1e-12);
  }
}

TEST(StateKnowledge, SingleStateMatchesDirectedInfo) {
  std::mt19937_64 rng(6);
  const FsMac ch = random_fsmac(1, 2, 2, 3, rng);
  const auto pol = random_policies(ch, 2, true, rng);
  const auto r = directed_info_given_state(pol, ch, Source::X1);
  EXPECT_NEAR(r.per_state[0],
              directed_info_cc(joint_for(ch, pol, S0Mode::given(0)), Source::X1).total, 1e-10);
}

TEST(CausalFunctional, FunctionalEqualsCausallyConditionedDirectedInfo) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 20; ++trial) {
    const FsMac ch = random_fsmac(2, 2, 2, 2, rng);
    const std::size_t n = 1 + trial % 3;
    const auto pol = random_policies(ch, n, true, rng);
    const auto law = channel_causal_law(ch, S0Mode::given(0), n);
    const JointLaw j = joint_law(pol, law);
    EXPECT_NEAR(functional_I(pol, law, Source::X1), directed_info_cc(j, Source::X1).total, 1e-10);
    EXPECT_NEAR(functional_I(pol, law, Source::X2), directed_info_cc(j, Source::X2).total, 1e-10);
    EXPECT_NEAR(functional_I(pol, law, Source::X1X2), directed_info(j, Source::X1X2).total, 1e-10);
    const auto t = info_triple(policy_weights(pol, law.shape()), law);
    EXPECT_NEAR(t.i12, directed_info(j, Source::X1X2).total, 1e-10);
  }
}

TEST(CausalFunctional, DegenerateSecondUserReducesToSingleUser) {
  std::mt19937_64 rng(8);
  const FsMac ch = random_fsmac(2, 3, 1, 2, rng);
  const auto pol = random_policies(ch, 2, true, rng);
  const auto law = channel_causal_law(ch, S0Mode::given(1), 2);
  const JointLaw j = joint_law(pol, law);
  EXPECT_NEAR(functional_I(pol, law, Source::X1), directed_info(j, Source::X1).total, 1e-10);
}

TEST(NoFeedback, NoFeedbackTurnsDirectedIntoMutualInformation) {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    const FsMac ch = random_fsmac(2, 2, 2, 2, rng);
    const std::size_t n = 1 + trial % 3;
    const auto pol = random_policies(ch, n, false, rng);
    const auto law = channel_causal_law(ch, S0Mode::given(1), n);
    const JointLaw j = joint_law(pol, law);
    EXPECT_NEAR(mutual_info(j, kX1, kY, kX2), directed_info_cc(j, Source::X1).total, 1e-10);
    EXPECT_NEAR(mutual_info(j, kX2, kY, kX1), directed_info_cc(j, Source::X2).total, 1e-10);
    EXPECT_NEAR(mutual_info(j, kX1 | kX2, kY), directed_info(j, Source::X1X2).total, 1e-10);
    EXPECT_NEAR(functional_I(pol, law, Source::X1), mutual_info(j, kX1, kY, kX2), 1e-10);
  }
}

TEST(DataProcessing, MultiplexerInputCarriesAtLeastAsMuch) {
  std::mt19937_64 rng(111);
  const auto mux = MuxTable::xor_table(2);
  for (int trial = 0; trial < 10; ++trial) {
    const FsMac p2p = random_fsmac(2, 2, 1, 3, rng);
    const FsMac ch = mux_p2p_compose(mux, p2p);
    const auto pol = random_policies(ch, 2, true, rng);
    const JointLaw j = joint_for(ch, pol, S0Mode::given(0));
    const JointLaw merged = merge_inputs(j, Alphabet(2), mux.table);
    EXPECT_LE(directed_info(j, Source::X1X2).total,
              directed_info(merged, Source::X1).total + 1e-10);
  }
}

TEST(ZeroRegion, UselessAndNoiselessChannels) {
  std::mt19937_64 rng(113);
  const FsMac useless = random_useless_fsmac(2, 2, 2, 2, rng);
  const auto v = zero_region_check(useless, 2, {4, 1e-12, 0.0, 2'000'000});
  EXPECT_TRUE(v.zero);
  EXPECT_LE(v.max_deviation, 1e-12);
  EXPECT_LE(v.grid_max, 1e-12);
  EXPECT_GT(v.grid_points, 0u);
  const FsMac clean = additive_modq_mac(2, NoiseChain::bernoulli(0.0));
  const auto c = zero_region_check(clean, 1, {4, 1e-12, 0.0, 2'000'000});
  EXPECT_FALSE(c.zero);
  EXPECT_NEAR(c.uniform_value, 1.0, 1e-12);
  EXPECT_THROW(zero_region_check(clean, 2, {8, 1e-12, 0.0, 1000}), SizingError);
}

TEST(EntropyRate, MemorylessNoiseCollapses) {
  for (double p : {0.5, 0.1, 0.27}) {
    for (std::size_t n : {1u, 3u, 6u}) {
      const auto b = entropy_rate_bounds(NoiseChain::bernoulli(p), n);
      EXPECT_NEAR(b.lower, oracle::h2(p), 1e-12);
      EXPECT_NEAR(b.upper, oracle::h2(p), 1e-12);
    }
  }
}

TEST(EntropyRate, BracketShrinksMonotonically) {
  const NoiseChain noise = NoiseChain::gilbert_elliott(0.1, 0.1, 0.01, 0.3);
  double lo = -1.0, hi = 2.0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto b = entropy_rate_bounds(noise, n);
    EXPECT_LE(b.lower, b.upper + 1e-12);
    EXPECT_GE(b.lower, lo - 1e-12);
    EXPECT_LE(b.upper, hi + 1e-12);
    lo = b.lower;
    hi = b.upper;
  }
  const auto b8 = entropy_rate_bounds(noise, 8);
  EXPECT_LT(b8.upper - b8.lower, 0.02);
}

TEST(SumRateIdentity, ExtremesAndResidual) {
  const auto a = ge_sumrate_identity_check(gilbert_elliott_mac(0.2, 0.2, 0.0, 0.0),
                                           NoiseChain::gilbert_elliott(0.2, 0.2, 0.0, 0.0), 3);
  EXPECT_NEAR(a.directed_info, 3.0, 1e-12);
  EXPECT_NEAR(a.noise_entropy, 0.0, 1e-12);
  const auto b = ge_sumrate_identity_check(gilbert_elliott_mac(0.2, 0.2, 0.5, 0.5),
                                           NoiseChain::gilbert_elliott(0.2, 0.2, 0.5, 0.5), 3);
  EXPECT_NEAR(b.directed_info, 0.0, 1e-12);
  EXPECT_NEAR(b.noise_entropy, 3.0, 1e-12);
  const auto c = ge_sumrate_identity_check(gilbert_elliott_mac(0.2, 0.2, 0.05, 0.25),
                                           NoiseChain::gilbert_elliott(0.2, 0.2, 0.05, 0.25), 4);
  EXPECT_LE(c.residual, 1e-9);
  EXPECT_THROW(ge_sumrate_identity_check(gilbert_elliott_mac(0.2, 0.2, 0.05, 0.25),
                                         NoiseChain::gilbert_elliott(0.2, 0.3, 0.05, 0.25), 2),
               InputError);
}
