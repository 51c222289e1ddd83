#include "rifo/core/rng.hpp"
#include "rifo/dpapprox/admission.hpp"
#include "rifo/dpapprox/fidelity.hpp"
#include "rifo/schedulers/rifo.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace rifo;
using namespace rifo::dpapprox;

namespace {

const DataplaneParams kB3{3, 3};

bool rational(Rank min, Rank max, Rank r, std::uint32_t B, std::uint32_t l) {
    const long long rr = std::min<long long>(r, max);
    return oracle::geq({static_cast<long long>(max) - rr, static_cast<long long>(max) - min},
                       {static_cast<long long>(B) - l, B});
}

}  // namespace

TEST(AdmitCrossmul, WorkedExample) {
    EXPECT_FALSE(admit_crossmul(1, 6, 5, 2, kB3));
    EXPECT_TRUE(admit_crossmul(1, 6, 4, 2, kB3));
}

TEST(AdmitCrossmul, BestRankAlwaysPasses) {
    for (std::uint32_t l = 0; l <= 20; ++l) EXPECT_TRUE(admit_crossmul(3, 40, 3, l, DataplaneParams{20, 20}));
}

TEST(AdmitCrossmul, FullRegisterWidthDoesNotOverflow) {
    const Rank top = 0xFFFFFFFFU;
    const DataplaneParams p{0xFFFFFFFFU, 0xFFFFFFFFU};
    EXPECT_TRUE(admit_crossmul(0, top, 0, 0, p));
    EXPECT_FALSE(admit_crossmul(0, top, 1, 0, p));
    EXPECT_TRUE(admit_crossmul(0, top, top, 0xFFFFFFFFU, p));
}

TEST(AdmitCrossmul, AgreesWithRationalOnSmallGrid) {
    for (std::uint32_t B = 1; B <= 12; ++B) {
        for (std::uint32_t l = 0; l < B; ++l) {
            for (Rank max = 1; max <= 12; ++max) {
                for (Rank min = 0; min < max; ++min) {
                    for (Rank r = min; r <= max; ++r) {
                        ASSERT_EQ(admit_crossmul(min, max, r, l, DataplaneParams{B, B}), rational(min, max, r, B, l));
                    }
                }
            }
        }
    }
}

TEST(NearestPow2, TiesGoUp) {
    EXPECT_EQ(nearest_pow2_exponent(1), 0U);
    EXPECT_EQ(nearest_pow2_exponent(2), 1U);
    EXPECT_EQ(nearest_pow2_exponent(3), 2U);
    EXPECT_EQ(nearest_pow2_exponent(5), 2U);
    EXPECT_EQ(nearest_pow2_exponent(6), 3U);
    EXPECT_EQ(nearest_pow2_exponent(7), 3U);
    EXPECT_EQ(nearest_pow2_exponent(12), 4U);
    EXPECT_EQ(nearest_pow2_exponent(11), 3U);
    EXPECT_EQ(nearest_pow2_exponent(18), 4U);
    EXPECT_EQ(nearest_pow2_exponent(20), 4U);
    EXPECT_EQ(nearest_pow2_exponent(24), 5U);
}

TEST(AdmitShift, RoundsThreeToFour) {
    // B = 3 -> 4, B - l = 1: (max - r) << 2 >= (max - min) << 0.
    EXPECT_FALSE(admit_shift(1, 6, 5, 2, kB3));  // 4 >= 5
    EXPECT_TRUE(admit_shift(2, 6, 5, 2, kB3));   // 4 >= 4
    EXPECT_FALSE(admit_crossmul(2, 6, 5, 2, kB3));  // 3 >= 4
}

TEST(AdmitShift, IdenticalWhenMultipliersArePowersOfTwo) {
    for (std::uint32_t B : {1U, 2U, 4U, 8U, 16U, 32U}) {
        for (std::uint32_t free = 1; free <= B; free *= 2) {
            const std::uint32_t l = B - free;
            for (Rank max = 1; max <= 20; ++max) {
                for (Rank min = 0; min < max; ++min) {
                    for (Rank r = min; r <= max; ++r) {
                        ASSERT_EQ(admit_shift(min, max, r, l, DataplaneParams{B, B}),
                                  admit_crossmul(min, max, r, l, DataplaneParams{B, B}));
                    }
                }
            }
        }
    }
}

TEST(DataplaneParams, ScaledMultiplier) {
    EXPECT_EQ(guaranteed_capacity(20, Ratio(1, 10)), 18U);
    EXPECT_EQ(guaranteed_capacity(3, Ratio(1, 2)), 2U);  // 1.5 rounds up
    EXPECT_EQ(guaranteed_capacity(1, Ratio(9, 10)), 1U);
    EXPECT_EQ(make_dataplane_params(20, Ratio(1, 10), false).left_multiplier, 20U);
    EXPECT_EQ(make_dataplane_params(20, Ratio(1, 10), true).left_multiplier, 18U);
}

TEST(ParseArithmetic, Names) {
    EXPECT_EQ(parse_arithmetic("exact"), Arithmetic::ExactCrossMul);
    EXPECT_EQ(parse_arithmetic("crossmul"), Arithmetic::ExactCrossMul);
    EXPECT_EQ(parse_arithmetic("shift"), Arithmetic::ShiftApprox);
    EXPECT_THROW(parse_arithmetic("float"), std::invalid_argument);
}

TEST(ScoreRule, CrossmulRuleMatchesRationalRuleInScheduler) {
    Rng rng(4);
    RifoScheduler exact(RifoParams{8, 6, Ratio(1, 10)});
    RifoScheduler integer(RifoParams{8, 6, Ratio(1, 10)}, make_score_rule({Arithmetic::ExactCrossMul, false}, 8, Ratio(1, 10)));
    for (PacketId id = 1; id < 20000; ++id) {
        Packet p;
        p.id = id;
        p.rank = static_cast<Rank>(rng.uniform_int(0, 100));
        p.size_bytes = 64;
        ASSERT_EQ(exact.enqueue(p, 0), integer.enqueue(p, 0));
        if (rng.uniform_int(0, 1) == 0) {
            exact.dequeue(0);
            integer.dequeue(0);
        }
    }
}

TEST(Fidelity, ExactModeAgreesEverywhere) {
    Rng rng(1);
    const auto r = fidelity_report({Arithmetic::ExactCrossMul, false}, 100000, rng);
    EXPECT_EQ(r.trials, 100000U);
    EXPECT_EQ(r.agreements, r.trials);
    EXPECT_DOUBLE_EQ(r.agreement(), 1.0);
}

TEST(Fidelity, ShiftModeOnPowerOfTwoSubsetAgreesEverywhere) {
    Rng rng(2);
    FidelityDomain d;
    d.capacity = 32;
    d.powers_of_two_only = true;
    const auto r = fidelity_report({Arithmetic::ShiftApprox, false}, 100000, rng, d);
    EXPECT_EQ(r.agreements, r.trials);
}

TEST(Fidelity, DisagreementsSplitIntoDirections) {
    Rng rng(3);
    const auto r = fidelity_report({Arithmetic::ShiftApprox, false}, 100000, rng);
    EXPECT_LT(r.agreements, r.trials);
    EXPECT_EQ(r.agreements + r.false_admit + r.false_drop, r.trials);
}

TEST(Fidelity, SameSeedSameReport) {
    Rng a(77);
    Rng b(77);
    const auto x = fidelity_report({Arithmetic::ShiftApprox, true}, 20000, a);
    const auto y = fidelity_report({Arithmetic::ShiftApprox, true}, 20000, b);
    EXPECT_EQ(x.agreements, y.agreements);
    EXPECT_EQ(x.false_admit, y.false_admit);
}

TEST(Fidelity, RejectsZeroTrials) {
    Rng rng(1);
    EXPECT_THROW(fidelity_report({}, 0, rng), std::invalid_argument);
}
