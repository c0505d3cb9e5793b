#include "dasep/kernels.hpp"

#include "dasep/linalg.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dasep;

namespace {

Rational q(long a, long b = 1) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

ParamPoint pt(Rational t, Rational u) { return ParamPoint::make(std::move(t), std::move(u)); }

void expect_matches_oracle(const TransitionKernel& k, const oracle::Chain& chain) {
    ASSERT_EQ(k.size(), chain.states.size());
    for (std::size_t r = 0; r < k.size(); ++r) {
        ASSERT_EQ(k.states()[r], chain.states[r]);
        for (std::size_t c = 0; c < k.size(); ++c) {
            EXPECT_EQ(k.at(r, c), chain.matrix[r][c]) << k.states()[r].to_string() << " -> " << k.states()[c].to_string();
        }
    }
}

}  // namespace

TEST(ParamPoint, RejectsNegative) {
    EXPECT_THROW(ParamPoint::make(q(-1), q(1)), ValidationError);
    EXPECT_THROW(ParamPoint::make(q(1), q(-1, 2)), ValidationError);
}

TEST(AsepKernel, RowEntries) {
    const Rational t = q(2, 5);
    auto k = asep_kernel(Partition::make({2, 1, 0}), t);
    const auto& s = k.states();
    const auto r = s.require_index(Word{0, 1, 2});
    EXPECT_EQ(k.at(r, s.require_index(Word{0, 2, 1})), q(1, 3));
    EXPECT_EQ(k.at(r, s.require_index(Word{2, 1, 0})), t / 3);
    EXPECT_EQ(k.at(r, s.require_index(Word{1, 0, 2})), q(1, 3));
    EXPECT_EQ(k.diagonal(r), 1 - q(2, 3) - t / 3);
}

TEST(AsepKernel, SymmetricAtTOne) {
    auto k = asep_kernel(Partition::make({1, 1, 0}), q(1));
    for (std::size_t r = 0; r < k.size(); ++r) {
        for (std::size_t c = 0; c < k.size(); ++c) EXPECT_EQ(k.at(r, c), k.at(c, r));
    }
}

TEST(AsepKernel, TwoTwoZeroRowTargetsMatchBruteForce) {
    // The sector has three states, so the row reaches both others and nothing else.
    auto k = asep_kernel(Partition::make({2, 2, 0}), q(1, 2));
    const auto r = k.states().require_index(Word{2, 2, 0});
    const auto chain = oracle::dense_asep({2, 2, 0}, q(1, 2));
    std::size_t expected = 0;
    for (std::size_t c = 0; c < chain.states.size(); ++c) {
        if (c != r && chain.matrix[r][c] != 0) ++expected;
    }
    EXPECT_EQ(expected, 2u);
    EXPECT_EQ(k.off_diagonal(r).size(), expected);
}

TEST(AsepKernel, MatchesOracle) {
    std::mt19937_64 rng(3);
    for (auto parts : std::vector<std::vector<int>>{{2, 1, 0}, {1, 1, 0}, {2, 2, 0}, {3, 2, 1, 0}, {2, 1, 0, 0}, {1, 0}}) {
        for (int trial = 0; trial < 3; ++trial) {
            const Rational t = oracle::random_rational(rng, 9, 4);
            expect_matches_oracle(asep_kernel(Partition::make(std::span<const int>(parts)), t), oracle::dense_asep(parts, t));
        }
    }
}

TEST(DasepKernel, MatchesOracle) {
    std::mt19937_64 rng(4);
    for (auto [n, p, qq] : std::vector<std::tuple<int, int, int>>{{3, 2, 2}, {3, 3, 2}, {4, 2, 2}, {3, 1, 2}, {4, 3, 1}, {2, 2, 1}}) {
        for (int trial = 0; trial < 3; ++trial) {
            const Rational t = oracle::random_rational(rng, 12, 5);
            const Rational u = oracle::random_rational(rng, 30, 4);
            expect_matches_oracle(dasep_kernel(n, p, qq, pt(t, u)), oracle::dense_dasep(n, p, qq, t, u));
        }
    }
}

TEST(DasepKernel, RowMassOfZeroOneOne) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const Rational t = oracle::random_unit(rng);
        const Rational u = oracle::random_unit(rng);
        auto k = dasep_kernel(3, 2, 2, pt(t, u));
        EXPECT_EQ(k.size(), 12u);
        const auto r = k.states().require_index(Word{0, 1, 1});
        EXPECT_EQ(1 - k.diagonal(r), (1 + t + 2 * u) / 9);
    }
}

TEST(DasepKernel, UniformAtOneOne) {
    auto k = dasep_kernel(3, 2, 2, pt(q(1), q(1)));
    for (std::size_t r = 0; r < k.size(); ++r) {
        for (std::size_t c = 0; c < k.size(); ++c) EXPECT_EQ(k.at(r, c), k.at(c, r));
    }
}

TEST(DasepKernel, SingleSpeciesIsLazyAsep) {
    const Rational t = q(3, 7);
    auto k = dasep_kernel(3, 1, 2, pt(t, q(5)));
    auto a = asep_kernel(Partition::make({1, 1, 0}), t);
    ASSERT_EQ(k.states(), a.states());
    for (std::size_t r = 0; r < k.size(); ++r) {
        for (const auto& [target, rate] : k.moves(r)) EXPECT_NE(rate, Rate::U);
        for (std::size_t c = 0; c < k.size(); ++c) {
            if (r != c) EXPECT_EQ(k.at(r, c) * 3, a.at(r, c));
        }
    }
}

TEST(DasepKernel, LazinessEngagesForLargeU) {
    auto k = dasep_kernel(3, 2, 2, pt(q(1), q(20)));
    EXPECT_GT(k.laziness(), 1);
    EXPECT_EQ(k.laziness(), k.minimal_laziness());
    for (std::size_t r = 0; r < k.size(); ++r) EXPECT_GE(k.diagonal(r), 0);
    EXPECT_THROW(k.with_laziness(k.laziness() - 1), ValidationError);
}

TEST(KernelProperties, RowStochastic) {
    std::mt19937_64 rng(6);
    std::vector<std::vector<int>> partitions{{2, 1, 0}, {1, 1, 0}, {2, 2, 1, 0}, {3, 1, 0, 0}, {1, 0, 0}};
    for (int trial = 0; trial < 100; ++trial) {
        const Rational t = oracle::random_rational(rng, 20, 3);
        const TransitionKernel k = trial % 2 == 0
            ? asep_kernel(Partition::make(std::span<const int>(partitions[static_cast<std::size_t>(trial / 2) % partitions.size()])), t)
            : dasep_kernel(3 + trial % 2, 1 + trial % 3, 1 + trial % 2, pt(t, oracle::random_rational(rng, 40, 3)));
        for (std::size_t r = 0; r < k.size(); ++r) {
            EXPECT_EQ(k.row_sum(r), 1);
            for (std::size_t c = 0; c < k.size(); ++c) EXPECT_GE(k.at(r, c), 0);
        }
    }
}

TEST(KernelProperties, OffDiagonalRatesAreOneTOrU) {
    const ParamPoint point = pt(q(2, 3), q(5, 7));
    auto k = dasep_kernel(4, 3, 2, point);
    const Rational scale = Rational(k.laziness()) * k.base_denominator();
    for (std::size_t r = 0; r < k.size(); ++r) {
        for (const auto& [target, rate] : k.moves(r)) {
            const Rational v = rate_value(rate, point);
            EXPECT_TRUE(v == point.t || v == 1 || v == point.u);
        }
        Rational total(0);
        for (const auto& [target, rate] : k.moves(r)) total += rate_value(rate, point) / scale;
        EXPECT_EQ(total, 1 - k.diagonal(r));
    }
}

TEST(KernelProperties, RotationEquivariance) {
    std::mt19937_64 rng(7);
    for (auto [n, p, qq] : std::vector<std::tuple<int, int, int>>{{3, 2, 2}, {4, 2, 3}, {5, 2, 2}, {4, 3, 2}}) {
        auto k = dasep_kernel(n, p, qq, pt(oracle::random_rational(rng, 5, 3), oracle::random_rational(rng, 5, 3)));
        const auto& s = k.states();
        for (std::size_t r = 0; r < k.size(); ++r) {
            const auto rr = s.require_index(s[r].rotated());
            for (std::size_t c = 0; c < k.size(); ++c) {
                EXPECT_EQ(k.at(r, c), k.at(rr, s.require_index(s[c].rotated())));
            }
        }
    }
}

TEST(KernelProperties, IrreducibleForPositiveParameters) {
    const ParamPoint point = pt(q(1, 2), q(1, 3));
    for (int n = 2; n <= 5; ++n) {
        for (int p = 1; p <= 4; ++p) {
            for (int qq = 1; qq < n; ++qq) {
                if (dasep_states(n, p, qq).size() > 700) continue;
                auto k = dasep_kernel(n, p, qq, point);
                EXPECT_FALSE(k.non_communicating_pair().has_value()) << n << "," << p << "," << qq;
            }
        }
    }
}

TEST(KernelProperties, ReducibleWithoutMutation) {
    auto k = dasep_kernel(3, 2, 2, pt(q(1), q(0)));
    EXPECT_TRUE(k.non_communicating_pair().has_value());
}

TEST(KernelProperties, LazificationKeepsStationary) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        auto k = dasep_kernel(3, 2, 2, pt(oracle::random_rational(rng, 6, 3), oracle::random_rational(rng, 40, 3, 1)));
        const auto base = stationary(k);
        for (int extra = 1; extra <= 3; ++extra) {
            auto lazier = k.with_laziness(k.laziness() + extra);
            EXPECT_EQ(stationary(lazier), base);
        }
    }
}

TEST(Kernel, DotExport) {
    auto k = asep_kernel(Partition::make({1, 0}), q(1, 2));
    const auto dot = k.to_dot();
    EXPECT_EQ(dot.rfind("digraph asep {", 0), 0u);
    EXPECT_NE(dot.find("s0 [label=\"0,1\"];"), std::string::npos);
    EXPECT_NE(dot.find("s0 -> s1 [label="), std::string::npos);
}
