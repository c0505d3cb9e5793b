#include "dasep/simulate.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace dasep;

namespace {

Rational q(long a, long b = 1) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

}  // namespace

TEST(Simulate, UniformTarget) {
    const auto k = dasep_kernel(3, 2, 2, ParamPoint::make(q(1), q(1)));
    const auto e = run(k, SimConfig{1000000, 17, 0, 0});
    EXPECT_EQ(e.total, 1000000u);
    for (auto c : e.counts) EXPECT_LT(std::abs(static_cast<double>(c) / 1e6 - 1.0 / 12), 0.01);
}

TEST(Simulate, TotalVariationToExact) {
    const auto k = dasep_kernel(3, 2, 2, ParamPoint::make(q(1, 2), q(1, 2)));
    const auto start = std::chrono::steady_clock::now();
    const auto e = run(k, SimConfig{2000000, 2024, 1000, 0});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(seconds, 10.0);
    EXPECT_LT(tv_distance(e.to_distribution(), stationary(k)), q(1, 50));
}

TEST(Simulate, SameSeedSameCounts) {
    const auto k = dasep_kernel(3, 3, 2, ParamPoint::make(q(2, 3), q(3, 4)));
    const auto a = run(k, SimConfig{50000, 5, 10, 3});
    const auto b = run(k, SimConfig{50000, 5, 10, 3});
    EXPECT_EQ(a.counts, b.counts);
    const auto c = run(k, SimConfig{50000, 6, 10, 3});
    EXPECT_NE(a.counts, c.counts);
}

TEST(Simulate, PathFollowsKernelSupport) {
    const auto k = dasep_kernel(3, 2, 2, ParamPoint::make(q(1, 3), q(2)));
    const auto path = sample_path(k, 9, 5000, 0);
    std::size_t prev = 0;
    for (auto s : path) {
        EXPECT_GT(k.at(prev, s), 0);
        prev = s;
    }
}

TEST(Simulate, ValidatesConfig) {
    const auto k = dasep_kernel(3, 2, 2, ParamPoint::make(q(1), q(1)));
    EXPECT_THROW(run(k, SimConfig{0, 1, 0, 0}), ValidationError);
    EXPECT_THROW(run(k, SimConfig{10, 1, 10, 0}), ValidationError);
    EXPECT_THROW(run(k, SimConfig{10, 1, 0, 99}), ValidationError);
}

TEST(TotalVariation, PointMassAgainstUniform) {
    const auto space = dasep_states(3, 2, 2);
    std::vector<Rational> uniform(space.size(), q(1, 12));
    std::vector<Rational> point(space.size(), q(0));
    point[0] = 1;
    EXPECT_EQ(tv_distance(Distribution(space, uniform), Distribution(space, point)), q(11, 12));
    const auto other = dasep_states(3, 3, 2);
    EXPECT_THROW(tv_distance(Distribution(space, uniform), Distribution(other, std::vector<Rational>(27, q(1, 27)))),
                 ValidationError);
}
