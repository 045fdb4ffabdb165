#include "oracles.hpp"

#include <graphmom/hom.hpp>
#include <graphmom/spectral.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace graphmom;

namespace {

StepGraphon<Rational> random_graphon(std::mt19937_64& rng, std::size_t n)
{
    std::vector<Rational> m;
    Rational left = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Rational w = left * oracle::frac(1 + static_cast<long>(rng() % 3), 5);
        m.push_back(w);
        left -= w;
    }
    m.push_back(left);
    SquareMatrix<Rational> v(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) v(i, j) = v(j, i) = oracle::frac(static_cast<long>(rng() % 9) - 4, 4);
    return StepGraphon<Rational>(m, v, 1);
}

} // namespace

TEST(Spectrum, ConstantGraphon)
{
    const auto w = StepGraphon<Rational>::constant(Rational(1, 2));
    const auto ev = eigenvalues_step(w);
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_NEAR(ev[0], 0.5, 1e-14);
}

TEST(Spectrum, CycleDensityIsPowerSum)
{
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 20; ++rep) {
        const auto w = random_graphon(rng, 1 + rng() % 4);
        for (std::size_t n = 3; n <= 7; ++n)
            EXPECT_NEAR(cycle_density_spectral(w, n), t(family::cycle(n), w).get_d(), 1e-12);
        EXPECT_NEAR(cycle_density_spectral(w, 2), t(family::fat_edge(2), w).get_d(), 1e-12);
    }
    EXPECT_THROW(cycle_density_spectral(StepGraphon<Rational>::constant(1), 1), std::invalid_argument);
}

TEST(Spectrum, CosineKernel)
{
    // cos 2 pi (x - y) has eigenvalues 1/2, 1/2
    const auto w = grid_graphon([](double x, double y) { return std::cos(2 * std::numbers::pi * (x - y)); }, 64);
    const auto ev = eigenvalues_step(w, 1e-9);
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_NEAR(ev[0], 0.5, 1e-9);
    EXPECT_NEAR(ev[1], 0.5, 1e-9);
}

TEST(Refine, PreservesDensities)
{
    std::mt19937_64 rng(62);
    const auto w = random_graphon(rng, 2);
    const Rational cut = w.measures()[0] / 2;
    const auto r = refine(w, {cut, w.measures()[0], Rational(1)});
    EXPECT_EQ(r.steps(), 3u);
    for (const auto& f : {family::cycle(4), family::complete(3), family::fat_edge(3)}) EXPECT_EQ(t(f, r), t(f, w));
}

TEST(Compose, SubdivisionIdentityExact)
{
    std::mt19937_64 rng(63);
    for (int rep = 0; rep < 15; ++rep) {
        const auto w = random_graphon(rng, 1 + rng() % 3);
        for (const auto& f : {family::complete(3), family::cycle(4), family::fat_edge(2), family::path(3)}) {
            const auto c = check_subdivision(f, w);
            EXPECT_TRUE(c.equal);
            EXPECT_EQ(c.lhs, c.rhs);
        }
    }
}

TEST(Compose, DifferentPartitionsAreRefined)
{
    std::mt19937_64 rng(64);
    const auto a = random_graphon(rng, 2);
    const auto [ra, rb] = common_refinement(a, a);
    EXPECT_EQ(ra.measures(), rb.measures());
    const auto sq = compose_step(a, a);
    const auto r2 = refine(a, {a.measures()[0] / 3, a.measures()[0], Rational(1)});
    EXPECT_EQ(t(family::complete(3), compose_step(r2, a)), t(family::complete(3), sq));
}

TEST(Compose, FloatMatchesExact)
{
    std::mt19937_64 rng(65);
    const auto w = random_graphon(rng, 3);
    const auto c = check_subdivision(family::cycle(3), to_float(w));
    EXPECT_TRUE(c.equal);
    EXPECT_NEAR(c.lhs, check_subdivision(family::cycle(3), w).lhs.get_d(), 1e-12);
}

TEST(RankBounds, DistinctAndTotalEigenvalues)
{
    std::mt19937_64 rng(66);
    for (int rep = 0; rep < 10; ++rep) {
        const auto w = random_graphon(rng, 1 + rng() % 3);
        const auto b = tw_rank_bounds(w, 5);
        EXPECT_TRUE(b.holds) << b.distinct_nonzero << " " << b.rank_c << " " << b.total_nonzero;
    }
}

TEST(LowRank, MatchesExactDensity)
{
    std::mt19937_64 rng(67);
    for (int rep = 0; rep < 10; ++rep) {
        const auto w = random_graphon(rng, 1 + rng() % 3);
        for (const auto& f : {family::complete(3), family::complete(4), family::fat_edge(2), family::edgeless(2)})
            EXPECT_NEAR(density_low_rank(f, w), t(f, w).get_d(), 1e-10);
    }
}

namespace {

StepGraphon<Rational> k2_graphon()
{
    SquareMatrix<Rational> v(2);
    v(0, 1) = v(1, 0) = 1;
    return StepGraphon<Rational>({Rational(1, 2), Rational(1, 2)}, v, 1);
}

} // namespace

TEST(WorkedExamples, BipartiteGraphon)
{
    const auto w = k2_graphon();
    const auto ev = eigenvalues_step(w);
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_NEAR(ev[0], 0.5, 1e-14);
    EXPECT_NEAR(ev[1], -0.5, 1e-14);
    EXPECT_NEAR(cycle_density_spectral(w, 3), 0.0, 1e-14);
    EXPECT_NEAR(cycle_density_spectral(w, 4), 0.125, 1e-14);
    EXPECT_EQ(t(family::cycle(4), w), Rational(1, 8));

    const auto sq = compose_step(w, w);
    EXPECT_EQ(sq.value(0, 0), Rational(1, 2));
    EXPECT_EQ(sq.value(0, 1), 0);
    const auto c = check_subdivision(family::fat_edge(2), w);
    EXPECT_EQ(c.lhs, Rational(1, 8));
    EXPECT_EQ(c.rhs, Rational(1, 8));

    const auto b = tw_rank_bounds(w, 4);
    EXPECT_EQ(b.distinct_nonzero, 2u);
    EXPECT_EQ(b.total_nonzero, 2u);
    EXPECT_EQ(b.rank_c, 2u);
}

TEST(WorkedExamples, ConstantsAndProductKernel)
{
    const auto c1 = StepGraphon<Rational>::constant(Rational(1, 3));
    const auto c2 = StepGraphon<Rational>::constant(Rational(3, 4));
    EXPECT_EQ(compose_step(c1, c2).value(0, 0), Rational(1, 4));
    const auto half = tw_rank_bounds(StepGraphon<Rational>::constant(Rational(1, 2)), 3);
    EXPECT_EQ(half.distinct_nonzero, 1u);
    EXPECT_EQ(half.rank_c, 1u);
    EXPECT_EQ(half.total_nonzero, 1u);
    EXPECT_NEAR(cycle_density_spectral(StepGraphon<Rational>::constant(Rational(1, 2)), 3), 0.125, 1e-15);

    const auto xy = grid_graphon([](double x, double y) { return x * y; }, 256);
    const auto ev = eigenvalues_step(xy, 1e-9);
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_NEAR(ev[0], 1.0 / 3, 1e-4);
    EXPECT_EQ(tw_rank_bounds(xy, 3, 1e-9).rank_c, 1u);
}

TEST(WorkedExamples, CompositionSquaresEigenvalues)
{
    std::mt19937_64 rng(68);
    const auto w = random_graphon(rng, 3);
    auto ev = eigenvalues_step(w);
    auto ev2 = eigenvalues_step(compose_step(w, w));
    for (double& x : ev) x *= x;
    std::sort(ev.begin(), ev.end());
    std::sort(ev2.begin(), ev2.end());
    ASSERT_EQ(ev.size(), ev2.size());
    for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], ev2[i], 1e-12);
}
