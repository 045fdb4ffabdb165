#include "oracles.hpp"

#include <graphmom/hom.hpp>
#include <graphmom/moments.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace graphmom;

TEST(Measure, ValidationAndMoments)
{
    EXPECT_THROW(make_measure({0, 0}, {Rational(1, 2), Rational(1, 2)}), std::invalid_argument);
    EXPECT_THROW(make_measure({0, 1}, {Rational(1, 2), Rational(1, 3)}), std::invalid_argument);
    EXPECT_THROW(make_measure({0}, {}), std::invalid_argument);
    const auto mu = make_measure({1, 0}, {Rational(1, 4), Rational(3, 4)});
    EXPECT_EQ(mu.atoms.front(), 0);
    const auto a = mu.moments(4);
    EXPECT_EQ(a, (std::vector<Rational>{1, Rational(1, 4), Rational(1, 4), Rational(1, 4)}));
}

TEST(Hankel, Shape)
{
    const std::vector<Rational> a{1, 2, 3, 4, 5};
    const auto h = hankel(a);
    EXPECT_EQ(h.rows(), 3u);
    EXPECT_EQ(h(1, 2), 4);
    EXPECT_EQ(h(2, 2), 5);
    EXPECT_EQ(hankel(a, 2).rows(), 2u);
    EXPECT_THROW(hankel(a, 4), std::invalid_argument);
    EXPECT_THROW(hankel(std::vector<Rational>{}), std::invalid_argument);
}

TEST(Hankel, RankCountsAtoms)
{
    std::mt19937_64 rng(51);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t r = 1 + rng() % 4;
        std::vector<Rational> atoms, weights;
        for (std::size_t i = 0; i < r; ++i) {
            atoms.push_back(oracle::frac(static_cast<long>(i) * 3 + static_cast<long>(rng() % 3), 7));
            weights.push_back(oracle::frac(1, static_cast<long>(r)));
        }
        const auto mu = make_measure(atoms, weights);
        const auto rep_ = hankel_psd_rank({mu.moments(2 * r + 3), MomentDomain::unit_interval});
        EXPECT_TRUE(rep_.certificate.psd);
        EXPECT_EQ(rep_.rank, r);
    }
}

TEST(Hankel, NonMomentSequenceHasWitness)
{
    // a_2 < a_1^2 is impossible for a probability measure
    const MomentSequence<Rational> seq{{1, Rational(1, 2), Rational(1, 8)}, MomentDomain::symmetric};
    const auto rep = hankel_psd_rank(seq);
    EXPECT_FALSE(rep.certificate.psd);
    EXPECT_EQ(hankel(seq.values).quadratic_form(rep.certificate.witness), rep.certificate.value);
}

TEST(Hausdorff, MomentsOfUnitIntervalMeasuresPass)
{
    const auto mu = make_measure({0, Rational(1, 3), 1}, {Rational(1, 2), Rational(1, 4), Rational(1, 4)});
    EXPECT_TRUE(hausdorff_check({mu.moments(8), MomentDomain::unit_interval}, 7).pass);
    // uniform measure: a_n = 1/(n+1)
    std::vector<Rational> u;
    for (int n = 0; n < 10; ++n) u.push_back(oracle::frac(1, n + 1));
    EXPECT_TRUE(hausdorff_check({u, MomentDomain::unit_interval}, 9).pass);
}

TEST(Hausdorff, DetectsMassOutsideInterval)
{
    // point mass at 2: a_0 - a_1 = -1
    const MomentSequence<Rational> seq{{1, 2, 4, 8}, MomentDomain::unit_interval};
    EXPECT_TRUE(hankel_psd_rank(seq).certificate.psd);
    const auto rep = hausdorff_check(seq, 3);
    EXPECT_FALSE(rep.pass);
    EXPECT_EQ(rep.k, 1u);
    EXPECT_EQ(rep.n, 0u);
    EXPECT_EQ(rep.value, -1);
    EXPECT_THROW(hausdorff_check({{1}, MomentDomain::symmetric}, 1), std::invalid_argument);
}

TEST(Recover, RationalAtomsExactly)
{
    std::mt19937_64 rng(52);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t r = 1 + rng() % 4;
        std::vector<Rational> atoms, weights;
        Rational left = 1;
        for (std::size_t i = 0; i < r; ++i) {
            atoms.push_back(oracle::frac(static_cast<long>(i) * 5 - 7 + static_cast<long>(rng() % 5), 3));
            const Rational w = i + 1 == r ? left : left * oracle::frac(1 + static_cast<long>(rng() % 3), 5);
            weights.push_back(w);
            left -= w;
        }
        const auto mu = make_measure(atoms, weights);
        const auto got = recover_finite_support(mu.moments(2 * r + 2), r + 1);
        ASSERT_TRUE(got.exact) << rep;
        EXPECT_EQ(got.measure.atoms, mu.atoms);
        EXPECT_EQ(got.measure.weights, mu.weights);
    }
}

TEST(Recover, IrrationalAtomsApproximately)
{
    // atoms +-sqrt(2) with equal weight
    const std::vector<Rational> a{1, 0, 2, 0, 4, 0};
    const auto got = recover_finite_support(a, 2);
    EXPECT_FALSE(got.exact);
    ASSERT_EQ(got.approximate.atoms.size(), 2u);
    EXPECT_NEAR(got.approximate.atoms[0], -std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(got.approximate.atoms[1], std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(got.approximate.weights[0], 0.5, 1e-10);
}

TEST(Recover, Errors)
{
    EXPECT_THROW(recover_finite_support(std::vector<Rational>{1, 0}, 2), std::invalid_argument);
    EXPECT_THROW(recover_finite_support(std::vector<Rational>{2, 0, 1, 0}, 2), std::invalid_argument);
    // uniform on [0,1] has full-rank Hankel matrices
    std::vector<Rational> u;
    for (int n = 0; n < 8; ++n) u.push_back(oracle::frac(1, n + 1));
    EXPECT_THROW(recover_finite_support(u, 2), std::domain_error);
}

TEST(Recover, FloatMode)
{
    FiniteSupportMeasure<double> src;
    src.atoms = {-0.5, 0.25, 0.75};
    src.weights = {0.25, 0.35, 0.4};
    const auto a = src.moments(6);
    const auto mu = recover_finite_support(a, 3);
    const auto back = mu.moments(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(back[j], a[j], 1e-9);
    ASSERT_EQ(mu.atoms.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(mu.atoms[i], src.atoms[i], 1e-8);
    EXPECT_THROW(recover_finite_support(std::vector<double>{1, 0.5}, 2), std::invalid_argument);
}

TEST(InducedNonnegativity, HomParameters)
{
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Rational> alpha{1, 2};
        SquareMatrix<Rational> beta(2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = i; j < 2; ++j) beta(i, j) = beta(j, i) = oracle::frac(static_cast<long>(rng() % 5), 4);
        const auto f = density_parameter(normalize(WeightedGraph<Rational>(alpha, beta)));
        const auto g = oracle::random_multigraph(rng, 4, 0, 1);
        EXPECT_GE(sgn(induced_nonnegativity(f, g)), 0);
    }
    // edge-count parameter fails on the single node pair without its edge
    const auto edges = table_parameter<Rational>(
        [](const Multigraph& g) { return Rational(static_cast<long>(g.edge_count())); }, "edges");
    EXPECT_LT(sgn(induced_nonnegativity(edges, family::edgeless(2))), 0);
    EXPECT_THROW(induced_nonnegativity(edges, family::fat_edge(2)), std::invalid_argument);
}

TEST(Hankel, WorkedExamples)
{
    const auto point = hankel_psd_rank({{1, Rational(1, 2), Rational(1, 4), Rational(1, 8)}, MomentDomain::unit_interval});
    EXPECT_TRUE(point.certificate.psd);
    EXPECT_EQ(point.rank, 1u);
    const auto pm = hankel_psd_rank({{1, 0, 1, 0, 1}, MomentDomain::symmetric});
    EXPECT_TRUE(pm.certificate.psd);
    EXPECT_EQ(pm.rank, 2u);
    EXPECT_FALSE(hankel_psd_rank({{1, Rational(1, 2), Rational(1, 10)}, MomentDomain::symmetric}).certificate.psd);
}

TEST(Hausdorff, PointMassAtHalf)
{
    std::vector<Rational> a;
    for (unsigned n = 0; n < 9; ++n) a.push_back(oracle::power(Rational(1, 2), n));
    EXPECT_TRUE(hausdorff_check({a, MomentDomain::unit_interval}, 8).pass);
    EXPECT_TRUE(hausdorff_check({std::vector<Rational>(6, Rational(1)), MomentDomain::unit_interval}, 5).pass);
}

TEST(Hausdorff, ShortPrefixOnlyFailsAsHankel)
{
    // differences of (1, 1/2, 1/10) are all nonnegative: 1 - 1 + 1/10 at k = 2
    const MomentSequence<Rational> seq{{1, Rational(1, 2), Rational(1, 10)}, MomentDomain::unit_interval};
    EXPECT_TRUE(hausdorff_check(seq, 2).pass);
    EXPECT_FALSE(hankel_psd_rank(seq).certificate.psd);
}

TEST(Recover, WorkedExamples)
{
    const Rational a(2, 3);
    const auto single = recover_finite_support(std::vector<Rational>{1, a, a * a, a * a * a}, 2);
    ASSERT_TRUE(single.exact);
    EXPECT_EQ(single.measure.atoms, std::vector<Rational>{a});
    EXPECT_EQ(single.measure.weights, std::vector<Rational>{1});

    const auto pm = recover_finite_support(std::vector<Rational>{1, 0, 1, 0}, 2);
    ASSERT_TRUE(pm.exact);
    EXPECT_EQ(pm.measure.atoms, (std::vector<Rational>{-1, 1}));
    EXPECT_EQ(pm.measure.weights, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));

    const auto coin = recover_finite_support(std::vector<Rational>{1, Rational(1, 2), Rational(1, 2), Rational(1, 2)}, 2);
    ASSERT_TRUE(coin.exact);
    EXPECT_EQ(coin.measure.atoms, (std::vector<Rational>{0, 1}));
}

TEST(InducedNonnegativity, ConstantHalf)
{
    const auto f = density_parameter(StepGraphon<Rational>::constant(Rational(1, 2)));
    EXPECT_EQ(induced_nonnegativity(f, family::complete(2)), Rational(1, 2));
    EXPECT_EQ(induced_nonnegativity(f, family::edgeless(2)), Rational(1, 2));
    EXPECT_EQ(induced_nonnegativity(f, family::edgeless(3)), Rational(1, 8));
}
