#include "oracles.hpp"

#include <graphmom/exact_linalg.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace graphmom;

namespace {

ExactMatrix from_rows(const std::vector<std::vector<Rational>>& rows)
{
    ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

std::vector<std::vector<Rational>> to_rows(const ExactMatrix& m)
{
    std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

// Gram matrix of r random integer vectors: PSD of rank <= r, sometimes with
// a negative rank-one perturbation.
ExactMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, std::size_t r, bool perturb)
{
    std::vector<std::vector<int>> vecs(r, std::vector<int>(n));
    for (auto& v : vecs)
        for (int& x : v) x = static_cast<int>(rng() % 5) - 2;
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& v : vecs) m(i, j) += Rational(v[i] * v[j]);
    if (perturb) {
        std::vector<int> w(n);
        for (int& x : w) x = static_cast<int>(rng() % 3) - 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) -= oracle::frac(w[i] * w[j], 2);
    }
    return m;
}

} // namespace

TEST(RankExact, Examples)
{
    EXPECT_EQ(rank_exact(from_rows({{1, 2}, {2, 4}})), 1u);
    EXPECT_EQ(rank_exact(from_rows({{0, 0}, {0, 0}})), 0u);
    EXPECT_EQ(rank_exact(ExactMatrix::identity(5)), 5u);
    EXPECT_EQ(rank_exact(from_rows({{1, 2, 3}, {4, 5, 6}})), 2u);
    EXPECT_EQ(rank_exact(ExactMatrix(0, 0)), 0u);
}

TEST(RankExact, AgreesWithMinors)
{
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 1 + rng() % 5;
        const auto m = random_symmetric(rng, n, rng() % (n + 1), rep % 2 == 1);
        EXPECT_EQ(rank_exact(m), oracle::rank_by_minors(to_rows(m))) << rep;
    }
}

TEST(PsdCheck, Examples)
{
    const auto pos = psd_check(from_rows({{2, 1}, {1, 2}}));
    EXPECT_TRUE(pos.psd);
    EXPECT_EQ(pos.rank, 2u);

    const auto semi = psd_check(from_rows({{1, 1}, {1, 1}}));
    EXPECT_TRUE(semi.psd);
    EXPECT_EQ(semi.rank, 1u);

    // zero diagonal with a nonzero off-diagonal entry
    const auto m = from_rows({{0, 1}, {1, 0}});
    const auto neg = psd_check(m);
    EXPECT_FALSE(neg.psd);
    EXPECT_LT(sgn(neg.value), 0);
    EXPECT_EQ(m.quadratic_form(neg.witness), neg.value);

    EXPECT_THROW(psd_check(from_rows({{1, 2}, {0, 1}})), std::invalid_argument);
    EXPECT_TRUE(psd_check(ExactMatrix(0, 0)).psd);
}

TEST(PsdCheck, AgreesWithMinorsAndWitnessIsValid)
{
    std::mt19937_64 rng(32);
    int negatives = 0;
    for (int rep = 0; rep < 120; ++rep) {
        const std::size_t n = 1 + rng() % 5;
        const auto m = random_symmetric(rng, n, rng() % (n + 1), rep % 2 == 1);
        const auto cert = psd_check(m);
        ASSERT_EQ(cert.psd, oracle::psd_by_minors(to_rows(m))) << rep;
        if (cert.psd) {
            EXPECT_EQ(cert.rank, rank_exact(m));
        } else {
            ++negatives;
            ASSERT_EQ(cert.witness.size(), n);
            EXPECT_LT(sgn(cert.value), 0);
            EXPECT_EQ(m.quadratic_form(cert.witness), cert.value);
        }
    }
    EXPECT_GT(negatives, 10);
}

TEST(NumericRank, MatchesExactOnWellConditioned)
{
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 2 + rng() % 5;
        const auto m = random_symmetric(rng, n, rng() % (n + 1), false);
        double cond = 0;
        EXPECT_EQ(numeric_rank(to_float(m), 1e-10, &cond), rank_exact(m));
        EXPECT_GE(cond, 0.0);
    }
}

TEST(SymmetricEigenvalues, Ascending)
{
    Matrix<double> m(2, 2);
    m(0, 0) = 2;
    m(0, 1) = m(1, 0) = 1;
    m(1, 1) = 2;
    const auto ev = symmetric_eigenvalues(m);
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_NEAR(ev[0], 1.0, 1e-12);
    EXPECT_NEAR(ev[1], 3.0, 1e-12);
}

TEST(Matrix, SelectAndQuadraticForm)
{
    const auto m = from_rows({{1, 2, 3}, {2, 5, 6}, {3, 6, 9}});
    const auto sub = m.select({0, 2}, {0, 2});
    EXPECT_EQ(sub, from_rows({{1, 3}, {3, 9}}));
    EXPECT_EQ(m.quadratic_form({1, 0, -1}), 1 - 6 + 9);
    EXPECT_THROW(m.quadratic_form({1}), std::invalid_argument);
}

TEST(WorkedExamples, SmallMatrices)
{
    EXPECT_EQ(rank_exact(ExactMatrix(3, 3, Rational(1))), 1u);
    EXPECT_TRUE(psd_check(from_rows({{1, 0}, {0, 0}})).psd);
    const auto m = from_rows({{1, 2}, {2, 1}});
    const auto c = psd_check(m);
    EXPECT_FALSE(c.psd);
    EXPECT_LT(sgn(c.value), 0);
    EXPECT_EQ(m.quadratic_form(c.witness), c.value);
    EXPECT_EQ(m.quadratic_form({1, -1}), -2);
}
