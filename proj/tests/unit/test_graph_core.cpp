#include "oracles.hpp"

#include <graphmom/canonical.hpp>
#include <graphmom/multigraph.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace graphmom;

namespace {

bool same_class(const Multigraph& a, const Multigraph& b, LabelMode mode = LabelMode::fixed)
{
    return canonical_code(a, mode) == canonical_code(b, mode);
}

} // namespace

TEST(Multigraph, RejectsLoopsAndExcessLabels)
{
    Multigraph g(3);
    EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
    EXPECT_THROW(Multigraph(2, 3), std::invalid_argument);
}

TEST(Multigraph, EdgeCountSumsMultiplicities)
{
    Multigraph g(3);
    g.add_edge(0, 1, 2);
    g.add_edge(1, 2);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_EQ(g.max_multiplicity(), 2u);
    EXPECT_FALSE(g.is_simple());
    EXPECT_TRUE(g.simplified().is_simple());
    EXPECT_EQ(g.simplified().edge_count(), 2u);
}

TEST(Glue, SingleEdgesMakeDoubleEdge)
{
    const auto z = family::labeled_edge(2, 0, 1);
    EXPECT_TRUE(same_class(glue_product(z, z), family::fat_edge(2, 2)));
}

TEST(Glue, EdgelessIsUnit)
{
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 20; ++rep) {
        const auto f = oracle::random_multigraph(rng, 4, 2, 2);
        EXPECT_TRUE(same_class(glue_product(f, family::edgeless(2, 2)), f));
    }
}

TEST(Glue, TwoLabeledPathsMakeFourCycle)
{
    const auto p = family::labeled_path(2);
    EXPECT_TRUE(same_class(glue_product(p, p).with_labels(0), family::cycle(4), LabelMode::free));
}

TEST(Glue, CommutativeAssociativeAndAdditive)
{
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 30; ++rep) {
        const auto a = oracle::random_multigraph(rng, 3 + rng() % 2, 2, 2);
        const auto b = oracle::random_multigraph(rng, 2 + rng() % 3, 2, 2);
        const auto c = oracle::random_multigraph(rng, 3, 2, 1);
        const auto ab = glue_product(a, b);
        EXPECT_EQ(ab.node_count(), a.node_count() + b.node_count() - 2);
        EXPECT_EQ(ab.multiplicity(0, 1), a.multiplicity(0, 1) + b.multiplicity(0, 1));
        EXPECT_TRUE(oracle::isomorphic(ab, glue_product(b, a)));
        EXPECT_TRUE(oracle::isomorphic(glue_product(ab, c), glue_product(a, glue_product(b, c))));
    }
}

TEST(Glue, MismatchedLabelsThrow)
{
    EXPECT_THROW(glue_product(family::edgeless(2, 1), family::edgeless(2, 2)), std::invalid_argument);
}

TEST(SimpleGlue, SuppressesMultiplicity)
{
    const auto z = family::labeled_edge(2, 0, 1);
    const auto g = simple_glue_product(z, z);
    EXPECT_EQ(g.multiplicity(0, 1), 1u);
    EXPECT_THROW(simple_glue_product(family::fat_edge(2, 2), z), std::invalid_argument);

    // cherries sharing both labels: K_{2,2}, nothing doubled
    auto cherry = family::complete_bipartite(2, 1).with_labels(2);
    const auto k22 = simple_glue_product(cherry, cherry);
    EXPECT_TRUE(k22.is_simple());
    EXPECT_TRUE(same_class(k22.with_labels(0), family::complete_bipartite(2, 2), LabelMode::free));
}

TEST(SimpleGlue, NoLabelsIsDisjointUnion)
{
    const auto g = simple_glue_product(family::complete(3), family::path(2));
    EXPECT_TRUE(oracle::isomorphic(g, disjoint_union(family::complete(3), family::path(2))));
}

TEST(DisjointUnion, Examples)
{
    const auto two = disjoint_union(family::single_node(), family::single_node());
    EXPECT_EQ(two.node_count(), 2u);
    EXPECT_EQ(two.edge_count(), 0u);
    const auto f = family::labeled_path(3);
    const auto same = disjoint_union(f, family::empty());
    EXPECT_EQ(same.label_count(), 0u);
    EXPECT_TRUE(oracle::isomorphic(same, f.with_labels(0)));
    const auto mixed = disjoint_union(family::complete(2), family::fat_edge(2));
    EXPECT_EQ(mixed.node_count(), 4u);
    EXPECT_EQ(mixed.multiplicity(0, 1), 1u);
    EXPECT_EQ(mixed.multiplicity(2, 3), 2u);
}

TEST(Canonical, InvariantUnderPermutations)
{
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 40; ++rep) {
        const auto g = oracle::random_multigraph(rng, 5, rep % 3, 2);
        EXPECT_TRUE(same_class(g, oracle::shuffled(rng, g)));
    }
    const auto k3 = family::complete(3);
    EXPECT_TRUE(same_class(k3, k3.permuted({2, 0, 1}), LabelMode::free));
    EXPECT_FALSE(same_class(family::cycle(4), family::fat_edge(2), LabelMode::free));
}

TEST(Canonical, AgreesWithPermutationOracle)
{
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t k = rng() % 2;
        const auto a = oracle::random_multigraph(rng, 4, k, 1);
        const auto b = oracle::random_multigraph(rng, 4, k, 1);
        EXPECT_EQ(same_class(a, b), oracle::isomorphic(a, b));
    }
}

TEST(Canonical, FixedModeRespectsLabels)
{
    // pendant edge at label 1 vs at label 2
    Multigraph a(3, 2), b(3, 2);
    a.add_edge(0, 2);
    b.add_edge(1, 2);
    EXPECT_FALSE(same_class(a, b));
    EXPECT_TRUE(same_class(a, b, LabelMode::free));
}

TEST(Canonical, GuardAndDecode)
{
    EXPECT_THROW(canonical_code(family::edgeless(11), LabelMode::free), std::length_error);
    std::mt19937_64 rng(5);
    const auto g = oracle::random_multigraph(rng, 5, 2, 3);
    EXPECT_TRUE(oracle::isomorphic(decode(canonical_code(g, LabelMode::fixed)), g));
}

TEST(Subdivide, Examples)
{
    EXPECT_TRUE(same_class(subdivide(family::complete(2)), family::path(3), LabelMode::free));
    EXPECT_TRUE(same_class(subdivide(family::cycle(5)), family::cycle(10), LabelMode::free));
    EXPECT_TRUE(same_class(subdivide(family::fat_edge(2)), family::cycle(4), LabelMode::free));
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 20; ++rep) {
        const auto f = oracle::random_multigraph(rng, 4, 1, 3);
        const auto s = subdivide(f);
        EXPECT_TRUE(s.is_simple());
        EXPECT_EQ(s.edge_count(), 2 * f.edge_count());
        EXPECT_EQ(s.label_count(), 1u);
    }
}

TEST(Family, Examples)
{
    EXPECT_EQ(family::fat_edge(0).node_count(), 2u);
    EXPECT_EQ(family::fat_edge(0).edge_count(), 0u);
    EXPECT_TRUE(same_class(family::cycle(2), family::fat_edge(2), LabelMode::free));
    EXPECT_THROW(family::cycle(1), std::invalid_argument);
    EXPECT_TRUE(same_class(family::complete_bipartite(1, 2), family::path(3), LabelMode::free));
    EXPECT_EQ(family::complete_bipartite(0, 2).edge_count(), 0u);
    EXPECT_EQ(family::complete(4).edge_count(), 6u);
}

TEST(Enumerate, HandCounts)
{
    EXPECT_EQ(enumerate_k_labeled(0, 2, 1).size(), 4u);
    EXPECT_EQ(enumerate_k_labeled(2, 2, 2).size(), 3u);
    const auto only = enumerate_k_labeled(0, 0, 3);
    ASSERT_EQ(only.size(), 1u);
    EXPECT_EQ(only[0].node_count(), 0u);
    // simple graphs on exactly 4 nodes: 11 classes
    std::size_t four = 0;
    for (const auto& g : enumerate_k_labeled(0, 4, 1)) four += g.node_count() == 4;
    EXPECT_EQ(four, 11u);
}

TEST(Enumerate, DistinctDeterministicAndGuarded)
{
    const auto a = enumerate_k_labeled(1, 4, 2);
    const auto b = enumerate_k_labeled(1, 4, 2);
    ASSERT_EQ(a.size(), b.size());
    std::set<CanonicalCode> codes;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_TRUE(a[i] == b[i]);
        codes.insert(canonical_code(a[i], LabelMode::fixed));
    }
    EXPECT_EQ(codes.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size() && j < i + 8; ++j) EXPECT_FALSE(oracle::isomorphic(a[i], a[j]));
    EXPECT_THROW(enumerate_k_labeled(0, 11, 1), std::length_error);
}
