#include "rainbow/catalog.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/forcing.hpp"
#include "rainbow/tree_embed.hpp"
#include "rainbow/universal_tree.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rainbow;

namespace {

std::vector<Poset> tree_posets(std::size_t n)
{
    std::vector<Poset> out;
    for (const Poset& p : enumerate_posets(n)) {
        if (is_tree_poset(p)) out.push_back(p);
    }
    return out;
}

} // namespace

TEST(CompleteTree, Indexing)
{
    const CompleteTree t(3, 3, std::vector<Color>(13, 0));
    EXPECT_EQ(CompleteTree::node_count(3, 3), 13u);
    EXPECT_EQ(t.rank(0), 3u);
    EXPECT_EQ(t.child_count(0), 3u);
    EXPECT_EQ(t.child(0, 2), 3u);
    EXPECT_EQ(t.rank(12), 1u);
    EXPECT_EQ(t.child_count(12), 0u);
    EXPECT_THROW(CompleteTree(2, 2, std::vector<Color>(2, 0)), Error);
}

TEST(TreeClassify, RejectsNonTrees)
{
    try {
        classify_tree(antichain(2));
        FAIL() << "antichain accepted";
    }
    catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_a_tree_poset);
    }
    EXPECT_THROW(classify_tree(diamond()), Error);
}

TEST(TreeClassify, SidesAlternateWithDistance)
{
    const Poset zig = make_poset(4, {{0, 1}, {2, 1}, {2, 3}});
    const TreeMeta m = classify_tree(zig, Element{1});
    EXPECT_EQ(m.base, 1u);
    EXPECT_EQ(m.dist, (std::vector<std::size_t>{1, 0, 1, 2}));
    EXPECT_EQ(m.side[1], TreeSide::center);
    EXPECT_EQ(m.side[0], TreeSide::down);
    EXPECT_EQ(m.side[3], TreeSide::up);
    EXPECT_THROW(classify_tree(zig, Element{0}), Error);
}

TEST(DowntreeEmbed, NeedsEnoughHeight)
{
    const CompleteTree host(2, 2, {0, 1, 2});
    EXPECT_THROW(embed_downtree(chain(2), {5}, host), Error);
    EXPECT_NO_THROW(embed_downtree(chain(2), {}, host));
}

TEST(DowntreeEmbed, PropertiesOnSmallHosts)
{
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        std::mt19937_64 rng(seed);
        const std::size_t ts = 1 + rng() % 4;
        const std::size_t k = ts + rng() % (6 - ts);
        const std::size_t usz = rng() % (k - ts + 1);
        auto colors = random_tree_coloring(k, k, rng);
        ColorSet unusable;
        while (unusable.size() < usz) unusable.insert(rng() % (k + 3));
        const CompleteTree host(k, k, std::move(colors));
        const Poset t = random_downtree(ts, rng);
        const auto cert = embed_downtree(t, unusable, host);
        EXPECT_TRUE(verify_certificate(host, t, cert)) << "seed " << seed;
        EXPECT_TRUE(check_downtree_properties(t, unusable, host, cert).all()) << "seed " << seed;
        for (Color c : cert.colors) EXPECT_FALSE(unusable.count(c));
    }
}

TEST(DowntreeEmbed, PosetHostAgreesWithImplicitHost)
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const std::size_t k = 3;
        auto colors = random_tree_coloring(k, k, rng);
        const CompleteTree implicit(k, k, colors);
        const Poset host = downtree(k, k);
        const Coloring coloring(colors);
        const Poset t = random_downtree(1 + rng() % 3, rng);
        const auto a = embed_downtree(t, {}, implicit);
        const auto b = embed_downtree(t, {}, host, coloring);
        EXPECT_EQ(a.map, b.map);
        EXPECT_TRUE(verify_certificate(host, coloring, t, b));
    }
}

TEST(DowntreeEmbed, RejectsHostsThatAreNotCompleteDowntrees)
{
    const Poset host = uptree(2, 2);
    EXPECT_THROW(embed_downtree(chain(1), {}, host, rank_coloring(host)), Error);
}

TEST(DowntreeEmbed, WidePalettes)
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        std::mt19937_64 rng(seed);
        const std::size_t k = 6 + rng() % 3;
        auto colors = random_palette_tree_coloring(k, k, k + rng() % (65 - k), rng);
        const CompleteTree host(k, k, std::move(colors));
        const Poset t = random_downtree(1 + rng() % 4, rng);
        const ColorSet unusable{0, 1};
        const auto cert = embed_downtree(t, unusable, host);
        EXPECT_TRUE(verify_certificate(host, t, cert));
        EXPECT_TRUE(check_downtree_properties(t, unusable, host, cert).all());
    }
}

TEST(UniversalEmbed, EveryColouringOfTheSmallTree)
{
    const UniversalTree t2 = universal_tree_structure(2);
    const Poset host = t2.poset();
    std::size_t count = 0;
    for (const Poset& t : tree_posets(2)) {
        for_each_proper_coloring(host, [&](const Coloring& c) {
            const auto cert = embed_universal(t, t2, c);
            EXPECT_TRUE(verify_certificate(host, c, t, cert));
            ++count;
            return true;
        });
    }
    EXPECT_EQ(count, 203u);
}

TEST(UniversalEmbed, SampledColouringsOfTheThreeTree)
{
    const UniversalTree t3 = universal_tree_structure(3);
    const Poset host = t3.poset();
    const auto trees = tree_posets(3);
    EXPECT_EQ(trees.size(), 3u);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const Coloring c = random_proper_coloring(host, rng);
        for (const Poset& t : trees) {
            const auto cert = embed_universal(t, t3, c);
            ASSERT_TRUE(verify_certificate(host, c, t, cert));
            EXPECT_TRUE(find_rainbow_copy(host, c, t));
        }
    }
}

TEST(UniversalEmbed, RankLayerColouring)
{
    const UniversalTree t3 = universal_tree_structure(3);
    const Poset host = t3.poset();
    const Coloring c = rank_coloring(host);
    const auto cert = embed_universal(vee(), t3, c);
    EXPECT_TRUE(verify_certificate(host, c, vee(), cert));
    EXPECT_EQ(ColorSet(cert.colors.begin(), cert.colors.end()).size(), 3u);
}

TEST(UniversalEmbed, SmallerTreesUseTheSameHost)
{
    const UniversalTree t3 = universal_tree_structure(3);
    const Poset host = t3.poset();
    std::mt19937_64 rng(32);
    const Coloring c = random_proper_coloring(host, rng);
    for (const Poset& t : {chain(1), chain(2), chain(3)}) EXPECT_TRUE(verify_certificate(host, c, t, embed_universal(t, t3, c)));
    EXPECT_THROW(embed_universal(chain(4), t3, c), Error);
}

TEST(UniversalEmbed, CertificateCheckRejectsTampering)
{
    const UniversalTree t2 = universal_tree_structure(2);
    const Poset host = t2.poset();
    const Coloring c = rank_coloring(host);
    auto cert = embed_universal(chain(2), t2, c);
    ASSERT_TRUE(verify_certificate(host, c, chain(2), cert));
    std::swap(cert.map[0], cert.map[1]);
    EXPECT_FALSE(verify_certificate(host, c, chain(2), cert));
}
