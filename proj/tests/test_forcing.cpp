#include "rainbow/canonical.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/forcing.hpp"
#include "rainbow/oracles.hpp"
#include "rainbow/poset_io.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rainbow;

namespace {

Poset random_poset(std::size_t n, std::mt19937_64& rng)
{
    std::vector<Cover> arcs;
    for (Element a = 0; a < n; ++a) {
        for (Element b = a + 1; b < n; ++b) {
            if (rng() % 3 == 0) arcs.emplace_back(a, b);
        }
    }
    return make_poset(n, arcs);
}

Element by_label(const Poset& p, const std::string& name)
{
    for (Element x = 0; x < p.size(); ++x) {
        if (p.label(x) == name) return x;
    }
    throw std::runtime_error("no element labelled " + name);
}

} // namespace

TEST(RainbowCopy, LexLeastAndRainbow)
{
    const Poset host = antichain(4);
    const Coloring c(std::vector<std::size_t>{0, 0, 1, 2});
    const auto copy = find_rainbow_copy(host, c, antichain(3));
    ASSERT_TRUE(copy);
    EXPECT_EQ(*copy, (std::vector<Element>{0, 2, 3}));
    EXPECT_FALSE(find_rainbow_copy(host, monochromatic(4), antichain(2)));
}

TEST(Forcing, ChainsForceThemselves)
{
    for (std::size_t k = 1; k <= 6; ++k) {
        EXPECT_TRUE(forces(chain(k), chain(k)));
        EXPECT_TRUE(is_minimal_forcing(chain(k), chain(k)));
    }
}

TEST(Forcing, AntichainsDoNot)
{
    for (std::size_t k = 2; k <= 5; ++k) {
        const auto v = rainbow_forces(antichain(k), antichain(k));
        EXPECT_FALSE(v.forces);
        ASSERT_TRUE(v.refutation);
        EXPECT_TRUE(is_proper(antichain(k), *v.refutation));
        EXPECT_FALSE(find_rainbow_copy(antichain(k), *v.refutation, antichain(k)));
    }
}

TEST(Forcing, MatchesBruteForce)
{
    std::mt19937_64 rng(11);
    const std::vector<Poset> patterns{antichain(2), vee(), dual(vee()), antichain(3), chain(2), disjoint_sum(chain(2), chain(1))};
    for (int i = 0; i < 150; ++i) {
        const Poset host = random_poset(3 + rng() % 4, rng);
        for (const Poset& pat : patterns) {
            if (pat.size() > host.size()) continue;
            EXPECT_EQ(forces(host, pat), oracle::forces(host, pat)) << serialize_poset(host);
        }
    }
}

TEST(Forcing, RefutationsAreGenuine)
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        const Poset host = random_poset(4 + rng() % 5, rng);
        const auto c = refuting_coloring(host, antichain(2));
        if (!c) continue;
        EXPECT_TRUE(is_proper(host, *c));
        EXPECT_FALSE(oracle::has_rainbow_copy(host, *c, antichain(2)));
    }
}

TEST(Forcing, WorkersGiveTheSameRefutation)
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 40; ++i) {
        const Poset host = random_poset(7, rng);
        ForcingOptions serial, parallel;
        parallel.workers = 4;
        EXPECT_EQ(refuting_coloring(host, vee(), serial), refuting_coloring(host, vee(), parallel));
    }
}

TEST(Forcing, BudgetBecomesTimeout)
{
    ForcingOptions opt;
    opt.budget = std::chrono::milliseconds(0);
    try {
        forces(organ(5), antichain(5), opt);
        FAIL() << "no timeout";
    }
    catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::timeout);
    }
}

TEST(Forcing, SmallMinimalForcers)
{
    PosetCatalog cat(6);
    const auto a2 = search_M(antichain(2), 6, cat);
    ASSERT_EQ(a2.size(), 1u);
    EXPECT_TRUE(are_isomorphic(a2[0], organ(2)));
    const auto v = search_M(vee(), 6, cat);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_TRUE(are_isomorphic(v[0], jay()));
    const auto d = search_M(diamond(), 6, cat);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_TRUE(are_isomorphic(d[0], harp(2)));
    for (std::size_t k = 1; k <= 3; ++k) EXPECT_TRUE(is_minimal_forcing(organ(k), antichain(k)));
    EXPECT_TRUE(is_minimal_forcing(a3_witness(), antichain(3)));
}

TEST(Forcing, SevenElementForcersOfThreeAntichain)
{
    PosetCatalog cat(7);
    const auto found = search_M(antichain(3), 7, cat);
    EXPECT_TRUE(std::any_of(found.begin(), found.end(), [](const Poset& p) { return are_isomorphic(p, a3_witness()); }));
    EXPECT_TRUE(std::any_of(found.begin(), found.end(), [](const Poset& p) { return are_isomorphic(p, organ(3)); }));
    for (const Poset& p : found) EXPECT_TRUE(is_minimal_forcing(p, antichain(3)));
}

TEST(Forcing, MValues)
{
    PosetCatalog cat(7);
    for (std::size_t k = 1; k <= 4; ++k) {
        const MValue m = m_value(chain(k), cat);
        EXPECT_TRUE(m.exact);
        EXPECT_EQ(m.lower, k);
    }
    EXPECT_EQ(m_value(antichain(2), cat).lower, 3u);
    const MValue a3 = m_value(antichain(3), cat);
    EXPECT_TRUE(a3.exact);
    EXPECT_EQ(a3.lower, 6u);
    EXPECT_EQ(m_value(vee(), cat).lower, 4u);
    const MValue a4 = m_value(antichain(4), cat);
    EXPECT_FALSE(a4.exact);
    EXPECT_EQ(a4.lower, 8u);
    EXPECT_EQ(a4.upper, 10u);
}

TEST(Forcing, LinearSumClosure)
{
    EXPECT_TRUE(verify_linear_sum_closure(chain(1), chain(1), organ(2), antichain(2)));
    EXPECT_TRUE(verify_linear_sum_closure(jay(), vee(), chain(1), chain(1)));
    EXPECT_TRUE(verify_linear_sum_closure(organ(2), antichain(2), organ(2), antichain(2)));
}

// Measured facts about O^2_4: it forces A_4, yet deleting t'_3 leaves a poset
// that still forces A_4, so it is not minimal. Every other deletion is refuted.
TEST(Forcing, TwoChainConstructionForFourAntichain)
{
    const Poset host = o_jk(2, 4);
    ASSERT_TRUE(forces(host, antichain(4)));
    const Element tp3 = by_label(host, "t'_3");
    for (Element x = 0; x < host.size(); ++x) {
        const Poset smaller = delete_element(host, x);
        const auto c = refuting_coloring(smaller, antichain(4));
        if (x == tp3) {
            EXPECT_FALSE(c);
            EXPECT_TRUE(oracle::forces(smaller, antichain(4)));
        }
        else {
            ASSERT_TRUE(c) << host.label(x);
            EXPECT_TRUE(is_proper(smaller, *c));
            EXPECT_FALSE(oracle::has_rainbow_copy(smaller, *c, antichain(4)));
        }
    }
    EXPECT_FALSE(is_minimal_forcing(host, antichain(4)));
}

TEST(Forcing, TwoChainConstructionAtFive)
{
    EXPECT_TRUE(is_minimal_forcing(o_jk(2, 5), antichain(5)));
}
