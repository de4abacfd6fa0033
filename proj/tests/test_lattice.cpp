#include "rainbow/constructions.hpp"
#include "rainbow/forcing.hpp"
#include "rainbow/lattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rainbow;

namespace {

SetFamily from_bits(std::size_t n, std::uint64_t bits)
{
    std::vector<SetMask> sets;
    for (SetMask s = 0; s < (SetMask{1} << n); ++s) {
        if (bits >> s & 1) sets.push_back(s);
    }
    return SetFamily(n, sets);
}

ExactRational q(long a, long b) { return ExactRational(a, b); }

} // namespace

TEST(SetFamilyBasics, ValidatesInput)
{
    EXPECT_THROW(SetFamily(2, {0, 4}), Error);
    EXPECT_THROW(SetFamily(2, {1, 1}), Error);
    EXPECT_EQ(SetFamily(3, {3, 1}).sets(), (std::vector<SetMask>{1, 3}));
    EXPECT_EQ(whole_lattice(3).size(), 8u);
    EXPECT_EQ(layer(5, 2).size(), 10u);
}

TEST(SetFamilyBasics, TextRoundTrip)
{
    const SetFamily f(4, {0, 1, 6, 15});
    const std::string text = serialize_family(f);
    EXPECT_EQ(parse_family(text), f);
    EXPECT_EQ(parse_family("family n=3\n{}\n1,3\n# note\n2\n"), SetFamily(3, {0, 5, 2}));
    EXPECT_THROW(parse_family("family n=3\n4\n"), Error);
    EXPECT_THROW(parse_family("n=3\n"), Error);
    EXPECT_EQ(format_set(0), "{}");
    EXPECT_EQ(format_set(5), "1,3");
}

TEST(Lubell, Values)
{
    for (std::size_t n = 1; n <= 6; ++n) {
        EXPECT_EQ(lubell_mass(whole_lattice(n)), ExactRational(n + 1));
        for (std::size_t i = 0; i <= n; ++i) EXPECT_EQ(lubell_mass(layer(n, i)), 1);
    }
    EXPECT_EQ(lubell_mass(SetFamily(4, {0, 1, 2, 3, 7, 15})), q(35, 12));
    EXPECT_EQ(to_string(q(19, 6)), "19/6");
    EXPECT_EQ(to_string(ExactRational(3)), "3");
}

TEST(Lubell, SigmaAndMiddleLayers)
{
    EXPECT_EQ(sigma(4, 1), 6u);
    EXPECT_EQ(sigma(4, 2), 10u);
    EXPECT_EQ(sigma(5, 2), 20u);
    EXPECT_EQ(sigma(4, 5), 16u);
    EXPECT_THROW(sigma(4, 6), Error);
    for (std::size_t n = 1; n <= 7; ++n) {
        for (std::size_t k = 1; k <= n + 1; ++k) {
            const SetFamily m = middle_layers(n, k);
            EXPECT_EQ(m.size(), sigma(n, k));
            EXPECT_TRUE(is_k_sperner(m, k));
        }
    }
    EXPECT_EQ(with_extremes(layer(3, 1)).size(), 5u);
}

TEST(Lubell, ExhaustiveOverB4)
{
    std::size_t antichains = 0, tight = 0;
    for (std::uint64_t bits = 0; bits < (1u << 16); ++bits) {
        const SetFamily f = from_bits(4, bits);
        const std::size_t len = longest_chain(f);
        const ExactRational mass = lubell_mass(f);
        EXPECT_LE(mass, ExactRational(len));
        for (std::size_t k = 1; k <= 5; ++k) EXPECT_TRUE(check_klym(f, k));
        EXPECT_TRUE(check_lubm(f));
        if (len <= 1) {
            ++antichains;
            if (mass == 1) ++tight;
        }
    }
    EXPECT_EQ(antichains, 168u);
    EXPECT_EQ(tight, 5u);
}

TEST(Lubell, StabilityBound)
{
    EXPECT_EQ(stability_bound(4, 1, 0), 3);
    EXPECT_TRUE(check_stab(SetFamily(4, {0}), 1, 0));
    EXPECT_THROW(check_stab(SetFamily(4, {0, 1}), 1, 0), Error);
    EXPECT_THROW(check_stab(SetFamily(4, {3}), 1, 2), Error);
    std::mt19937_64 rng(41);
    std::size_t checked = 0;
    for (int i = 0; i < 3000; ++i) {
        const std::size_t n = 4 + rng() % 4, k = 1 + rng() % 2;
        const SetMask seed = static_cast<SetMask>(rng() % (SetMask{1} << n));
        if (2 * set_size(seed) >= n) continue;
        const SetFamily f = greedy_k_sperner(n, k, seed, rng);
        ASSERT_TRUE(is_k_sperner(f, k));
        EXPECT_TRUE(check_stab(f, k, set_size(seed)));
        ++checked;
    }
    EXPECT_GT(checked, 500u);
}

TEST(Lubell, StabilityOnTwoSpernerFamiliesOfB6)
{
    std::mt19937_64 rng(45);
    for (int i = 0; i < 10000; ++i) {
        const SetMask one = SetMask{1} << (rng() % 6);
        const SetFamily f = greedy_k_sperner(6, 2, one, rng);
        ASSERT_TRUE(f.contains(one));
        EXPECT_TRUE(check_stab(f, 2, 1));
    }
    std::vector<SetMask> sets = layer(5, 2).sets();
    sets.push_back(1);
    EXPECT_THROW(check_stab(SetFamily(5, sets), 1, 1), Error);
}

TEST(Lubell, FloorHalf)
{
    EXPECT_EQ(floor_half(5), 2);
    EXPECT_EQ(floor_half(-1), -1);
    EXPECT_EQ(floor_half(-2), -1);
}

TEST(Structure, OrganFreeMeansCompleteLevels)
{
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        const SetFamily f = random_family(4, rng);
        if (f.size() == 0) continue;
        EXPECT_EQ(is_complete_multipartite(f), has_complete_level_structure(family_poset(f)));
    }
    EXPECT_TRUE(has_complete_level_structure(complete_multilevel({2, 3, 1})));
    EXPECT_FALSE(has_complete_level_structure(organ(2)));
}

TEST(Structure, FamilyPosetLabels)
{
    const Poset p = family_poset(SetFamily(3, {0, 3}));
    EXPECT_EQ(p.label(0), "{}");
    EXPECT_EQ(p.label(1), "1,2");
    EXPECT_TRUE(p.less(0, 1));
}

TEST(LayerColourings, LowerBoundConstructions)
{
    EXPECT_TRUE(rainbow_free_layer_check(6, 2, antichain(3), true));
    EXPECT_TRUE(rainbow_free_layer_check(6, 4, complete_multilevel({2, 2})));
    EXPECT_TRUE(rainbow_free_layer_check(4, 3, antichain(3)));
    EXPECT_FALSE(rainbow_free_layer_check(5, 3, antichain(3)));
    EXPECT_TRUE(rainbow_free_under_size_coloring(middle_layers(5, 1), antichain(2)));
    EXPECT_FALSE(rainbow_free_under_size_coloring(middle_layers(4, 2), antichain(2)));
}

TEST(MinMax, IdentityOnRandomFamilies)
{
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
        const auto r = minmax_partition(random_family(5, rng));
        EXPECT_TRUE(r.identity_holds);
        std::uint64_t chains = r.minus.chains;
        for (const auto& [key, cls] : r.classes) {
            chains += cls.chains;
            EXPECT_TRUE(proper_subset(key.first, key.second));
            EXPECT_GE(cls.average(), 2);
        }
        EXPECT_EQ(chains, 120u);
        EXPECT_LE(r.minus.average(), 1);
    }
}

TEST(MinMax, AntichainsStayInTheMinusClass)
{
    for (std::size_t i = 0; i <= 5; ++i) {
        const auto r = minmax_partition(layer(5, i));
        EXPECT_TRUE(r.classes.empty());
        EXPECT_EQ(r.minus.hits, r.chain_count);
    }
    EXPECT_THROW(minmax_partition(whole_lattice(9)), Error);
}

TEST(Extremal, SmallValues)
{
    EXPECT_EQ(la_star(3, {chain(2)}).value, 3u);
    EXPECT_EQ(la_star(4, {chain(3)}).value, 10u);
    EXPECT_EQ(la_star(3, {organ(2)}).value, 5u);
    EXPECT_EQ(la_star(4, {organ(2)}).value, 8u);
    EXPECT_EQ(la_star(4, {jay()}).value, 11u);
}

TEST(Extremal, RainbowValuesWithWitnessColourings)
{
    const std::vector<std::pair<Poset, std::vector<std::size_t>>> cases{
        {antichain(2), {5, 8}}, {vee(), {7, 11}}};
    for (const auto& [p, values] : cases) {
        for (std::size_t n = 3; n <= 4; ++n) {
            const LaResult r = la_rainbow_star(n, p);
            EXPECT_EQ(r.value, values[n - 3]);
            ASSERT_TRUE(r.coloring);
            const Poset fp = family_poset(r.witness);
            EXPECT_TRUE(is_proper(fp, *r.coloring));
            EXPECT_FALSE(find_rainbow_copy(fp, *r.coloring, p));
        }
    }
    EXPECT_EQ(la_rainbow_star(2, chain(2)).value, 2u);
}

TEST(HarpFree, ExhaustiveMaximumInB4)
{
    const MassMaximum m = max_mass_h2_free_with_extremes(4);
    EXPECT_EQ(m.value, q(19, 6));
    EXPECT_EQ(m.witness, SetFamily(4, {0, 1, 2, 3, 7, 11, 15}));
    EXPECT_FALSE(contains_copy(family_poset(m.witness), harp(2)));
}

TEST(HarpFree, GreedySamplesStayUnderTheBound)
{
    std::mt19937_64 rng(44);
    for (std::size_t n = 5; n <= 8; ++n) {
        for (int i = 0; i < 200; ++i) {
            const SetFamily f = greedy_h2_free_with_extremes(n, rng);
            EXPECT_LE(lubell_mass(f), q(19, 6));
            if (n <= 6) {
                EXPECT_FALSE(contains_copy(family_poset(f), harp(2)));
            }
        }
    }
}
