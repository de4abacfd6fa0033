#pragma once

#include "rainbow/canonical.hpp"
#include "rainbow/catalog.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/forcing.hpp"
#include "rainbow/lattice.hpp"
#include "rainbow/oracles.hpp"
#include "rainbow/tree_embed.hpp"
#include "rainbow/universal_tree.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace rainbow::suite {

enum class Tier { quick, full };

struct Config {
    Tier tier = Tier::full;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::chrono::milliseconds budget{std::chrono::minutes(15)};
};

struct Result {
    int id = 0;
    std::string title;
    bool passed = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;
};

/// Sizes used per tier. Full matches the stated criteria exactly.
struct Scale {
    std::size_t catalog_cap;
    std::size_t downtree_seeds;
    std::size_t universal_colorings;
    std::size_t greedy_samples;

    static Scale of(Tier t)
    {
        if (t == Tier::quick) return {6, 1000, 200, 1000};
        return {7, 10000, 1000, 10000};
    }
};

namespace detail {

inline std::string yes(bool b) { return b ? "yes" : "no"; }

class Checker {
public:
    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            passed_ = false;
            if (!failures_.empty()) failures_ += "; ";
            failures_ += what;
        }
    }
    void note(const std::string& s)
    {
        if (!notes_.empty()) notes_ += "; ";
        notes_ += s;
    }
    bool passed() const { return passed_; }
    std::string detail() const { return failures_.empty() ? notes_ : "FAILED: " + failures_ + (notes_.empty() ? "" : " | " + notes_); }

private:
    bool passed_ = true;
    std::string failures_;
    std::string notes_;
};

inline bool contains_iso(const std::vector<Poset>& list, const Poset& p)
{
    return std::any_of(list.begin(), list.end(), [&](const Poset& q) { return are_isomorphic(p, q); });
}

inline std::size_t binom2(std::size_t n) { return n * (n - 1) / 2; }

} // namespace detail

// 1 ----------------------------------------------------------------------------
inline void poset_counts(const Config& cfg, detail::Checker& c)
{
    const Scale sc = Scale::of(cfg.tier);
    const std::vector<std::size_t> expected{1, 1, 2, 5, 16, 63, 318, 2045};
    PosetCatalog cat(sc.catalog_cap);
    std::ostringstream counts;
    for (std::size_t n = 1; n <= sc.catalog_cap; ++n) {
        const std::size_t got = cat.by_size(n).size();
        counts << (n > 1 ? "," : "") << got;
        c.expect(got == expected[n], "size " + std::to_string(n) + " gave " + std::to_string(got));
    }
    c.note("counts " + counts.str());
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto filtered = oracle::posets_by_filtering(n);
        std::set<std::vector<bool>> augmented;
        for (const Poset& p : cat.by_size(n)) augmented.insert(oracle::canonical_form(p));
        c.expect(filtered == augmented, "filtering and augmentation disagree at size " + std::to_string(n));
    }
    c.note("filtering agrees for n<=5");
}

// 2 ----------------------------------------------------------------------------
inline void forcing_size_window(const Config& cfg, detail::Checker& c)
{
    const Scale sc = Scale::of(cfg.tier);
    PosetCatalog cat(sc.catalog_cap);
    ForcingOptions opt{cfg.budget, cfg.workers};
    std::size_t exact = 0, bracketed = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        for (const Poset& p : cat.by_size(n)) {
            const MValue m = m_value(p, cat, opt);
            const std::size_t perp = perp_value(p);
            c.expect(n <= m.lower && m.lower <= m.upper && m.upper <= perp && perp <= detail::binom2(n + 1),
                     "window broken for a poset of size " + std::to_string(n));
            if (m.exact) ++exact;
            else ++bracketed;
            if (is_chain(p)) c.expect(m.exact && m.lower == n, "m(C_" + std::to_string(n) + ") != " + std::to_string(n));
            if (!is_chain(p)) c.expect(m.lower > n, "non-chain of size " + std::to_string(n) + " has m = |P|");
        }
    }
    const MValue a2 = m_value(antichain(2), cat, opt), a3 = m_value(antichain(3), cat, opt);
    c.expect(a2.exact && a2.lower == 3, "m(A_2) != 3");
    c.expect(a3.exact && a3.lower == 6, "m(A_3) != 6");
    c.note(std::to_string(exact) + " exact, " + std::to_string(bracketed) + " bracketed above the cap");
}

// 3 ----------------------------------------------------------------------------
inline void small_minimal_forcers(const Config& cfg, detail::Checker& c)
{
    PosetCatalog cat(6);
    ForcingOptions opt{cfg.budget, cfg.workers};
    auto unique_is = [&](const Poset& pattern, const Poset& want, const std::string& name) {
        const auto found = search_M(pattern, 6, cat, opt);
        c.expect(found.size() == 1 && are_isomorphic(found.front(), want), name + ": search returned " + std::to_string(found.size()) + " posets");
    };
    unique_is(antichain(2), organ(2), "M(A_2)");
    unique_is(vee(), jay(), "M(V)");
    unique_is(diamond(), harp(2), "M(diamond)");
    for (std::size_t k = 1; k <= 3; ++k) c.expect(is_minimal_forcing(organ(k), antichain(k), opt), "O_" + std::to_string(k) + " not minimal for A_" + std::to_string(k));
    c.expect(is_minimal_forcing(a3_witness(), antichain(3), opt), "seven-element witness not minimal for A_3");
    c.note("uniqueness certified up to size 6");
}

// 4 ----------------------------------------------------------------------------
inline void two_chain_construction(const Config& cfg, detail::Checker& c)
{
    const Poset host = o_jk(2, 4);
    const Poset a4 = antichain(4);
    ForcingOptions opt{cfg.budget, cfg.workers};
    c.expect(forces(host, a4, opt), "O^2_4 does not force A_4");
    std::size_t refuted = 0;
    std::string still;
    for (Element x = 0; x < host.size(); ++x) {
        const Poset smaller = delete_element(host, x);
        const auto col = refuting_coloring(smaller, a4, opt);
        if (col && is_proper(smaller, *col) && !find_rainbow_copy(smaller, *col, a4)) ++refuted;
        else still += (still.empty() ? "" : ",") + host.label(x);
    }
    c.expect(refuted == host.size(), "deletions still forcing A_4: " + still);
    c.note(std::to_string(refuted) + "/" + std::to_string(host.size()) + " deletions refuted");
}

// 5 ----------------------------------------------------------------------------
inline void blowups_force(const Config& cfg, detail::Checker& c)
{
    PosetCatalog cat(5);
    ForcingOptions opt{cfg.budget, cfg.workers};
    std::size_t checked = 0, sized = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
        for (const Poset& p : cat.by_size(n)) {
            std::vector<Element> pi(n);
            std::iota(pi.begin(), pi.end(), Element{0});
            do {
                const BlowUp b = blowup_with_chains(p, pi);
                c.expect(b.poset.size() == perp_value(p), "blow-up size differs from perp value");
                ++sized;
                if (n <= 4) {
                    c.expect(forces(b.poset, p, opt), "a blow-up does not force its poset");
                    ++checked;
                }
            } while (std::next_permutation(pi.begin(), pi.end()));
        }
    }
    c.note(std::to_string(checked) + " blow-ups forced, " + std::to_string(sized) + " sizes equal perp");
}

// 6 ----------------------------------------------------------------------------
inline void sum_closure(const Config& cfg, detail::Checker& c)
{
    ForcingOptions opt{cfg.budget, cfg.workers};
    const Poset c1 = chain(1), o2 = organ(2), a2 = antichain(2);
    c.expect(verify_linear_sum_closure(c1, c1, o2, a2, opt), "J from C_1 and O_2");
    c.expect(are_isomorphic(linear_sum(c1, o2), jay()), "C_1 below O_2 is not J");
    c.expect(verify_linear_sum_closure(jay(), vee(), c1, c1, opt), "H_2 from J and C_1");
    c.expect(are_isomorphic(linear_sum(jay(), c1), harp(2)), "J below C_1 is not H_2");
    c.expect(verify_linear_sum_closure(o2, a2, o2, a2, opt), "O_2 below O_2 for K_{2,2}");
    c.expect(are_isomorphic(linear_sum(a2, a2), complete_multilevel({2, 2})), "A_2 below A_2 is not K_{2,2}");
}

// 7 ----------------------------------------------------------------------------
inline void tree_embeddings(const Config& cfg, detail::Checker& c)
{
    const Scale sc = Scale::of(cfg.tier);
    PosetCatalog cat(3);
    std::size_t ok2 = 0, ok3 = 0;
    {
        const UniversalTree t2 = universal_tree_structure(2);
        const Poset host = t2.poset();
        for (const Poset& t : cat.by_size(2)) {
            if (!is_tree_poset(t)) continue;
            for_each_proper_coloring(host, [&](const Coloring& col) {
                try {
                    const auto cert = embed_universal(t, t2, col);
                    c.expect(verify_certificate(host, col, t, cert), "T^2 certificate rejected");
                    ++ok2;
                }
                catch (const Error& e) {
                    c.expect(false, std::string("T^2 embedding: ") + e.what());
                }
                return true;
            });
        }
    }
    {
        const UniversalTree t3 = universal_tree_structure(3);
        const Poset host = t3.poset();
        std::mt19937_64 rng(cfg.seed);
        for (const Poset& t : cat.by_size(3)) {
            if (!is_tree_poset(t)) continue;
            for (std::size_t s = 0; s < sc.universal_colorings; ++s) {
                const Coloring col = random_proper_coloring(host, rng);
                try {
                    const auto cert = embed_universal(t, t3, col);
                    c.expect(verify_certificate(host, col, t, cert), "T^3 certificate rejected");
                    ++ok3;
                }
                catch (const Error& e) {
                    c.expect(false, std::string("T^3 embedding: ") + e.what());
                }
            }
        }
    }
    std::size_t fuzz_ok = 0;
    for (std::size_t s = 0; s < sc.downtree_seeds; ++s) {
        std::mt19937_64 rng(cfg.seed * 1000003 + s);
        const std::size_t ts = 1 + rng() % 4;
        const std::size_t k = ts + rng() % (9 - ts);
        const std::size_t usz = rng() % (k - ts + 1);
        auto colors = k <= 5 ? random_tree_coloring(k, k, rng) : random_palette_tree_coloring(k, k, k + rng() % (65 - k), rng);
        const Color top = *std::max_element(colors.begin(), colors.end());
        ColorSet unusable;
        while (unusable.size() < usz) unusable.insert(rng() % (top + 3));
        const CompleteTree host(k, k, std::move(colors));
        const Poset t = random_downtree(ts, rng);
        try {
            const auto cert = embed_downtree(t, unusable, host);
            const auto props = check_downtree_properties(t, unusable, host, cert);
            c.expect(verify_certificate(host, t, cert), "downtree certificate rejected at seed " + std::to_string(s));
            c.expect(props.all(), "downtree properties broken at seed " + std::to_string(s));
            if (props.all()) ++fuzz_ok;
        }
        catch (const Error& e) {
            c.expect(false, "downtree seed " + std::to_string(s) + ": " + e.what());
        }
    }
    c.note("T^2 " + std::to_string(ok2) + " colourings, T^3 " + std::to_string(ok3) + " embeddings, downtree fuzz " + std::to_string(fuzz_ok) + "/" +
           std::to_string(sc.downtree_seeds));
}

// 8 ----------------------------------------------------------------------------
inline void lym_on_b4(const Config&, detail::Checker& c)
{
    const std::size_t n = 4, universe = 16;
    std::size_t antichains = 0, tight = 0, tight_layers = 0;
    for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << universe); ++fam) {
        bool ok = true;
        for (SetMask a = 0; a < universe && ok; ++a) {
            if (!(fam >> a & 1)) continue;
            for (SetMask b = 0; b < universe && ok; ++b) {
                if ((fam >> b & 1) && proper_subset(a, b)) ok = false;
            }
        }
        if (!ok) continue;
        ++antichains;
        std::vector<SetMask> sets;
        for (SetMask s = 0; s < universe; ++s) {
            if (fam >> s & 1) sets.push_back(s);
        }
        const SetFamily f(n, sets);
        const ExactRational mass = lubell_mass(f);
        c.expect(mass <= 1, "antichain with mass above 1");
        if (mass == 1) {
            ++tight;
            bool is_layer = false;
            for (std::size_t i = 0; i <= n; ++i) is_layer = is_layer || f == layer(n, i);
            if (is_layer) ++tight_layers;
        }
    }
    c.expect(antichains == 168, "found " + std::to_string(antichains) + " antichains");
    c.expect(tight == 5 && tight_layers == 5, "mass-1 antichains are not exactly the 5 layers");
    c.note(std::to_string(antichains) + " antichains, " + std::to_string(tight) + " of mass 1");
}

// 9 ----------------------------------------------------------------------------
inline void harp_free_mass(const Config& cfg, detail::Checker& c)
{
    const Scale sc = Scale::of(cfg.tier);
    const ExactRational bound(19, 6);
    const MassMaximum best = max_mass_h2_free_with_extremes(4);
    c.expect(best.value == bound, "exhaustive maximum is " + to_string(best.value));
    std::ostringstream wit;
    for (SetMask s : best.witness.sets()) wit << (wit.tellp() ? " " : "") << format_set(s);
    c.note("max " + to_string(best.value) + " at {" + wit.str() + "}");
    std::mt19937_64 rng(cfg.seed + 9);
    for (std::size_t n = 5; n <= 8; ++n) {
        ExactRational top = 0;
        for (std::size_t i = 0; i < sc.greedy_samples; ++i) {
            const SetFamily f = greedy_h2_free_with_extremes(n, rng);
            top = std::max(top, lubell_mass(f));
        }
        c.expect(top <= bound, "greedy sample above the bound at n=" + std::to_string(n));
        c.note("n=" + std::to_string(n) + " greedy max " + to_string(top));
    }
}

// 10 ---------------------------------------------------------------------------
inline void rainbow_vs_ordinary(const Config& cfg, detail::Checker& c)
{
    PosetCatalog cat(6);
    ForcingOptions opt{cfg.budget, cfg.workers};
    const std::vector<std::pair<std::string, Poset>> patterns{{"A_2", antichain(2)}, {"V", vee()}};
    for (const auto& [name, p] : patterns) {
        const auto forcers = search_M(p, 6, cat, opt);
        for (std::size_t n = 3; n <= 4; ++n) {
            const std::size_t rainbow = la_rainbow_star(n, p, opt).value;
            const std::size_t ordinary = la_star(n, forcers).value;
            c.expect(rainbow == ordinary, name + " n=" + std::to_string(n) + ": " + std::to_string(rainbow) + " vs " + std::to_string(ordinary));
            c.note(name + " n=" + std::to_string(n) + " value " + std::to_string(rainbow));
        }
    }
    const std::size_t a2 = la_rainbow_star(4, antichain(2), opt).value;
    c.expect(a2 == sigma(4, 1) + 2 && a2 == 8, "rainbow A_2 value at n=4 is " + std::to_string(a2));
}

// 11 ---------------------------------------------------------------------------
inline void chain_average_identity(const Config& cfg, detail::Checker& c)
{
    std::mt19937_64 rng(cfg.seed + 11);
    std::size_t ok = 0;
    for (int i = 0; i < 100; ++i) {
        const auto r = minmax_partition(random_family(5, rng));
        if (r.identity_holds) ++ok;
    }
    c.expect(ok == 100, std::to_string(100 - ok) + " families break the identity");
    // Antichains: every layer, plus random greedy antichains.
    std::size_t antichains = 0;
    for (std::size_t i = 0; i <= 5; ++i) {
        const auto r = minmax_partition(layer(5, i));
        c.expect(r.classes.empty() && r.minus.chains == r.chain_count, "a layer left C^-");
        ++antichains;
    }
    for (int i = 0; i < 50; ++i) {
        const SetFamily f = greedy_k_sperner(5, 1, static_cast<SetMask>(rng() % 32), rng);
        const auto r = minmax_partition(f);
        c.expect(r.classes.empty() && r.minus.chains == r.chain_count && r.identity_holds, "an antichain left C^-");
        ++antichains;
    }
    c.note(std::to_string(ok) + "/100 identities, " + std::to_string(antichains) + " antichains inside C^-");
}

// 12 ---------------------------------------------------------------------------
inline void layered_constructions(const Config&, detail::Checker& c)
{
    c.expect(rainbow_free_layer_check(6, 2, antichain(3), true), "middle 2 layers plus extremes contain a rainbow A_3");
    c.expect(rainbow_free_layer_check(6, 4, complete_multilevel({2, 2})), "middle 4 layers contain a rainbow K_{2,2}");
}

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    bool full_only;
    std::function<void(const Config&, detail::Checker&)> run;
};

inline const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all{
        {1, "poset counts by size, two methods", 60, false, poset_counts},
        {2, "forcing size window for posets up to 4 elements", 600, false, forcing_size_window},
        {3, "unique minimal forcers of A_2, V and the diamond", 1800, false, small_minimal_forcers},
        {4, "O^2_4 minimally forces A_4", 12 * 900, true, two_chain_construction},
        {5, "blow-ups force their poset", 600, false, blowups_force},
        {6, "linear sums of minimal forcers", 300, false, sum_closure},
        {7, "tree embeddings with verified certificates", 1200, false, tree_embeddings},
        {8, "LYM inequality and its equality cases on B_4", 1, false, lym_on_b4},
        {9, "Lubell mass of harp-free families with both extremes", 900, false, harp_free_mass},
        {10, "rainbow and ordinary extremal numbers agree", 1200, false, rainbow_vs_ordinary},
        {11, "chain-average identity and min-max partition", 60, false, chain_average_identity},
        {12, "layered families without rainbow copies", 600, false, layered_constructions},
    };
    return all;
}

/// Runs the selected criteria; `only` empty means all that the tier includes.
inline std::vector<Result> run(const Config& cfg, const std::vector<int>& only = {}, const std::vector<int>& skip = {},
                               const std::function<void(const Result&)>& on_result = {})
{
    std::vector<Result> out;
    for (const Criterion& cr : criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), cr.id) == only.end()) continue;
        Result r;
        r.id = cr.id;
        r.title = cr.title;
        r.limit_seconds = cr.limit_seconds;
        if (std::find(skip.begin(), skip.end(), cr.id) != skip.end() || (cr.full_only && cfg.tier == Tier::quick)) {
            r.skipped = true;
            r.passed = true;
            r.detail = "skipped in this tier";
        }
        else {
            detail::Checker c;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                cr.run(cfg, c);
            }
            catch (const Error& e) {
                c.expect(false, e.what());
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            c.expect(r.seconds <= cr.limit_seconds, "runtime over its limit");
            r.passed = c.passed();
            r.detail = c.detail();
        }
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string format_line(const Result& r)
{
    std::ostringstream line;
    line << (r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title;
    if (!r.skipped) line << "  (" << std::fixed << std::setprecision(2) << r.seconds << "s of " << r.limit_seconds << "s)";
    if (!r.detail.empty()) line << "  " << r.detail;
    return line.str();
}

} // namespace rainbow::suite
