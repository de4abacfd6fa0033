#pragma once

#include "rainbow/coloring.hpp"
#include "rainbow/copies.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/forcing.hpp"
#include "rainbow/poset.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <bitset>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace rainbow {

using ExactRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using SetMask = std::uint32_t;

inline std::string to_string(const ExactRational& q)
{
    std::ostringstream out;
    out << numerator(q);
    if (denominator(q) != 1) out << '/' << denominator(q);
    return out.str();
}

inline std::uint64_t binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Distinct subsets of [n] as bitmasks (bit i is element i+1), kept sorted.
class SetFamily {
public:
    static constexpr std::size_t max_ground = 20;

    SetFamily() = default;
    SetFamily(std::size_t n, std::vector<SetMask> sets) : n_(n), sets_(std::move(sets))
    {
        if (n > max_ground) fail(ErrorKind::cap_exceeded, "ground sets above 20 elements are not supported");
        std::sort(sets_.begin(), sets_.end());
        if (std::adjacent_find(sets_.begin(), sets_.end()) != sets_.end()) fail(ErrorKind::bad_params, "family contains a repeated set");
        for (SetMask s : sets_) {
            if (s >> n) fail(ErrorKind::bad_params, "set outside the ground set");
        }
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t size() const noexcept { return sets_.size(); }
    const std::vector<SetMask>& sets() const noexcept { return sets_; }
    SetMask full() const noexcept { return n_ == 0 ? 0 : static_cast<SetMask>((std::uint64_t{1} << n_) - 1); }
    bool contains(SetMask s) const { return std::binary_search(sets_.begin(), sets_.end(), s); }

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
    std::size_t n_ = 0;
    std::vector<SetMask> sets_;
};

inline std::size_t set_size(SetMask s) { return static_cast<std::size_t>(std::popcount(s)); }
inline bool proper_subset(SetMask a, SetMask b) { return a != b && (a & b) == a; }

inline SetFamily whole_lattice(std::size_t n)
{
    std::vector<SetMask> all(std::size_t{1} << n);
    std::iota(all.begin(), all.end(), SetMask{0});
    return SetFamily(n, std::move(all));
}

inline SetFamily layer(std::size_t n, std::size_t i)
{
    std::vector<SetMask> out;
    for (SetMask s = 0; s < (SetMask{1} << n); ++s) {
        if (set_size(s) == i) out.push_back(s);
    }
    return SetFamily(n, std::move(out));
}

inline SetFamily family_union(const SetFamily& a, const SetFamily& b)
{
    std::vector<SetMask> out;
    std::set_union(a.sets().begin(), a.sets().end(), b.sets().begin(), b.sets().end(), std::back_inserter(out));
    return SetFamily(std::max(a.n(), b.n()), std::move(out));
}

// --- text format -----------------------------------------------------------

inline std::string format_set(SetMask s)
{
    if (s == 0) return "{}";
    std::string out;
    for (std::size_t i = 0; i < 32; ++i) {
        if (s >> i & 1) {
            if (!out.empty()) out += ',';
            out += std::to_string(i + 1);
        }
    }
    return out;
}

inline std::string serialize_family(const SetFamily& f)
{
    std::string out = "family n=" + std::to_string(f.n()) + "\n";
    for (SetMask s : f.sets()) out += format_set(s) + "\n";
    return out;
}

inline SetFamily parse_family(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> n;
    std::vector<SetMask> sets;
    auto bad = [&](const std::string& why) { fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": " + why); };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
        if (line.empty()) continue;
        if (!n) {
            if (line.rfind("familyn=", 0) != 0) bad("expected header 'family n=<n>'");
            try {
                n = std::stoul(line.substr(8));
            }
            catch (const std::exception&) {
                bad("bad ground set size");
            }
            continue;
        }
        if (line == "{}") {
            sets.push_back(0);
            continue;
        }
        SetMask s = 0;
        std::istringstream items(line);
        std::string item;
        while (std::getline(items, item, ',')) {
            std::size_t v = 0;
            try {
                std::size_t used = 0;
                v = std::stoul(item, &used);
                if (used != item.size()) bad("bad element '" + item + "'");
            }
            catch (const std::invalid_argument&) {
                bad("bad element '" + item + "'");
            }
            if (v < 1 || v > *n) bad("element " + item + " outside [n]");
            s |= SetMask{1} << (v - 1);
        }
        sets.push_back(s);
    }
    if (!n) fail(ErrorKind::parse_error, "missing family header");
    std::sort(sets.begin(), sets.end());
    if (std::adjacent_find(sets.begin(), sets.end()) != sets.end()) fail(ErrorKind::parse_error, "repeated set");
    return SetFamily(*n, std::move(sets));
}

inline SetFamily read_family_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorKind::parse_error, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_family(buf.str());
}

// --- basic measures --------------------------------------------------------

/// Containment order on the family; element i is the i-th set in sorted order.
inline Poset family_poset(const SetFamily& f)
{
    const auto& s = f.sets();
    const std::size_t m = s.size();
    std::vector<Bits> up(m, Bits(m));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            if (proper_subset(s[a], s[b])) up[a].set(b);
        }
    }
    std::vector<std::string> labels;
    for (SetMask x : s) labels.push_back(format_set(x));
    return Poset::from_relation(std::move(up), std::move(labels));
}

inline ExactRational lubell_mass(const SetFamily& f)
{
    ExactRational total = 0;
    for (SetMask s : f.sets()) total += ExactRational(1, binomial(f.n(), set_size(s)));
    return total;
}

/// floor(a/2) for possibly negative a.
inline long floor_half(long a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

/// Sum of the k largest binomial coefficients of order n.
inline std::uint64_t sigma(std::size_t n, std::size_t k)
{
    if (k > n + 1) fail(ErrorKind::bad_params, "sigma needs 0 <= k <= n+1");
    const long base = floor_half(static_cast<long>(n) - static_cast<long>(k));
    std::uint64_t total = 0;
    for (std::size_t i = 1; i <= k; ++i) total += binomial(n, static_cast<std::size_t>(base + static_cast<long>(i)));
    return total;
}

/// The k middle layers, sizes floor((n-k)/2)+1 .. floor((n-k)/2)+k.
inline SetFamily middle_layers(std::size_t n, std::size_t k)
{
    if (k > n + 1) fail(ErrorKind::cap_exceeded, "more layers than B_n has");
    if (n > 16) fail(ErrorKind::cap_exceeded, "middle layers are materialised only for n <= 16");
    const long base = floor_half(static_cast<long>(n) - static_cast<long>(k));
    std::vector<SetMask> out;
    for (SetMask s = 0; s < (SetMask{1} << n); ++s) {
        const long sz = static_cast<long>(set_size(s));
        if (sz > base && sz <= base + static_cast<long>(k)) out.push_back(s);
    }
    return SetFamily(n, std::move(out));
}

inline SetFamily with_extremes(const SetFamily& f)
{
    std::vector<SetMask> s = f.sets();
    if (!f.contains(0)) s.push_back(0);
    if (!f.contains(f.full())) s.push_back(f.full());
    return SetFamily(f.n(), std::move(s));
}

/// Number of sets on a longest chain of the family.
inline std::size_t longest_chain(const SetFamily& f)
{
    std::vector<SetMask> s = f.sets();
    std::stable_sort(s.begin(), s.end(), [](SetMask a, SetMask b) { return set_size(a) < set_size(b); });
    std::vector<std::size_t> best(s.size(), 1);
    std::size_t top = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (proper_subset(s[j], s[i])) best[i] = std::max(best[i], best[j] + 1);
        }
        top = std::max(top, best[i]);
    }
    return top;
}

inline bool is_k_sperner(const SetFamily& f, std::size_t k) { return longest_chain(f) <= k; }

/// Mass bound for k-Sperner families; vacuously true for the others.
inline bool check_klym(const SetFamily& f, std::size_t k) { return !is_k_sperner(f, k) || lubell_mass(f) <= k; }

/// Size bound for a k-Sperner family holding a set of size i < n/2:
/// |F| <= floor(Sigma(n,k) - C(n, floor((n-k)/2)) / C(n,i) + 1).
inline ExactRational stability_bound(std::size_t n, std::size_t k, std::size_t i)
{
    const long low = floor_half(static_cast<long>(n) - static_cast<long>(k));
    const std::uint64_t edge = low < 0 ? 0 : binomial(n, static_cast<std::size_t>(low));
    return ExactRational(sigma(n, k)) - ExactRational(edge, binomial(n, i)) + 1;
}

inline bool check_stab(const SetFamily& f, std::size_t k, std::size_t i)
{
    if (!is_k_sperner(f, k)) fail(ErrorKind::precondition_violated, "family is not k-Sperner");
    if (2 * i >= f.n()) fail(ErrorKind::precondition_violated, "set size must be below n/2");
    if (std::none_of(f.sets().begin(), f.sets().end(), [&](SetMask s) { return set_size(s) == i; })) {
        fail(ErrorKind::precondition_violated, "family has no set of the given size");
    }
    const ExactRational bound = stability_bound(f.n(), k, i);
    const BigInt floored = numerator(bound) / denominator(bound); // bound is positive here
    return BigInt(f.size()) <= floored;
}

inline bool check_lubm(const SetFamily& f)
{
    return ExactRational(f.size()) <= lubell_mass(f) * ExactRational(binomial(f.n(), f.n() / 2));
}

/// O_2-free families: those whose containment order is complete multipartite.
inline bool is_complete_multipartite(const SetFamily& f) { return !contains_copy(family_poset(f), organ(2)); }

/// Direct test: the rank layers are antichains and every element of a lower
/// layer is below every element of a higher one.
inline bool has_complete_level_structure(const Poset& p)
{
    const auto ranks = rank_partition(p);
    for (Element a = 0; a < p.size(); ++a) {
        for (Element b = 0; b < p.size(); ++b) {
            if (ranks.rank[a] < ranks.rank[b] && !p.less(a, b)) return false;
        }
    }
    return true;
}

/// Proper colouring of a family by set size.
inline Coloring size_coloring(const SetFamily& f)
{
    std::vector<std::size_t> raw;
    for (SetMask s : f.sets()) raw.push_back(set_size(s));
    return Coloring(raw);
}

/// True iff colouring the family by set size leaves no rainbow copy of pattern.
inline bool rainbow_free_under_size_coloring(const SetFamily& f, const Poset& pattern)
{
    if (f.size() > 4096) fail(ErrorKind::cap_exceeded, "family too large for the rainbow check");
    const Poset p = family_poset(f);
    return !find_rainbow_copy(p, size_coloring(f), pattern).has_value();
}

/// k middle layers of B_n, optionally with the empty and full sets, coloured
/// by size (so the two extremes get colours of their own).
inline bool rainbow_free_layer_check(std::size_t n, std::size_t k, const Poset& pattern, bool add_extremes = false)
{
    SetFamily f = middle_layers(n, k);
    if (add_extremes) f = with_extremes(f);
    return rainbow_free_under_size_coloring(f, pattern);
}

// --- min-max partition -----------------------------------------------------

struct ChainClass {
    std::uint64_t chains = 0;
    std::uint64_t hits = 0; // sum over the class of |C ∩ F|
    ExactRational average() const { return chains ? ExactRational(hits, chains) : ExactRational(0); }
};

struct MinMaxReport {
    std::map<std::pair<SetMask, SetMask>, ChainClass> classes; // keyed by (min F, max F')
    ChainClass minus;                                           // chains meeting F at most once
    std::uint64_t chain_count = 0;
    ExactRational chain_average;
    ExactRational lubell;
    bool identity_holds = false;
};

/// Classifies all n! maximal chains of B_n by the least and greatest member
/// of their intersection with f.
inline MinMaxReport minmax_partition(const SetFamily& f)
{
    const std::size_t n = f.n();
    if (n > 8) fail(ErrorKind::cap_exceeded, "min-max partition enumerates n! chains; n <= 8");
    std::vector<char> in(std::size_t{1} << n, 0);
    for (SetMask s : f.sets()) in[s] = 1;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    MinMaxReport r;
    std::uint64_t total = 0;
    do {
        SetMask cur = 0;
        std::uint64_t hits = in[0];
        SetMask lo = 0, hi = 0;
        bool any = in[0];
        for (std::size_t i = 0; i < n; ++i) {
            cur |= SetMask{1} << perm[i];
            if (in[cur]) {
                if (!any) lo = cur;
                any = true;
                hi = cur;
                ++hits;
            }
        }
        ChainClass& cls = hits >= 2 ? r.classes[{lo, hi}] : r.minus;
        ++cls.chains;
        cls.hits += hits;
        total += hits;
        ++r.chain_count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    r.chain_average = ExactRational(total, r.chain_count);
    r.lubell = lubell_mass(f);
    r.identity_holds = r.chain_average == r.lubell;
    return r;
}

// --- exhaustive extremal values ---------------------------------------------

struct LaResult {
    std::size_t value = 0;
    SetFamily witness;
    std::optional<Coloring> coloring;
};

namespace detail {

inline SetFamily family_from_index_mask(std::size_t n, std::uint64_t bits)
{
    std::vector<SetMask> sets;
    for (SetMask s = 0; s < (SetMask{1} << n); ++s) {
        if (bits >> s & 1) sets.push_back(s);
    }
    return SetFamily(n, std::move(sets));
}

/// Families as bit-vectors over the 2^n sets: sorted member lists compare
/// lexicographically exactly when the reversed bit strings do, i.e. the one
/// whose lowest differing set is present comes first.
inline bool lex_less(std::uint64_t a, std::uint64_t b)
{
    const std::uint64_t diff = a ^ b;
    if (!diff) return false;
    return (a >> std::countr_zero(diff)) & 1;
}

} // namespace detail

/// Largest family of B_n with no induced copy of any pattern, and the
/// lexicographically least such family (comparing sorted set lists).
inline LaResult la_star(std::size_t n, const std::vector<Poset>& patterns)
{
    if (n > 4) fail(ErrorKind::cap_exceeded, "exhaustive La* is limited to n <= 4");
    const std::size_t universe = std::size_t{1} << n;
    const Poset lattice = family_poset(whole_lattice(n));
    std::vector<std::uint64_t> copies;
    for (const Poset& p : patterns) {
        for (const auto& c : induced_copies(lattice, p)) {
            std::uint64_t m = 0;
            for (Element e : c) m |= std::uint64_t{1} << e; // element index == set mask here
            copies.push_back(m);
        }
    }
    std::sort(copies.begin(), copies.end());
    copies.erase(std::unique(copies.begin(), copies.end()), copies.end());
    std::optional<std::uint64_t> best;
    std::size_t best_size = 0;
    const std::uint64_t families = std::uint64_t{1} << universe;
    for (std::uint64_t fam = 0; fam < families; ++fam) {
        const std::size_t sz = static_cast<std::size_t>(std::popcount(fam));
        if (best && (sz < best_size || (sz == best_size && !detail::lex_less(fam, *best)))) continue;
        bool free = std::none_of(copies.begin(), copies.end(), [&](std::uint64_t c) { return (c & fam) == c; });
        if (free) {
            best = fam;
            best_size = sz;
        }
    }
    LaResult r;
    r.value = best_size;
    r.witness = detail::family_from_index_mask(n, *best);
    return r;
}

/// Largest family of B_n admitting a proper colouring without a rainbow copy
/// of `pattern`; the witness is the lexicographically first family of that
/// size and the colouring is the search's refutation for it.
inline LaResult la_rainbow_star(std::size_t n, const Poset& pattern, const ForcingOptions& options = {})
{
    if (n > 4) fail(ErrorKind::cap_exceeded, "exhaustive La_R* is limited to n <= 4");
    const std::size_t universe = std::size_t{1} << n;
    for (std::size_t size = universe + 1; size-- > 0;) {
        std::vector<std::size_t> pick(size);
        std::iota(pick.begin(), pick.end(), std::size_t{0});
        for (;;) {
            std::vector<SetMask> sets(pick.begin(), pick.end());
            SetFamily f(n, sets);
            auto refutation = refuting_coloring(family_poset(f), pattern, options);
            if (refutation) return LaResult{size, f, *refutation};
            // next combination in lexicographic order
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == universe - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    fail(ErrorKind::precondition_violated, "even the empty family forces the pattern");
}

// --- H_2-free mass ---------------------------------------------------------

/// Exhaustive maximum of the Lubell mass over families of B_n that contain the
/// empty and full sets and have no induced harp H_2. Ties go to the
/// lexicographically least family.
struct MassMaximum {
    ExactRational value;
    SetFamily witness;
    std::uint64_t families_checked = 0;
};

inline MassMaximum max_mass_h2_free_with_extremes(std::size_t n)
{
    if (n > 4) fail(ErrorKind::cap_exceeded, "exhaustive mass search is limited to n <= 4");
    const SetMask full = static_cast<SetMask>((1u << n) - 1);
    std::vector<SetMask> middle;
    for (SetMask s = 1; s < full; ++s) middle.push_back(s);
    const Poset h2 = harp(2);
    MassMaximum best;
    bool have = false;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << middle.size()); ++pick) {
        std::vector<SetMask> sets{0, full};
        for (std::size_t i = 0; i < middle.size(); ++i) {
            if (pick >> i & 1) sets.push_back(middle[i]);
        }
        SetFamily f(n, sets);
        ++best.families_checked;
        if (contains_copy(family_poset(f), h2)) continue;
        ExactRational mass = lubell_mass(f);
        if (!have || mass > best.value || (mass == best.value && f.sets() < best.witness.sets())) {
            best.value = mass;
            best.witness = f;
            have = true;
        }
    }
    return best;
}

/// Greedy maximal H_2-free family containing the empty and full sets: the
/// other sets are tried in random order and kept when no harp appears. With
/// both extremes present a harp exists iff the remaining sets contain an
/// induced O_2, which is what the incremental test looks for.
template <class Rng>
SetFamily greedy_h2_free_with_extremes(std::size_t n, Rng& rng)
{
    if (n < 1 || n > 8) fail(ErrorKind::cap_exceeded, "greedy sampler supports 1 <= n <= 8");
    using Row = std::bitset<256>;
    const SetMask full = static_cast<SetMask>((1u << n) - 1);
    std::vector<SetMask> order;
    for (SetMask s = 1; s < full; ++s) order.push_back(s);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<SetMask> kept;
    std::vector<Row> comparable; // comparable[i] over kept indices
    for (SetMask s : order) {
        Row cmp, inc;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (proper_subset(s, kept[i]) || proper_subset(kept[i], s)) cmp.set(i);
            else inc.set(i);
        }
        bool creates = false;
        for (std::size_t i = 0; i < kept.size() && !creates; ++i) {
            // s beside a comparable pair inside `inc`, or s in a pair with a
            // comparable member that has an incomparable partner in `inc`.
            if (inc.test(i)) creates = (comparable[i] & inc).any();
            else creates = (~comparable[i] & inc).any();
        }
        if (creates) continue;
        const std::size_t idx = kept.size();
        kept.push_back(s);
        comparable.push_back(cmp);
        for (std::size_t i = 0; i < idx; ++i) {
            if (cmp.test(i)) comparable[i].set(idx);
        }
    }
    kept.push_back(0);
    kept.push_back(full);
    return SetFamily(n, kept);
}

/// Greedy random k-Sperner family of B_n that contains `seed`: sets are tried
/// in random order and kept while no chain longer than k arises. Any new long
/// chain passes through the candidate, so only chains through it are checked.
template <class Rng>
SetFamily greedy_k_sperner(std::size_t n, std::size_t k, SetMask seed, Rng& rng)
{
    if (n > 12) fail(ErrorKind::cap_exceeded, "greedy sampler supports n <= 12");
    const std::size_t count = std::size_t{1} << n;
    std::vector<SetMask> order;
    for (SetMask s = 0; s < count; ++s) {
        if (s != seed) order.push_back(s);
    }
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<SetMask> kept{seed};
    std::vector<std::size_t> ending{1}, starting{1}; // longest kept chain ending / starting at each set
    auto refresh = [&] {
        std::vector<std::size_t> idx(kept.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return set_size(kept[a]) < set_size(kept[b]); });
        ending.assign(kept.size(), 1);
        starting.assign(kept.size(), 1);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (proper_subset(kept[idx[j]], kept[idx[i]])) ending[idx[i]] = std::max(ending[idx[i]], ending[idx[j]] + 1);
            }
        }
        for (std::size_t i = idx.size(); i-- > 0;) {
            for (std::size_t j = i + 1; j < idx.size(); ++j) {
                if (proper_subset(kept[idx[i]], kept[idx[j]])) starting[idx[i]] = std::max(starting[idx[i]], starting[idx[j]] + 1);
            }
        }
    };
    for (SetMask s : order) {
        std::size_t below = 0, above = 0;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (proper_subset(kept[i], s)) below = std::max(below, ending[i]);
            if (proper_subset(s, kept[i])) above = std::max(above, starting[i]);
        }
        if (below + 1 + above > k) continue;
        kept.push_back(s);
        refresh();
    }
    return SetFamily(n, kept);
}

/// Uniformly random family: each set of B_n is included with probability 1/2.
template <class Rng>
SetFamily random_family(std::size_t n, Rng& rng)
{
    std::vector<SetMask> sets;
    std::bernoulli_distribution coin(0.5);
    for (SetMask s = 0; s < (SetMask{1} << n); ++s) {
        if (coin(rng)) sets.push_back(s);
    }
    return SetFamily(n, std::move(sets));
}

} // namespace rainbow
