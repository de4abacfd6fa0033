#pragma once

// Deliberately naive reference implementations. They share no search code with
// the fast paths and exist so tests can compare the two on small inputs.

#include "rainbow/coloring.hpp"
#include "rainbow/poset.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace rainbow::oracle {

/// Relation bits under the relabelling perm (new index i holds old perm[i]),
/// row-major over ordered pairs.
inline std::vector<bool> relation_string(const Poset& p, const std::vector<Element>& perm)
{
    const std::size_t n = p.size();
    std::vector<bool> bits;
    bits.reserve(n * n);
    for (Element i = 0; i < n; ++i) {
        for (Element j = 0; j < n; ++j) bits.push_back(p.less(perm[i], perm[j]));
    }
    return bits;
}

/// Least row-major relation string over all n! relabellings.
inline std::vector<bool> canonical_form(const Poset& p)
{
    std::vector<Element> perm(p.size());
    std::iota(perm.begin(), perm.end(), Element{0});
    std::vector<bool> best = relation_string(p, perm);
    while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, relation_string(p, perm));
    return best;
}

inline bool isomorphic(const Poset& p, const Poset& q)
{
    if (p.size() != q.size()) return false;
    std::vector<Element> perm(p.size());
    std::iota(perm.begin(), perm.end(), Element{0});
    do {
        bool same = true;
        for (Element a = 0; a < p.size() && same; ++a) {
            for (Element b = 0; b < p.size() && same; ++b) same = p.less(a, b) == q.less(perm[a], perm[b]);
        }
        if (same) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// One poset per isomorphism class on n elements, found by testing every
/// labelled relation on the n(n-1) ordered pairs for the order axioms.
inline std::set<std::vector<bool>> posets_by_filtering(std::size_t n)
{
    std::vector<std::pair<Element, Element>> pairs;
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
            if (a != b) pairs.emplace_back(a, b);
        }
    }
    std::set<std::vector<bool>> forms;
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (mask >> i & 1) rel[pairs[i].first][pairs[i].second] = true;
        }
        bool ok = true;
        for (Element a = 0; a < n && ok; ++a) {
            for (Element b = 0; b < n && ok; ++b) {
                if (rel[a][b] && rel[b][a]) ok = false;
                for (Element c = 0; c < n && ok; ++c) {
                    if (rel[a][b] && rel[b][c] && !rel[a][c]) ok = false;
                }
            }
        }
        if (!ok) continue;
        std::vector<Bits> up(n, Bits(n));
        for (Element a = 0; a < n; ++a) {
            for (Element b = 0; b < n; ++b) {
                if (rel[a][b]) up[a].set(b);
            }
        }
        forms.insert(canonical_form(Poset::from_relation(std::move(up))));
    }
    return forms;
}

/// Induced copies by trying every subset of the right size and every bijection.
inline std::vector<std::vector<Element>> all_induced_copies(const Poset& host, const Poset& pattern)
{
    const std::size_t n = host.size(), m = pattern.size();
    std::vector<std::vector<Element>> out;
    if (m > n) return out;
    std::vector<bool> choose(n, false);
    std::fill(choose.begin(), choose.begin() + static_cast<long>(m), true);
    do {
        std::vector<Element> subset;
        for (Element x = 0; x < n; ++x) {
            if (choose[x]) subset.push_back(x);
        }
        std::vector<Element> perm = subset;
        bool found = false;
        do {
            bool same = true;
            for (Element a = 0; a < m && same; ++a) {
                for (Element b = 0; b < m && same; ++b) same = pattern.less(a, b) == host.less(perm[a], perm[b]);
            }
            found = same;
        } while (!found && std::next_permutation(perm.begin(), perm.end()));
        if (found) out.push_back(subset);
    } while (std::prev_permutation(choose.begin(), choose.end()));
    std::sort(out.begin(), out.end());
    return out;
}

inline bool has_rainbow_copy(const Poset& host, const Coloring& c, const Poset& pattern)
{
    for (const auto& copy : all_induced_copies(host, pattern)) {
        std::set<Color> colors;
        for (Element x : copy) colors.insert(c[x]);
        if (colors.size() == copy.size()) return true;
    }
    return false;
}

/// Every proper colouring (as colour-class partitions) is checked for a rainbow copy.
inline bool forces(const Poset& host, const Poset& pattern)
{
    const auto copies = all_induced_copies(host, pattern);
    bool all = true;
    for_each_proper_coloring(host, [&](const Coloring& c) {
        const bool rainbow = std::any_of(copies.begin(), copies.end(), [&](const std::vector<Element>& copy) {
            std::set<Color> colors;
            for (Element x : copy) colors.insert(c[x]);
            return colors.size() == copy.size();
        });
        if (!rainbow) all = false;
        return all;
    });
    return all;
}

/// Number of elements on a longest chain, by exhaustive path extension.
inline std::size_t longest_chain_length(const Poset& p)
{
    std::size_t best = 0;
    auto extend = [&](auto&& self, Element top, std::size_t len) -> void {
        best = std::max(best, len);
        for (Element y = 0; y < p.size(); ++y) {
            if (p.less(top, y)) self(self, y, len + 1);
        }
    };
    for (Element x = 0; x < p.size(); ++x) extend(extend, x, 1);
    return best;
}

} // namespace rainbow::oracle
