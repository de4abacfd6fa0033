#pragma once

#include "rainbow/canonical.hpp"
#include "rainbow/catalog.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/copies.hpp"
#include "rainbow/parallel.hpp"
#include "rainbow/poset.hpp"

#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace rainbow {

struct ForcingOptions {
    std::chrono::milliseconds budget{std::chrono::minutes(15)};
    unsigned workers = 1;
};

struct ForcingVerdict {
    bool forces = false;
    std::optional<Coloring> refutation; // present iff !forces
};

/// Lexicographically least (by sorted element indices) subset of `host` that
/// induces `pattern` and carries pairwise distinct colours.
inline std::optional<std::vector<Element>> find_rainbow_copy(const Poset& host, const Coloring& c, const Poset& pattern)
{
    if (c.size() != host.size()) fail(ErrorKind::bad_params, "coloring must assign every host element");
    std::optional<std::vector<Element>> best;
    search_embeddings(
        host, pattern,
        [&](Element, Element h, const Bits& used) {
            for (auto u = used.find_first(); u != Bits::npos; u = used.find_next(u)) {
                if (c[u] == c[h]) return false;
            }
            return true;
        },
        [&](const std::vector<Element>& map) {
            auto subset = map;
            std::sort(subset.begin(), subset.end());
            if (!best || subset < *best) best = std::move(subset);
            return true;
        });
    return best;
}

namespace detail {

/// Depth-first search over canonical colourings of a host with at most 64
/// elements. Elements are coloured in rank order; a branch dies as soon as a
/// copy of the pattern whose last element was just coloured is rainbow, which
/// is sound because colouring more elements never destroys a rainbow copy.
class RefutationSearch {
public:
    RefutationSearch(const Poset& host, const Poset& pattern, const ForcingOptions& options)
        : host_(host), n_(host.size()), options_(options)
    {
        if (n_ > 64) fail(ErrorKind::cap_exceeded, "forcing search supports hosts of at most 64 elements");
        const auto ranks = rank_partition(host);
        for (const auto& layer : ranks.layers) order_.insert(order_.end(), layer.begin(), layer.end());
        std::vector<std::size_t> pos(n_);
        for (std::size_t t = 0; t < n_; ++t) pos[order_[t]] = t;
        near_.assign(n_, 0);
        for (Element x = 0; x < n_; ++x) {
            for (Element y = 0; y < n_; ++y) {
                if (x != y && host.comparable(x, y)) near_[x] |= std::uint64_t{1} << y;
            }
        }
        completing_.assign(n_, {});
        for (auto& copy : induced_copies(host, pattern)) {
            std::size_t last = 0;
            for (Element e : copy) last = std::max(last, pos[e]);
            completing_[last].push_back(std::move(copy));
        }
        raw_.assign(n_, 0);
        class_mask_.assign(n_ + 1, 0);
    }

    std::optional<Coloring> run()
    {
        start_ = std::chrono::steady_clock::now();
        if (n_ == 0) return Coloring(std::vector<std::size_t>{});
        if (dfs(0, 0)) return Coloring(raw_);
        return std::nullopt;
    }

private:
    bool dfs(std::size_t t, std::size_t used)
    {
        if ((++nodes_ & 0xfff) == 0 && std::chrono::steady_clock::now() - start_ > options_.budget) {
            fail(ErrorKind::timeout, "rainbow forcing search exceeded its time budget");
        }
        if (t == n_) return true;
        const Element e = order_[t];
        for (std::size_t c = 0; c <= used && c < n_; ++c) {
            if (class_mask_[c] & near_[e]) continue;
            raw_[e] = c;
            if (completes_rainbow(t)) continue;
            class_mask_[c] |= std::uint64_t{1} << e;
            bool found = dfs(t + 1, std::max(used, c + 1));
            class_mask_[c] &= ~(std::uint64_t{1} << e);
            if (found) return true;
        }
        return false;
    }

    bool completes_rainbow(std::size_t t) const
    {
        for (const auto& copy : completing_[t]) {
            std::uint64_t seen = 0;
            bool rainbow = true;
            for (Element x : copy) {
                const std::uint64_t bit = std::uint64_t{1} << raw_[x];
                if (seen & bit) {
                    rainbow = false;
                    break;
                }
                seen |= bit;
            }
            if (rainbow) return true;
        }
        return false;
    }

    const Poset& host_;
    std::size_t n_;
    ForcingOptions options_;
    std::vector<Element> order_;
    std::vector<std::uint64_t> near_;
    std::vector<std::vector<std::vector<Element>>> completing_;
    std::vector<std::size_t> raw_;
    std::vector<std::uint64_t> class_mask_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
};

} // namespace detail

/// A proper colouring of `host` without a rainbow induced copy of `pattern`,
/// or nothing when the exhaustive search proves that none exists.
inline std::optional<Coloring> refuting_coloring(const Poset& host, const Poset& pattern, const ForcingOptions& options = {})
{
    return detail::RefutationSearch(host, pattern, options).run();
}

inline ForcingVerdict rainbow_forces(const Poset& host, const Poset& pattern, const ForcingOptions& options = {})
{
    ForcingVerdict verdict;
    verdict.refutation = refuting_coloring(host, pattern, options);
    verdict.forces = !verdict.refutation.has_value();
    return verdict;
}

inline bool forces(const Poset& host, const Poset& pattern, const ForcingOptions& options = {})
{
    return rainbow_forces(host, pattern, options).forces;
}

/// Host forces the pattern and no single-element deletion does.
inline bool is_minimal_forcing(const Poset& host, const Poset& pattern, const ForcingOptions& options = {})
{
    if (host.size() < pattern.size() || !forces(host, pattern, options)) return false;
    for (Element x = 0; x < host.size(); ++x) {
        if (forces(delete_element(host, x), pattern, options)) return false;
    }
    return true;
}

/// Every poset of size at most `size_bound` (one per isomorphism class) that
/// minimally rainbow forces `pattern`, in canonical-key order.
inline std::vector<Poset> search_M(const Poset& pattern, std::size_t size_bound, PosetCatalog& catalog, const ForcingOptions& options = {})
{
    if (size_bound > catalog.cap()) fail(ErrorKind::cap_exceeded, "size bound exceeds enumeration cap");
    const auto candidates = catalog.range(pattern.size(), size_bound);
    auto verdicts = parallel_map<char>(candidates.size(), options.workers, [&](std::size_t i) -> char {
        const Poset& q = candidates[i];
        if (!contains_copy(q, pattern)) return 0;
        return is_minimal_forcing(q, pattern, options) ? 1 : 0;
    });
    std::vector<Poset> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (verdicts[i]) out.push_back(candidates[i]);
    }
    return out;
}

inline std::vector<Poset> search_M(const Poset& pattern, std::size_t size_bound, const ForcingOptions& options = {})
{
    PosetCatalog catalog(std::max<std::size_t>(size_bound, 1));
    return search_M(pattern, size_bound, catalog, options);
}

/// m(P) when the search window fits under the catalog cap; otherwise a
/// bracket [lower, upper] whose upper end is a verified forcer size.
struct MValue {
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool exact = false;
    std::optional<Poset> witness; // smallest forcer found, first in key order
};

inline MValue m_value(const Poset& pattern, PosetCatalog& catalog, const ForcingOptions& options = {})
{
    const std::size_t k = pattern.size();
    const std::size_t perp = perp_value(pattern);
    const std::size_t top = std::min(perp, catalog.cap());
    for (std::size_t s = k; s <= top; ++s) {
        const auto& level = catalog.by_size(s);
        auto verdicts = parallel_map<char>(level.size(), options.workers, [&](std::size_t i) -> char {
            return contains_copy(level[i], pattern) && forces(level[i], pattern, options) ? 1 : 0;
        });
        for (std::size_t i = 0; i < level.size(); ++i) {
            if (verdicts[i]) return MValue{s, s, true, level[i]};
        }
    }
    MValue out;
    out.lower = top + 1;
    std::vector<Element> identity(k);
    std::iota(identity.begin(), identity.end(), Element{0});
    Poset blown = blowup(pattern, identity);
    if (blown.size() <= 64 && forces(blown, pattern, options)) {
        out.upper = blown.size();
        out.witness = blown;
    }
    else {
        fail(ErrorKind::cap_exceeded, "no forcer found below the cap and the blow-up could not be checked");
    }
    out.exact = out.lower == out.upper;
    return out;
}

inline MValue m_value(const Poset& pattern, const ForcingOptions& options = {})
{
    PosetCatalog catalog(7);
    return m_value(pattern, catalog, options);
}

/// Checks linear_sum(q1, q2) in M(linear_sum(p1, p2)) and dual(q1) in M(dual(p1)).
inline bool verify_linear_sum_closure(const Poset& q1, const Poset& p1, const Poset& q2, const Poset& p2, const ForcingOptions& options = {})
{
    return is_minimal_forcing(linear_sum(q1, q2), linear_sum(p1, p2), options) && is_minimal_forcing(dual(q1), dual(p1), options);
}

} // namespace rainbow
