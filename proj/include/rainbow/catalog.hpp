#pragma once

#include "rainbow/canonical.hpp"
#include "rainbow/poset.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <vector>

namespace rainbow {

/// All down-closed subsets of p, as bitsets, in increasing numeric order.
inline std::vector<Bits> down_closed_sets(const Poset& p)
{
    const std::size_t m = p.size();
    if (m > 24) fail(ErrorKind::cap_exceeded, "down-closed set enumeration is limited to 24 elements");
    std::vector<Bits> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        Bits set(m, mask);
        bool closed = true;
        for (auto x = set.find_first(); x != Bits::npos && closed; x = set.find_next(x)) closed = p.below(x).is_subset_of(set);
        if (closed) out.push_back(std::move(set));
    }
    return out;
}

/// p with a new maximal element (index |p|) whose strict down-set is `ideal`.
inline Poset extend_by_maximal(const Poset& p, const Bits& ideal)
{
    const std::size_t n = p.size() + 1;
    std::vector<Bits> up(n, Bits(n));
    for (Element x = 0; x < p.size(); ++x) {
        for (auto y = p.above(x).find_first(); y != Bits::npos; y = p.above(x).find_next(y)) up[x].set(y);
        if (ideal.test(x)) up[x].set(p.size());
    }
    return Poset::from_relation(std::move(up));
}

/// Isomorphism-class representatives by size, each list sorted by canonical key.
///
/// Size n is produced from size n-1 by adding one maximal element above each
/// down-closed set and keeping the first poset seen per canonical key. Every
/// poset has a maximal element whose removal leaves a down-closed remainder,
/// so this reaches every class.
class PosetCatalog {
public:
    explicit PosetCatalog(std::size_t cap = 7) : cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }

    const std::vector<Poset>& by_size(std::size_t n)
    {
        if (n > cap_) fail(ErrorKind::cap_exceeded, "requested size " + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap_));
        std::lock_guard<std::mutex> lock(mutex_);
        return build(n);
    }

    /// All representatives of sizes lo..hi in (size, key) order.
    std::vector<Poset> range(std::size_t lo, std::size_t hi)
    {
        std::vector<Poset> out;
        for (std::size_t n = lo; n <= hi; ++n) {
            const auto& level = by_size(n);
            out.insert(out.end(), level.begin(), level.end());
        }
        return out;
    }

private:
    const std::vector<Poset>& build(std::size_t n)
    {
        if (levels_.size() > n) return levels_[n];
        if (levels_.empty()) levels_.push_back({Poset::from_relation({})});
        while (levels_.size() <= n) {
            std::map<CanonicalKey, Poset> seen;
            for (const Poset& base : levels_.back()) {
                for (const Bits& ideal : down_closed_sets(base)) {
                    Poset candidate = extend_by_maximal(base, ideal);
                    auto key = canonical_key(candidate);
                    seen.try_emplace(std::move(key), std::move(candidate));
                }
            }
            std::vector<Poset> level;
            level.reserve(seen.size());
            for (auto& [key, p] : seen) level.push_back(std::move(p));
            levels_.push_back(std::move(level));
        }
        return levels_[n];
    }

    std::size_t cap_;
    std::mutex mutex_;
    std::deque<std::vector<Poset>> levels_;
};

inline std::vector<Poset> enumerate_posets(std::size_t n, std::size_t cap = 7)
{
    PosetCatalog catalog(cap);
    return catalog.by_size(n);
}

} // namespace rainbow
