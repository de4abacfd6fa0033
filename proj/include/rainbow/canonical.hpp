#pragma once

#include "rainbow/poset.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace rainbow {

/// Total-order key with equal keys exactly for isomorphic posets.
struct CanonicalKey {
    std::vector<std::uint8_t> bytes;

    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;

    /// 64-bit FNV-1a digest rendered as 16 hex digits, used for file names.
    std::string hex_digest() const
    {
        std::uint64_t h = 1469598103934665603ull;
        for (auto b : bytes) {
            h ^= b;
            h *= 1099511628211ull;
        }
        static constexpr char digits[] = "0123456789abcdef";
        std::string out(16, '0');
        for (int i = 15; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = digits[h & 0xf];
            h >>= 4;
        }
        return out;
    }
};

namespace detail {

/// Colour refinement on the order relation. Cell ids are assigned by sorting
/// signatures, so they depend only on the isomorphism type.
inline std::vector<std::size_t> refine_cells(const Poset& p)
{
    const std::size_t n = p.size();
    std::vector<std::size_t> cell(n, 0);
    {
        std::vector<std::pair<std::size_t, std::size_t>> sig(n);
        for (Element x = 0; x < n; ++x) sig[x] = {p.below(x).count(), p.above(x).count()};
        auto uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (Element x = 0; x < n; ++x) cell[x] = static_cast<std::size_t>(std::lower_bound(uniq.begin(), uniq.end(), sig[x]) - uniq.begin());
    }
    std::size_t cell_count = 0;
    for (auto c : cell) cell_count = std::max(cell_count, c + 1);
    using Signature = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;
    while (true) {
        std::vector<Signature> sig(n);
        for (Element x = 0; x < n; ++x) {
            std::vector<std::size_t> lo, hi;
            for (auto y : members(p.below(x))) lo.push_back(cell[y]);
            for (auto y : members(p.above(x))) hi.push_back(cell[y]);
            std::sort(lo.begin(), lo.end());
            std::sort(hi.begin(), hi.end());
            sig[x] = {cell[x], std::move(lo), std::move(hi)};
        }
        auto uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        if (uniq.size() == cell_count) break;
        cell_count = uniq.size();
        for (Element x = 0; x < n; ++x) cell[x] = static_cast<std::size_t>(std::lower_bound(uniq.begin(), uniq.end(), sig[x]) - uniq.begin());
    }
    return cell;
}

class CanonicalSearch {
public:
    explicit CanonicalSearch(const Poset& p) : p_(p), n_(p.size())
    {
        cell_ = refine_cells(p);
        slot_cell_ = cell_;
        std::sort(slot_cell_.begin(), slot_cell_.end());
        twin_.assign(n_, 0);
        for (Element x = 0; x < n_; ++x) {
            twin_[x] = x;
            for (Element y = 0; y < x; ++y) {
                if (p.below(x) == p.below(y) && p.above(x) == p.above(y)) {
                    twin_[x] = twin_[y];
                    break;
                }
            }
        }
        used_.assign(n_, 0);
        perm_.assign(n_, 0);
        bits_.assign(n_ * (n_ ? n_ - 1 : 0), 0);
    }

    /// Bits are laid out position by position: when slot m is filled it
    /// contributes less(slot j, slot m) and less(slot m, slot j) for j < m,
    /// so every prefix of the search fixes a prefix of the bitstring.
    std::vector<std::uint8_t> run()
    {
        search(0, false);
        CanonicalKey key;
        std::vector<std::uint8_t> out;
        out.push_back(static_cast<std::uint8_t>(n_ >> 8));
        out.push_back(static_cast<std::uint8_t>(n_ & 0xff));
        std::uint8_t acc = 0;
        std::size_t filled = 0;
        for (auto b : best_) {
            acc = static_cast<std::uint8_t>((acc << 1) | b);
            if (++filled == 8) {
                out.push_back(acc);
                acc = 0;
                filled = 0;
            }
        }
        if (filled) out.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
        return out;
    }

private:
    void search(std::size_t pos, bool strictly_less)
    {
        if (pos == n_) {
            if (!have_best_ || strictly_less) {
                best_ = bits_;
                have_best_ = true;
            }
            return;
        }
        const std::size_t base = pos * (pos ? pos - 1 : 0);
        for (Element v = 0; v < n_; ++v) {
            if (used_[v] || cell_[v] != slot_cell_[pos]) continue;
            bool redundant = false;
            for (Element u = 0; u < v; ++u) {
                if (!used_[u] && twin_[u] == twin_[v]) {
                    redundant = true;
                    break;
                }
            }
            if (redundant) continue;
            for (std::size_t j = 0; j < pos; ++j) {
                bits_[base + 2 * j] = p_.less(perm_[j], v) ? 1 : 0;
                bits_[base + 2 * j + 1] = p_.less(v, perm_[j]) ? 1 : 0;
            }
            bool less_now = strictly_less;
            if (have_best_ && !strictly_less) {
                int cmp = 0;
                for (std::size_t i = base; i < base + 2 * pos && cmp == 0; ++i) {
                    if (bits_[i] != best_[i]) cmp = bits_[i] < best_[i] ? -1 : 1;
                }
                if (cmp > 0) continue;
                less_now = cmp < 0;
            }
            used_[v] = 1;
            perm_[pos] = v;
            search(pos + 1, less_now);
            used_[v] = 0;
        }
    }

    const Poset& p_;
    std::size_t n_;
    std::vector<std::size_t> cell_, slot_cell_, twin_;
    std::vector<char> used_;
    std::vector<Element> perm_;
    std::vector<std::uint8_t> bits_, best_;
    bool have_best_ = false;
};

} // namespace detail

/// Minimum of the position-ordered relation bitstring over all labelings that
/// list refinement cells in canonical order.
inline CanonicalKey canonical_key(const Poset& p)
{
    return CanonicalKey{detail::CanonicalSearch(p).run()};
}

inline bool are_isomorphic(const Poset& p, const Poset& q)
{
    if (p.size() != q.size() || p.relation_count() != q.relation_count()) return false;
    return canonical_key(p) == canonical_key(q);
}

} // namespace rainbow
