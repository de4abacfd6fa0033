#pragma once

#include "rainbow/errors.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

using Element = std::size_t;
using Bits = boost::dynamic_bitset<std::uint64_t>;
using Cover = std::pair<Element, Element>;

/// A finite strict partial order on the dense indices 0..n-1.
///
/// Both directions of the relation are stored as bitsets, so `above(x)` is
/// the set {y : x < y} and `below(y)` is the set {x : x < y}. Values are
/// immutable once built; every constructor goes through `from_relation`,
/// which rejects anything that is not irreflexive, antisymmetric and
/// transitive. Labels are informational only and never take part in
/// comparisons or isomorphism.
class Poset {
public:
    Poset() = default;

    static Poset from_relation(std::vector<Bits> up, std::vector<std::string> labels = {})
    {
        const std::size_t n = up.size();
        for (auto& row : up) {
            if (row.size() != n) fail(ErrorKind::bad_params, "relation rows must have length n");
        }
        if (!labels.empty() && labels.size() != n) fail(ErrorKind::bad_params, "label count must match element count");
        std::vector<Bits> down(n, Bits(n));
        for (Element x = 0; x < n; ++x) {
            if (up[x].test(x)) fail(ErrorKind::bad_params, "relation is not irreflexive");
            for (auto y = up[x].find_first(); y != Bits::npos; y = up[x].find_next(y)) down[y].set(x);
        }
        for (Element x = 0; x < n; ++x) {
            if (up[x].intersects(down[x])) fail(ErrorKind::bad_params, "relation is not antisymmetric");
            for (auto y = up[x].find_first(); y != Bits::npos; y = up[x].find_next(y)) {
                if (!up[y].is_subset_of(up[x])) fail(ErrorKind::bad_params, "relation is not transitive");
            }
        }
        Poset p;
        p.up_ = std::move(up);
        p.down_ = std::move(down);
        p.labels_ = std::move(labels);
        return p;
    }

    std::size_t size() const noexcept { return up_.size(); }
    bool empty() const noexcept { return up_.empty(); }

    bool less(Element x, Element y) const { return up_[x].test(y); }
    bool comparable(Element x, Element y) const { return x == y || up_[x].test(y) || down_[x].test(y); }
    bool incomparable(Element x, Element y) const { return !comparable(x, y); }

    const Bits& above(Element x) const { return up_[x]; }
    const Bits& below(Element x) const { return down_[x]; }
    Bits comparable_to(Element x) const { return up_[x] | down_[x]; }
    Bits incomparable_to(Element x) const
    {
        Bits out = ~(up_[x] | down_[x]);
        out.reset(x);
        return out;
    }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::string label(Element x) const { return labels_.empty() ? std::string() : labels_[x]; }
    Poset with_labels(std::vector<std::string> labels) const
    {
        if (!labels.empty() && labels.size() != size()) fail(ErrorKind::bad_params, "label count must match element count");
        Poset p = *this;
        p.labels_ = std::move(labels);
        return p;
    }

    /// Cover pairs (x, y) with x < y and nothing strictly between, sorted.
    std::vector<Cover> covers() const
    {
        std::vector<Cover> out;
        for (Element x = 0; x < size(); ++x) {
            for (auto y = up_[x].find_first(); y != Bits::npos; y = up_[x].find_next(y)) {
                if (!up_[x].intersects(down_[y])) out.emplace_back(x, y);
            }
        }
        return out;
    }

    std::size_t relation_count() const
    {
        std::size_t total = 0;
        for (const auto& row : up_) total += row.count();
        return total;
    }

    /// Relation equality; labels are ignored.
    friend bool operator==(const Poset& a, const Poset& b) { return a.up_ == b.up_; }
    friend bool operator!=(const Poset& a, const Poset& b) { return !(a == b); }

private:
    std::vector<Bits> up_;
    std::vector<Bits> down_;
    std::vector<std::string> labels_;
};

/// Builds the transitive closure of directed cover arcs.
inline Poset make_poset(std::size_t n, const std::vector<Cover>& arcs, std::vector<std::string> labels = {})
{
    std::vector<std::vector<Element>> succ(n);
    std::vector<std::size_t> indegree(n, 0);
    for (auto [a, b] : arcs) {
        if (a >= n || b >= n) fail(ErrorKind::bad_params, "cover references an element outside 0..n-1");
        if (a == b) fail(ErrorKind::cyclic_input, "self-loop on element " + std::to_string(a));
        succ[a].push_back(b);
        ++indegree[b];
    }
    std::vector<Element> order;
    order.reserve(n);
    std::queue<Element> ready;
    for (Element x = 0; x < n; ++x) {
        if (indegree[x] == 0) ready.push(x);
    }
    while (!ready.empty()) {
        Element x = ready.front();
        ready.pop();
        order.push_back(x);
        for (Element y : succ[x]) {
            if (--indegree[y] == 0) ready.push(y);
        }
    }
    if (order.size() != n) fail(ErrorKind::cyclic_input, "covers contain a directed cycle");
    std::vector<Bits> up(n, Bits(n));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        for (Element y : succ[*it]) {
            up[*it].set(y);
            up[*it] |= up[y];
        }
    }
    return Poset::from_relation(std::move(up), std::move(labels));
}

/// Independent check of the three order axioms on the raw relation.
inline bool satisfies_order_axioms(const Poset& p)
{
    const std::size_t n = p.size();
    for (Element x = 0; x < n; ++x) {
        if (p.less(x, x)) return false;
        for (Element y = 0; y < n; ++y) {
            if (p.less(x, y) && p.less(y, x)) return false;
            if (p.less(x, y) != p.below(y).test(x)) return false;
            for (Element z = 0; z < n; ++z) {
                if (p.less(x, y) && p.less(y, z) && !p.less(x, z)) return false;
            }
        }
    }
    return true;
}

inline Poset dual(const Poset& p)
{
    std::vector<Bits> up(p.size());
    for (Element x = 0; x < p.size(); ++x) up[x] = p.below(x);
    return Poset::from_relation(std::move(up), p.labels());
}

namespace detail {

inline std::vector<std::string> concat_labels(const Poset& p, const Poset& q)
{
    if (p.labels().empty() && q.labels().empty()) return {};
    std::vector<std::string> out;
    out.reserve(p.size() + q.size());
    for (Element x = 0; x < p.size(); ++x) out.push_back(p.label(x));
    for (Element x = 0; x < q.size(); ++x) out.push_back(q.label(x));
    return out;
}

inline std::vector<Bits> embed_rows(const Poset& p, const Poset& q)
{
    const std::size_t n = p.size() + q.size();
    std::vector<Bits> up(n, Bits(n));
    for (Element x = 0; x < p.size(); ++x) {
        for (auto y = p.above(x).find_first(); y != Bits::npos; y = p.above(x).find_next(y)) up[x].set(y);
    }
    for (Element x = 0; x < q.size(); ++x) {
        for (auto y = q.above(x).find_first(); y != Bits::npos; y = q.above(x).find_next(y)) up[p.size() + x].set(p.size() + y);
    }
    return up;
}

} // namespace detail

/// p + q: the parts are pairwise incomparable; q's elements are shifted by |p|.
inline Poset disjoint_sum(const Poset& p, const Poset& q)
{
    return Poset::from_relation(detail::embed_rows(p, q), detail::concat_labels(p, q));
}

/// p^q: every element of p lies strictly below every element of q.
inline Poset linear_sum(const Poset& p, const Poset& q)
{
    auto up = detail::embed_rows(p, q);
    for (Element x = 0; x < p.size(); ++x) {
        for (Element y = 0; y < q.size(); ++y) up[x].set(p.size() + y);
    }
    return Poset::from_relation(std::move(up), detail::concat_labels(p, q));
}

enum class Side { top, bottom };

/// Adds a new largest (top) or smallest (bottom) element at index |p|.
inline Poset adjoin_extremum(const Poset& p, Side side)
{
    const std::size_t n = p.size() + 1;
    std::vector<Bits> up(n, Bits(n));
    for (Element x = 0; x < p.size(); ++x) {
        for (auto y = p.above(x).find_first(); y != Bits::npos; y = p.above(x).find_next(y)) up[x].set(y);
        if (side == Side::top) up[x].set(p.size());
        else up[p.size()].set(x);
    }
    std::vector<std::string> labels;
    if (!p.labels().empty()) {
        labels = p.labels();
        labels.push_back(side == Side::top ? "top" : "bottom");
    }
    return Poset::from_relation(std::move(up), std::move(labels));
}

/// The subposet induced on `elements`, renumbered in the given order.
inline Poset induced_subposet(const Poset& p, const std::vector<Element>& elements)
{
    const std::size_t m = elements.size();
    std::vector<Bits> up(m, Bits(m));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (p.less(elements[i], elements[j])) up[i].set(j);
        }
        if (!p.labels().empty()) labels.push_back(p.label(elements[i]));
    }
    return Poset::from_relation(std::move(up), std::move(labels));
}

inline std::vector<Element> members(const Bits& set)
{
    std::vector<Element> out;
    out.reserve(set.count());
    for (auto x = set.find_first(); x != Bits::npos; x = set.find_next(x)) out.push_back(x);
    return out;
}

inline Poset delete_element(const Poset& p, Element x)
{
    std::vector<Element> keep;
    for (Element y = 0; y < p.size(); ++y) {
        if (y != x) keep.push_back(y);
    }
    return induced_subposet(p, keep);
}

/// Principal down-set {y : y <= x}, including x.
inline Poset down_set(const Poset& p, Element x)
{
    Bits set = p.below(x);
    set.set(x);
    return induced_subposet(p, members(set));
}

/// Principal up-set {y : x <= y}, including x.
inline Poset up_set(const Poset& p, Element x)
{
    Bits set = p.above(x);
    set.set(x);
    return induced_subposet(p, members(set));
}

inline std::vector<Element> minimal_elements(const Poset& p)
{
    std::vector<Element> out;
    for (Element x = 0; x < p.size(); ++x) {
        if (p.below(x).none()) out.push_back(x);
    }
    return out;
}

inline std::vector<Element> maximal_elements(const Poset& p)
{
    std::vector<Element> out;
    for (Element x = 0; x < p.size(); ++x) {
        if (p.above(x).none()) out.push_back(x);
    }
    return out;
}

/// A linear extension: sorting by down-set size respects the order.
inline std::vector<Element> linear_extension(const Poset& p)
{
    std::vector<Element> order(p.size());
    std::iota(order.begin(), order.end(), Element{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Element a, Element b) { return p.below(a).count() < p.below(b).count(); });
    return order;
}

struct RankPartition {
    std::vector<std::vector<Element>> layers; // layers[j] holds rank j+1
    std::vector<std::size_t> rank;            // 1-based

    std::size_t height() const { return layers.size(); }
};

/// Layer j is the set of minimal elements once layers 1..j-1 are removed;
/// equivalently rank(x) is the number of elements in a longest chain ending at x.
inline RankPartition rank_partition(const Poset& p)
{
    RankPartition out;
    out.rank.assign(p.size(), 0);
    for (Element x : linear_extension(p)) {
        std::size_t r = 1;
        const Bits& below = p.below(x);
        for (auto y = below.find_first(); y != Bits::npos; y = below.find_next(y)) r = std::max(r, out.rank[y] + 1);
        out.rank[x] = r;
    }
    std::size_t h = 0;
    for (auto r : out.rank) h = std::max(h, r);
    out.layers.assign(h, {});
    for (Element x = 0; x < p.size(); ++x) out.layers[out.rank[x] - 1].push_back(x);
    return out;
}

inline std::size_t height(const Poset& p) { return rank_partition(p).height(); }

inline std::vector<std::pair<Element, Element>> comparability_graph(const Poset& p)
{
    std::vector<std::pair<Element, Element>> edges;
    for (Element x = 0; x < p.size(); ++x) {
        for (Element y = x + 1; y < p.size(); ++y) {
            if (p.comparable(x, y)) edges.emplace_back(x, y);
        }
    }
    return edges;
}

/// k + C(k,2) - |E(CG(p))|, i.e. |p| plus the number of incomparable pairs.
inline std::size_t perp_value(const Poset& p)
{
    const std::size_t k = p.size();
    return k + k * (k - (k ? 1 : 0)) / 2 - p.relation_count();
}

/// Undirected adjacency lists of the Hasse diagram.
inline std::vector<std::vector<Element>> cover_graph(const Poset& p)
{
    std::vector<std::vector<Element>> adj(p.size());
    for (auto [x, y] : p.covers()) {
        adj[x].push_back(y);
        adj[y].push_back(x);
    }
    return adj;
}

inline bool is_tree_poset(const Poset& p)
{
    if (p.empty()) return false;
    const auto adj = cover_graph(p);
    std::size_t edges = 0;
    for (const auto& nbrs : adj) edges += nbrs.size();
    if (edges / 2 != p.size() - 1) return false;
    std::vector<char> seen(p.size(), 0);
    std::vector<Element> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Element x = stack.back();
        stack.pop_back();
        for (Element y : adj[x]) {
            if (!seen[y]) {
                seen[y] = 1;
                ++reached;
                stack.push_back(y);
            }
        }
    }
    return reached == p.size();
}

inline bool is_chain(const Poset& p)
{
    const std::size_t k = p.size();
    return p.relation_count() == k * (k - (k ? 1 : 0)) / 2;
}

inline bool is_antichain(const Poset& p) { return p.relation_count() == 0; }

/// Largest antichain by exhaustive branch and bound; a diagnostic for small posets.
inline std::size_t width(const Poset& p)
{
    if (p.size() > 20) fail(ErrorKind::cap_exceeded, "width is only computed for at most 20 elements");
    std::size_t best = 0;
    auto rec = [&](auto&& self, std::size_t size, const Bits& candidates) -> void {
        best = std::max(best, size);
        if (size + candidates.count() <= best) return;
        for (auto x = candidates.find_first(); x != Bits::npos; x = candidates.find_next(x)) {
            Bits rest = candidates & p.incomparable_to(x);
            for (auto y = rest.find_first(); y != Bits::npos && y <= x; y = rest.find_next(y)) rest.reset(y);
            self(self, size + 1, rest);
        }
    };
    Bits all(p.size());
    all.set();
    rec(rec, 0, all);
    return best;
}

} // namespace rainbow
