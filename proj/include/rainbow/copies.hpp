#pragma once

#include "rainbow/poset.hpp"

#include <algorithm>
#include <vector>

namespace rainbow {

namespace detail {

/// Pattern elements in rank order, reordered so that each element is comparable
/// to an earlier one whenever possible; that keeps candidate sets small.
inline std::vector<Element> pattern_search_order(const Poset& pattern)
{
    const auto ranks = rank_partition(pattern);
    std::vector<Element> by_rank;
    for (const auto& layer : ranks.layers) by_rank.insert(by_rank.end(), layer.begin(), layer.end());
    std::vector<Element> order;
    std::vector<char> picked(pattern.size(), 0);
    while (order.size() < pattern.size()) {
        Element next = pattern.size();
        for (Element q : by_rank) {
            if (picked[q]) continue;
            bool linked = std::any_of(order.begin(), order.end(), [&](Element o) { return pattern.comparable(o, q); });
            if (linked) {
                next = q;
                break;
            }
            if (next == pattern.size()) next = q;
        }
        picked[next] = 1;
        order.push_back(next);
    }
    return order;
}

struct HostView {
    const Poset& host;
    std::vector<Bits> incomparable;

    explicit HostView(const Poset& h) : host(h), incomparable(h.size())
    {
        for (Element x = 0; x < h.size(); ++x) incomparable[x] = h.incomparable_to(x);
    }
};

} // namespace detail

/// Backtracking search for induced embeddings of `pattern` into `host`.
///
/// `accept(q, h, used)` may veto placing pattern element q on host element h,
/// where `used` holds the host elements already in the partial copy;
/// `visit(map)` receives each complete map and returns false to stop. Returns
/// false if the visitor stopped the search. Pattern elements with identical
/// up- and down-sets are interchangeable, so they are forced onto increasing
/// host indices and each image set is reached once per class of such maps.
template <class Accept, class Visit>
bool search_embeddings(const Poset& host, const Poset& pattern, Accept&& accept, Visit&& visit)
{
    const std::size_t m = pattern.size();
    if (m > host.size()) return true;
    if (m == 0) return visit(std::vector<Element>{});
    const detail::HostView view(host);
    const auto order = detail::pattern_search_order(pattern);
    std::vector<std::size_t> twin_before(m, m);
    for (std::size_t d = 0; d < m; ++d) {
        for (std::size_t i = 0; i < d; ++i) {
            const Element a = order[i], b = order[d];
            if (pattern.above(a) == pattern.above(b) && pattern.below(a) == pattern.below(b)) twin_before[d] = i;
        }
    }
    std::vector<Element> map(m, 0);
    Bits used(host.size());
    Bits all(host.size());
    all.set();

    auto rec = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == m) return visit(map);
        const Element q = order[depth];
        Bits cand = all - used;
        for (std::size_t i = 0; i < depth && cand.any(); ++i) {
            const Element o = order[i];
            const Element h = map[o];
            if (pattern.less(o, q)) cand &= host.above(h);
            else if (pattern.less(q, o)) cand &= host.below(h);
            else cand &= view.incomparable[h];
        }
        const std::size_t need_up = pattern.above(q).count();
        const std::size_t need_down = pattern.below(q).count();
        const Element floor = twin_before[depth] < m ? map[order[twin_before[depth]]] + 1 : 0;
        for (auto h = cand.find_first(); h != Bits::npos; h = cand.find_next(h)) {
            if (h < floor) continue;
            if (host.above(h).count() < need_up || host.below(h).count() < need_down) continue;
            if (!accept(q, h, used)) continue;
            map[q] = h;
            used.set(h);
            bool go_on = self(self, depth + 1);
            used.reset(h);
            if (!go_on) return false;
        }
        return true;
    };
    return rec(rec, 0);
}

/// Every element subset of `host` inducing a copy of `pattern`, each as a
/// sorted index list, in lexicographic order without duplicates.
inline std::vector<std::vector<Element>> induced_copies(const Poset& host, const Poset& pattern)
{
    std::vector<std::vector<Element>> out;
    search_embeddings(
        host, pattern, [](Element, Element, const Bits&) { return true; },
        [&](const std::vector<Element>& map) {
            auto subset = map;
            std::sort(subset.begin(), subset.end());
            out.push_back(std::move(subset));
            return true;
        });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool contains_copy(const Poset& host, const Poset& pattern)
{
    bool found = false;
    search_embeddings(
        host, pattern, [](Element, Element, const Bits&) { return true; },
        [&](const std::vector<Element>&) {
            found = true;
            return false;
        });
    return found;
}

} // namespace rainbow
