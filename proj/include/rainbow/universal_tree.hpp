#pragma once

#include "rainbow/errors.hpp"
#include "rainbow/poset.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <vector>

namespace rainbow {

enum class TreeSide { center, down, up };

inline const char* to_string(TreeSide s)
{
    switch (s) {
    case TreeSide::center: return "center";
    case TreeSide::down: return "down";
    case TreeSide::up: return "up";
    }
    return "?";
}

/// The alternately appended tree T^k with the bookkeeping the embedder needs.
///
/// Every element other than the centre is a non-root member of exactly one
/// appended component, and every element created before the last round is
/// the root of exactly one component appended at it. Components appended at
/// the centre or at up elements are downtrees; those appended at down
/// elements are uptrees. Ranks are the ranks in T^k.
struct UniversalTree {
    static constexpr Element none = std::numeric_limits<Element>::max();

    std::size_t k = 0;
    std::vector<TreeSide> side;
    std::vector<std::size_t> rank;
    std::vector<std::size_t> round;
    std::vector<Element> component_root;                // root of the component holding it as a non-root member
    std::vector<std::vector<Element>> member_children;  // children inside that component
    std::vector<std::vector<Element>> appended_children; // children inside the component rooted here
    std::vector<Cover> covers;

    std::size_t size() const noexcept { return side.size(); }
    Element center() const noexcept { return 0; }

    /// True when the component appended at `root` hangs below it.
    bool appended_is_downtree(Element root) const { return side[root] != TreeSide::down; }

    /// Height of the component appended at `root` (1 if nothing is appended).
    std::size_t appended_height(Element root) const
    {
        if (appended_children[root].empty()) return 1;
        return appended_is_downtree(root) ? rank[root] : k - rank[root] + 1;
    }

    Poset poset() const { return make_poset(size(), covers); }
};

inline UniversalTree universal_tree_structure(std::size_t k, std::size_t cap = 100000)
{
    if (k == 0) fail(ErrorKind::bad_params, "universal tree needs k >= 1");
    UniversalTree t;
    t.k = k;
    auto add = [&](TreeSide s, std::size_t r, std::size_t rnd, Element root) {
        if (t.size() >= cap) fail(ErrorKind::cap_exceeded, "universal tree exceeds the size cap of " + std::to_string(cap));
        t.side.push_back(s);
        t.rank.push_back(r);
        t.round.push_back(rnd);
        t.component_root.push_back(root);
        t.member_children.emplace_back();
        t.appended_children.emplace_back();
        return t.size() - 1;
    };
    // Complete k-ary tree of the given height grown at `root`, downward or upward.
    auto append = [&](Element root, bool downward, std::size_t h, std::size_t rnd) {
        const TreeSide fresh = downward ? TreeSide::down : TreeSide::up;
        std::vector<Element> frontier{root};
        for (std::size_t level = 1; level < h; ++level) {
            std::vector<Element> next;
            for (Element parent : frontier) {
                for (std::size_t i = 0; i < k; ++i) {
                    const std::size_t r = downward ? t.rank[parent] - 1 : t.rank[parent] + 1;
                    const Element child = add(fresh, r, rnd, root);
                    (parent == root ? t.appended_children[root] : t.member_children[parent]).push_back(child);
                    if (downward) t.covers.emplace_back(child, parent);
                    else t.covers.emplace_back(parent, child);
                    next.push_back(child);
                }
            }
            frontier = std::move(next);
        }
    };
    add(TreeSide::center, k, 0, UniversalTree::none);
    append(0, true, k, 0);
    std::size_t begin = 1;
    for (std::size_t rnd = 1; rnd < k; ++rnd) {
        const std::size_t end = t.size();
        for (Element v = begin; v < end; ++v) {
            if (t.side[v] == TreeSide::down) append(v, false, k - t.rank[v] + 1, rnd);
            else append(v, true, t.rank[v], rnd);
        }
        begin = end;
    }
    return t;
}

inline Poset universal_tree(std::size_t k, std::size_t cap = 100000) { return universal_tree_structure(k, cap).poset(); }

/// Measured shape facts about T^k, reported rather than assumed.
struct UniversalTreeStats {
    std::size_t size = 0;
    std::size_t height = 0;
    std::size_t center_eccentricity = 0;
    std::size_t radius = 0;
    bool all_maximal_chains_length_k = false;
    bool is_tree_poset = false;
    std::map<std::size_t, std::size_t> down_degree_histogram; // #covered elements -> count, over r(x) > 1
    std::map<std::size_t, std::size_t> up_degree_histogram;   // #covering elements -> count, over r(x) < k
};

inline UniversalTreeStats measure_universal_tree(const UniversalTree& t)
{
    const Poset p = t.poset();
    UniversalTreeStats s;
    s.size = p.size();
    const auto ranks = rank_partition(p);
    s.height = ranks.height();
    s.is_tree_poset = is_tree_poset(p);

    // Every maximal chain has length k iff minimal elements have rank 1, maximal
    // elements rank k, and every cover raises the rank by exactly one.
    bool graded = true;
    for (const auto& [a, b] : p.covers()) graded = graded && ranks.rank[b] == ranks.rank[a] + 1;
    for (Element x : minimal_elements(p)) graded = graded && ranks.rank[x] == 1;
    for (Element x : maximal_elements(p)) graded = graded && ranks.rank[x] == t.k;
    s.all_maximal_chains_length_k = graded;

    std::vector<std::size_t> down(p.size(), 0), up(p.size(), 0);
    for (const auto& [a, b] : p.covers()) {
        ++down[b];
        ++up[a];
    }
    for (Element x = 0; x < p.size(); ++x) {
        if (ranks.rank[x] > 1) ++s.down_degree_histogram[down[x]];
        if (ranks.rank[x] < t.k) ++s.up_degree_histogram[up[x]];
    }

    auto eccentricity = [&](Element src) {
        std::vector<std::size_t> dist(p.size(), std::numeric_limits<std::size_t>::max());
        std::deque<Element> queue{src};
        dist[src] = 0;
        std::size_t far = 0;
        while (!queue.empty()) {
            const Element v = queue.front();
            queue.pop_front();
            far = std::max(far, dist[v]);
            const Bits near = p.comparable_to(v);
            for (auto w = near.find_first(); w != Bits::npos; w = near.find_next(w)) {
                if (dist[w] == std::numeric_limits<std::size_t>::max()) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        return far;
    };
    s.center_eccentricity = eccentricity(t.center());
    s.radius = s.center_eccentricity;
    if (p.size() <= 2000) {
        for (Element x = 0; x < p.size(); ++x) s.radius = std::min(s.radius, eccentricity(x));
    }
    return s;
}

} // namespace rainbow
