#pragma once

#include "rainbow/coloring.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/poset.hpp"
#include "rainbow/universal_tree.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace rainbow {

using ColorSet = std::set<Color>;

/// Injective map pattern element -> host element with the colours it picks
/// up. `order` lists pattern elements in the order they were placed.
struct EmbeddingCertificate {
    std::vector<Element> map;
    std::vector<Color> colors;
    std::vector<Element> order;
};

// ---------------------------------------------------------------------------
// Hosts. A region is a rooted tree in which every node has an ordered child
// list, a rank (the root has the largest, children one less) and a colour.
// The embedder only talks to hosts through this interface.

/// Complete a-ary downtree of height h stored implicitly in heap order: the
/// children of v are a*v+1 .. a*v+a, so each level is a contiguous index range.
class CompleteTree {
public:
    CompleteTree(std::size_t arity, std::size_t height, std::vector<Color> colors)
        : arity_(arity), height_(height), colors_(std::move(colors))
    {
        if (arity == 0 || height == 0) fail(ErrorKind::bad_params, "complete tree needs arity and height >= 1");
        if (colors_.size() != node_count(arity, height)) fail(ErrorKind::bad_params, "colour vector does not match tree size");
        level_start_.push_back(0);
        std::size_t width = 1;
        for (std::size_t d = 0; d < height; ++d) {
            level_start_.push_back(level_start_.back() + width);
            width *= arity;
        }
        const Color top = colors_.empty() ? 0 : *std::max_element(colors_.begin(), colors_.end());
        if (top < 64) {
            masks_.assign(colors_.size(), 0);
            for (std::size_t v = colors_.size(); v-- > 0;) {
                masks_[v] |= std::uint64_t{1} << colors_[v];
                if (v > 0) masks_[(v - 1) / arity_] |= masks_[v];
            }
        }
    }

    static std::size_t node_count(std::size_t arity, std::size_t height)
    {
        std::size_t total = 0, width = 1;
        for (std::size_t d = 0; d < height; ++d) {
            total += width;
            width *= arity;
        }
        return total;
    }

    std::size_t size() const noexcept { return colors_.size(); }
    std::size_t arity() const noexcept { return arity_; }
    std::size_t height() const noexcept { return height_; }
    Element root() const noexcept { return 0; }
    Color color(Element v) const { return colors_[v]; }
    const std::vector<Color>& colors() const noexcept { return colors_; }

    std::size_t depth(Element v) const
    {
        return static_cast<std::size_t>(std::upper_bound(level_start_.begin(), level_start_.end(), v) - level_start_.begin()) - 1;
    }
    std::size_t rank(Element v) const { return height_ - depth(v); }
    std::size_t child_count(Element v) const { return depth(v) + 1 < height_ ? arity_ : 0; }
    Element child(Element v, std::size_t i) const { return arity_ * v + 1 + i; }
    Element parent(Element v) const { return (v - 1) / arity_; }

    /// True iff a lies strictly below b, i.e. b is a proper ancestor of a.
    bool less(Element a, Element b) const
    {
        while (a != 0 && a > b) {
            a = parent(a);
            if (a == b) return true;
        }
        return false;
    }

    /// Number of colours of `set` present on v or below it.
    std::size_t count_below(Element v, const ColorSet& set) const
    {
        if (!masks_.empty()) {
            std::uint64_t want = 0;
            for (Color c : set) {
                if (c < 64) want |= std::uint64_t{1} << c;
            }
            return static_cast<std::size_t>(std::popcount(masks_[v] & want));
        }
        ColorSet seen;
        // The subtree meets each level in one contiguous index range.
        Element lo = v, hi = v;
        for (std::size_t d = depth(v); d < height_; ++d) {
            for (Element w = lo; w <= hi; ++w) {
                if (set.count(colors_[w])) seen.insert(colors_[w]);
            }
            lo = arity_ * lo + 1;
            hi = arity_ * hi + arity_;
        }
        return seen.size();
    }

private:
    std::size_t arity_;
    std::size_t height_;
    std::vector<Color> colors_;
    std::vector<std::size_t> level_start_;
    std::vector<std::uint64_t> masks_;
};

/// Component of T^k appended at `root`, seen as a downtree. Uptree components
/// are read upside down, so their region rank is k + 1 - rank.
class UniversalRegion {
public:
    UniversalRegion(const UniversalTree& tree, const Coloring& coloring, Element root)
        : tree_(tree), coloring_(coloring), root_(root), downward_(tree.appended_is_downtree(root))
    {
    }

    Element root() const noexcept { return root_; }
    Color color(Element v) const { return coloring_[v]; }
    std::size_t rank(Element v) const { return downward_ ? tree_.rank[v] : tree_.k + 1 - tree_.rank[v]; }
    std::size_t child_count(Element v) const { return children(v).size(); }
    Element child(Element v, std::size_t i) const { return children(v)[i]; }

    std::size_t count_below(Element v, const ColorSet& set) const
    {
        ColorSet seen;
        std::vector<Element> stack{v};
        while (!stack.empty()) {
            const Element w = stack.back();
            stack.pop_back();
            if (set.count(coloring_[w])) seen.insert(coloring_[w]);
            for (Element c : children(w)) stack.push_back(c);
        }
        return seen.size();
    }

private:
    const std::vector<Element>& children(Element v) const
    {
        return v == root_ ? tree_.appended_children[v] : tree_.member_children[v];
    }

    const UniversalTree& tree_;
    const Coloring& coloring_;
    Element root_;
    bool downward_;
};

/// A poset that is a complete downtree, with its colouring.
class PosetRegion {
public:
    PosetRegion(const Poset& host, const Coloring& coloring) : coloring_(coloring), children_(host.size())
    {
        const auto maxima = maximal_elements(host);
        if (host.size() == 0 || maxima.size() != 1 || !is_tree_poset(host)) {
            fail(ErrorKind::precondition_violated, "host must be a downtree");
        }
        root_ = maxima.front();
        for (const auto& [a, b] : host.covers()) children_[b].push_back(a);
        for (auto& c : children_) std::sort(c.begin(), c.end());
        rank_ = rank_partition(host).rank;
        const std::size_t h = rank_[root_];
        for (Element v = 0; v < host.size(); ++v) {
            if (rank_[v] > 1 && children_[v].size() != h) fail(ErrorKind::precondition_violated, "host must be a complete k-ary downtree of height k");
            if (rank_[v] == 1 && !children_[v].empty()) fail(ErrorKind::precondition_violated, "host must be graded");
        }
        if (coloring.size() != host.size()) fail(ErrorKind::bad_params, "coloring must assign every host element");
    }

    Element root() const noexcept { return root_; }
    std::size_t height() const { return rank_[root_]; }
    Color color(Element v) const { return coloring_[v]; }
    std::size_t rank(Element v) const { return rank_[v]; }
    std::size_t child_count(Element v) const { return children_[v].size(); }
    Element child(Element v, std::size_t i) const { return children_[v][i]; }

    std::size_t count_below(Element v, const ColorSet& set) const
    {
        ColorSet seen;
        std::vector<Element> stack{v};
        while (!stack.empty()) {
            const Element w = stack.back();
            stack.pop_back();
            if (set.count(coloring_[w])) seen.insert(coloring_[w]);
            for (Element c : children_[w]) stack.push_back(c);
        }
        return seen.size();
    }

private:
    const Coloring& coloring_;
    Element root_ = 0;
    std::vector<std::vector<Element>> children_;
    std::vector<std::size_t> rank_;
};

// ---------------------------------------------------------------------------
// Downtree embedding.

namespace detail {

struct DowntreePattern {
    Element root = 0;
    std::vector<std::vector<Element>> children; // ascending element index
    std::vector<std::size_t> down_size;         // |D_T(t)|
};

inline DowntreePattern read_downtree(const Poset& t)
{
    const auto maxima = maximal_elements(t);
    if (t.size() == 0 || maxima.size() != 1 || !is_tree_poset(t)) fail(ErrorKind::precondition_violated, "pattern must be a downtree");
    DowntreePattern d;
    d.root = maxima.front();
    d.children.resize(t.size());
    for (const auto& [a, b] : t.covers()) d.children[b].push_back(a);
    for (auto& c : d.children) std::sort(c.begin(), c.end());
    d.down_size.resize(t.size());
    for (Element x = 0; x < t.size(); ++x) d.down_size[x] = t.below(x).count() + 1;
    return d;
}

/// Places pattern subtrees following the inductive proof. `blocked` starts as
/// the unusable colours and absorbs each colour as it is used, so a later
/// sibling never repeats a colour. Each child subtree starts at the matching
/// child of its parent's image and walks down lowest-index children until
///   f(x) = r(x) - |D_T(t)| - |blocked colours at or below x|
/// is zero on an element whose own colour is free. f never goes negative on
/// the way (a free colour costs one rank, a blocked one is also lost from the
/// count below), and a leaf cannot satisfy f >= 0 with a blocked colour, so
/// the walk stops; f = 0 is exactly the rank bound claimed for the image.
template <class Region>
class DowntreeEmbedder {
public:
    DowntreeEmbedder(const Region& region, const DowntreePattern& pattern, std::size_t pattern_size)
        : region_(region), pattern_(pattern)
    {
        cert_.map.assign(pattern_size, UniversalTree::none);
        cert_.colors.assign(pattern_size, 0);
    }

    EmbeddingCertificate run(Element start, ColorSet blocked)
    {
        const Element t = pattern_.root;
        if (blocked.count(region_.color(start))) fail(ErrorKind::precondition_violated, "root image carries an unusable colour");
        if (region_.rank(start) < pattern_.down_size[t] + region_.count_below(start, blocked)) {
            fail(ErrorKind::precondition_violated, "region too shallow for the tree and its unusable colours");
        }
        place(t, start, blocked);
        return std::move(cert_);
    }

private:
    void place(Element t, Element z, ColorSet& blocked)
    {
        cert_.map[t] = z;
        cert_.colors[t] = region_.color(z);
        cert_.order.push_back(t);
        blocked.insert(region_.color(z));
        const auto& kids = pattern_.children[t];
        if (kids.size() > region_.child_count(z)) fail(ErrorKind::precondition_violated, "host element has too few children");
        for (std::size_t i = 0; i < kids.size(); ++i) {
            place(kids[i], walk(region_.child(z, i), pattern_.down_size[kids[i]], blocked), blocked);
        }
    }

    Element walk(Element x, std::size_t need, const ColorSet& blocked) const
    {
        for (;;) {
            const std::size_t budget = need + region_.count_below(x, blocked);
            if (region_.rank(x) < budget) fail(ErrorKind::precondition_violated, "rank budget exhausted while descending");
            if (region_.rank(x) == budget && !blocked.count(region_.color(x))) return x;
            if (region_.child_count(x) == 0) fail(ErrorKind::precondition_violated, "reached a leaf while descending");
            x = region_.child(x, 0);
        }
    }

    const Region& region_;
    const DowntreePattern& pattern_;
    EmbeddingCertificate cert_;
};

/// Highest-ranked element whose colour is not in `unusable`; among equals the
/// smallest index.
template <class Region>
Element highest_free(const Region& region, const ColorSet& unusable)
{
    std::vector<Element> level{region.root()};
    while (!level.empty()) {
        Element best = UniversalTree::none;
        for (Element v : level) {
            if (!unusable.count(region.color(v))) best = std::min(best, v);
        }
        if (best != UniversalTree::none) return best;
        std::vector<Element> next;
        for (Element v : level) {
            for (std::size_t i = 0; i < region.child_count(v); ++i) next.push_back(region.child(v, i));
        }
        level = std::move(next);
    }
    fail(ErrorKind::precondition_violated, "every host element carries an unusable colour");
}

} // namespace detail

/// Rainbow copy of downtree `t` avoiding `unusable`, with the root on a highest
/// ranked element of a free colour. Requires height >= |t| + |unusable|.
template <class Region>
EmbeddingCertificate embed_downtree_in(const Poset& t, const ColorSet& unusable, const Region& region, std::size_t height)
{
    if (height < t.size() + unusable.size()) fail(ErrorKind::precondition_violated, "need k >= |T| + |U|");
    const auto pattern = detail::read_downtree(t);
    const Element start = detail::highest_free(region, unusable);
    return detail::DowntreeEmbedder<Region>(region, pattern, t.size()).run(start, unusable);
}

inline EmbeddingCertificate embed_downtree(const Poset& t, const ColorSet& unusable, const CompleteTree& host)
{
    if (host.arity() < host.height()) fail(ErrorKind::precondition_violated, "host must be D^k");
    return embed_downtree_in(t, unusable, host, host.height());
}

inline EmbeddingCertificate embed_downtree(const Poset& t, const ColorSet& unusable, const Poset& host, const Coloring& coloring)
{
    const PosetRegion region(host, coloring);
    return embed_downtree_in(t, unusable, region, region.height());
}

/// Outcome of checking the three guarantees of the downtree embedding.
struct DowntreeProperties {
    bool root_highest_free = false; // (1)
    bool avoids_unusable = false;   // (2)
    bool rank_bound = false;        // (3)
    bool all() const { return root_highest_free && avoids_unusable && rank_bound; }
};

/// Re-derives (1)-(3) from the certificate. For (3) the blocked colours at a
/// non-root image are the unusable ones plus those of images placed earlier.
template <class Region>
DowntreeProperties check_downtree_properties(const Poset& t, const ColorSet& unusable, const Region& region, const EmbeddingCertificate& cert)
{
    DowntreeProperties out;
    const auto maxima = maximal_elements(t);
    if (maxima.size() != 1 || cert.map.size() != t.size() || cert.order.size() != t.size()) return out;
    const Element top = maxima.front();

    std::size_t best_rank = 0;
    std::vector<Element> level{region.root()};
    while (!level.empty() && best_rank == 0) {
        for (Element v : level) {
            if (!unusable.count(region.color(v))) best_rank = region.rank(v);
        }
        std::vector<Element> next;
        for (Element v : level) {
            for (std::size_t i = 0; i < region.child_count(v); ++i) next.push_back(region.child(v, i));
        }
        level = std::move(next);
    }
    const Element root_image = cert.map[top];
    out.root_highest_free = !unusable.count(region.color(root_image)) && region.rank(root_image) == best_rank;

    out.avoids_unusable = std::none_of(cert.map.begin(), cert.map.end(), [&](Element z) { return unusable.count(region.color(z)) > 0; });

    out.rank_bound = true;
    ColorSet blocked = unusable;
    for (Element e : cert.order) {
        const Element z = cert.map[e];
        if (e != top) {
            const std::size_t bound = t.below(e).count() + 1 + region.count_below(z, blocked);
            if (region.rank(z) > bound) out.rank_bound = false;
        }
        blocked.insert(region.color(z));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tree classification.

struct TreeMeta {
    Element base = 0;
    std::vector<std::size_t> dist;
    std::vector<TreeSide> side;  // center for the base, down at odd distance, up at even
    std::vector<Element> orig;   // UniversalTree::none for the base
    std::vector<std::vector<Element>> block; // block[z] = {z} plus elements originated by z, ascending
};

inline TreeMeta classify_tree(const Poset& t, std::optional<Element> base = std::nullopt)
{
    if (t.size() == 0 || !is_tree_poset(t)) fail(ErrorKind::not_a_tree_poset, "input is not a tree poset");
    const std::size_t n = t.size();
    TreeMeta m;
    if (base) {
        if (*base >= n || t.above(*base).any()) fail(ErrorKind::bad_params, "base must be a maximal element");
        m.base = *base;
    }
    else {
        m.base = maximal_elements(t).front();
    }
    constexpr std::size_t far = std::numeric_limits<std::size_t>::max();
    m.dist.assign(n, far);
    m.dist[m.base] = 0;
    std::deque<Element> queue{m.base};
    while (!queue.empty()) {
        const Element v = queue.front();
        queue.pop_front();
        const Bits near = t.comparable_to(v);
        for (auto w = near.find_first(); w != Bits::npos; w = near.find_next(w)) {
            if (m.dist[w] == far) {
                m.dist[w] = m.dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    const auto rank = rank_partition(t).rank;
    m.side.resize(n);
    m.orig.assign(n, UniversalTree::none);
    m.block.assign(n, {});
    for (Element z = 0; z < n; ++z) {
        m.side[z] = z == m.base ? TreeSide::center : (m.dist[z] % 2 ? TreeSide::down : TreeSide::up);
        if (z == m.base) continue;
        const bool up = m.side[z] == TreeSide::up;
        const Bits& pool = up ? t.below(z) : t.above(z);
        Element pick = UniversalTree::none;
        for (auto w = pool.find_first(); w != Bits::npos; w = pool.find_next(w)) {
            if (m.dist[w] + 1 != m.dist[z]) continue;
            if (pick == UniversalTree::none || (up ? rank[w] > rank[pick] : rank[w] < rank[pick])) pick = w;
        }
        if (pick == UniversalTree::none) fail(ErrorKind::not_a_tree_poset, "element without an originator");
        m.orig[z] = pick;
    }
    for (Element z = 0; z < n; ++z) m.block[z].push_back(z);
    for (Element z = 0; z < n; ++z) {
        if (m.orig[z] != UniversalTree::none) m.block[m.orig[z]].push_back(z);
    }
    for (auto& b : m.block) std::sort(b.begin(), b.end());
    return m;
}

// ---------------------------------------------------------------------------
// Embedding into T^k.

/// Rainbow copy of tree poset `t` in a properly coloured T^k, built as in the
/// universality argument: the base goes to the centre, then elements are
/// handled by distance from the base and each one's block is embedded into
/// the component appended at its image, with the colours of every other
/// placed element unusable. The block root stays on the element's image.
inline EmbeddingCertificate embed_universal(const Poset& t, const UniversalTree& host, const Coloring& coloring)
{
    if (coloring.size() != host.size()) fail(ErrorKind::bad_params, "coloring must assign every host element");
    if (t.size() > host.k) fail(ErrorKind::precondition_violated, "tree has more elements than k");
    const TreeMeta meta = classify_tree(t);
    const std::size_t n = t.size();

    EmbeddingCertificate cert;
    cert.map.assign(n, UniversalTree::none);
    cert.colors.assign(n, 0);
    std::vector<char> placed(n, 0);
    auto record = [&](Element e, Element x) {
        cert.map[e] = x;
        cert.colors[e] = coloring[x];
        cert.order.push_back(e);
        placed[e] = 1;
    };
    record(meta.base, host.center());

    std::vector<Element> schedule(n);
    std::iota(schedule.begin(), schedule.end(), Element{0});
    std::stable_sort(schedule.begin(), schedule.end(), [&](Element a, Element b) { return meta.dist[a] < meta.dist[b]; });

    for (Element z : schedule) {
        const auto& block = meta.block[z];
        if (block.size() == 1) continue;
        if (!placed[z]) fail(ErrorKind::precondition_violated, "block root was not placed before its block");
        const Element xz = cert.map[z];
        const bool want_down = meta.side[z] != TreeSide::down;
        if (host.appended_is_downtree(xz) != want_down || host.appended_children[xz].empty()) {
            fail(ErrorKind::precondition_violated, "no suitable component appended at the image");
        }
        Poset piece = induced_subposet(t, block);
        if (!want_down) piece = dual(piece);

        ColorSet unusable;
        for (Element e = 0; e < n; ++e) {
            if (placed[e] && e != z) unusable.insert(cert.colors[e]);
        }
        const UniversalRegion region(host, coloring, xz);
        const auto pattern = detail::read_downtree(piece);
        if (block[pattern.root] != z) fail(ErrorKind::precondition_violated, "block is not rooted at its originator");
        const auto local = detail::DowntreeEmbedder<UniversalRegion>(region, pattern, piece.size()).run(xz, unusable);
        for (Element e : local.order) {
            if (block[e] != z) record(block[e], local.map[e]);
        }
    }
    if (std::find(placed.begin(), placed.end(), 0) != placed.end()) fail(ErrorKind::precondition_violated, "blocks did not cover the tree");
    return cert;
}

// ---------------------------------------------------------------------------
// Independent checking.

/// Injective, order-preserving in both directions, and rainbow.
inline bool verify_certificate(const Poset& host, const Coloring& coloring, const Poset& pattern, const EmbeddingCertificate& cert)
{
    const std::size_t m = pattern.size();
    if (cert.map.size() != m || coloring.size() != host.size()) return false;
    ColorSet colors;
    std::set<Element> images;
    for (Element e = 0; e < m; ++e) {
        const Element x = cert.map[e];
        if (x >= host.size()) return false;
        images.insert(x);
        colors.insert(coloring[x]);
    }
    if (images.size() != m || colors.size() != m) return false;
    for (Element a = 0; a < m; ++a) {
        for (Element b = 0; b < m; ++b) {
            if (a != b && pattern.less(a, b) != host.less(cert.map[a], cert.map[b])) return false;
        }
    }
    return true;
}

inline bool verify_certificate(const CompleteTree& host, const Poset& pattern, const EmbeddingCertificate& cert)
{
    const std::size_t m = pattern.size();
    if (cert.map.size() != m) return false;
    ColorSet colors;
    std::set<Element> images;
    for (Element e = 0; e < m; ++e) {
        const Element x = cert.map[e];
        if (x >= host.size()) return false;
        images.insert(x);
        colors.insert(host.color(x));
    }
    if (images.size() != m || colors.size() != m) return false;
    for (Element a = 0; a < m; ++a) {
        for (Element b = 0; b < m; ++b) {
            if (a != b && pattern.less(a, b) != host.less(cert.map[a], cert.map[b])) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Random inputs for fuzzing.

/// Random downtree on n elements: element 0 is the maximum and each later
/// element is covered by a uniformly chosen earlier one.
template <class Rng>
Poset random_downtree(std::size_t n, Rng& rng)
{
    std::vector<Cover> arcs;
    for (std::size_t v = 1; v < n; ++v) {
        std::uniform_int_distribution<std::size_t> pick(0, v - 1);
        arcs.emplace_back(v, pick(rng));
    }
    return make_poset(n, arcs);
}

/// The random-order proper colouring rule, applied to the implicit tree.
template <class Rng>
std::vector<Color> random_tree_coloring(std::size_t arity, std::size_t height, Rng& rng)
{
    const std::size_t n = CompleteTree::node_count(arity, height);
    const CompleteTree shape(arity, height, std::vector<Color>(n, 0));
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), Element{0});
    std::shuffle(order.begin(), order.end(), rng);
    constexpr Color unset = std::numeric_limits<Color>::max();
    std::vector<Color> color(n, unset);
    std::size_t palette = 0;
    std::vector<char> taken;
    std::vector<Color> feasible;
    for (Element v : order) {
        taken.assign(palette, 0);
        for (Element a = v; a != 0;) {
            a = shape.parent(a);
            if (color[a] != unset) taken[color[a]] = 1;
        }
        Element lo = v, hi = v;
        for (std::size_t d = shape.depth(v); d < height; ++d) {
            for (Element w = lo; w <= hi; ++w) {
                if (color[w] != unset && w != v) taken[color[w]] = 1;
            }
            lo = arity * lo + 1;
            hi = arity * hi + arity;
        }
        feasible.clear();
        for (Color c = 0; c < palette; ++c) {
            if (!taken[c]) feasible.push_back(c);
        }
        std::uniform_int_distribution<std::size_t> pick(0, feasible.size());
        const std::size_t i = pick(rng);
        color[v] = i == feasible.size() ? palette++ : feasible[i];
    }
    return color;
}

/// Top-down proper colouring from a fixed palette: each element takes a
/// uniform colour among those its ancestors do not use. Needs palette >= height.
template <class Rng>
std::vector<Color> random_palette_tree_coloring(std::size_t arity, std::size_t height, std::size_t palette, Rng& rng)
{
    if (palette < height || palette > 64) fail(ErrorKind::bad_params, "palette must lie between the height and 64");
    const std::size_t n = CompleteTree::node_count(arity, height);
    std::vector<Color> color(n);
    std::vector<std::uint64_t> above(n, 0);
    std::uniform_int_distribution<std::size_t> pick(0, palette - 1);
    for (Element v = 0; v < n; ++v) {
        const std::uint64_t banned = v == 0 ? 0 : above[(v - 1) / arity] | (std::uint64_t{1} << color[(v - 1) / arity]);
        Color c;
        do c = pick(rng);
        while (banned >> c & 1);
        color[v] = c;
        above[v] = banned;
    }
    return color;
}

} // namespace rainbow
