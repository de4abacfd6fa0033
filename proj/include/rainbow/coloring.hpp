#pragma once

#include "rainbow/poset.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace rainbow {

using Color = std::size_t;

/// Colour assignment in canonical form: scanning elements by index, each
/// colour that has not appeared yet is one more than the largest seen so far.
/// Constructing from arbitrary ids relabels them into that form, which keeps
/// the colour classes unchanged.
class Coloring {
public:
    Coloring() = default;

    explicit Coloring(const std::vector<std::size_t>& raw)
    {
        std::vector<std::pair<std::size_t, Color>> relabel;
        colors_.reserve(raw.size());
        for (auto c : raw) {
            auto it = std::find_if(relabel.begin(), relabel.end(), [&](const auto& kv) { return kv.first == c; });
            if (it == relabel.end()) {
                relabel.emplace_back(c, relabel.size());
                colors_.push_back(relabel.size() - 1);
            }
            else {
                colors_.push_back(it->second);
            }
        }
        count_ = relabel.size();
    }

    std::size_t size() const noexcept { return colors_.size(); }
    Color operator[](Element x) const { return colors_[x]; }
    const std::vector<Color>& values() const noexcept { return colors_; }
    std::size_t color_count() const noexcept { return count_; }

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    std::vector<Color> colors_;
    std::size_t count_ = 0;
};

inline bool is_canonical_form(const std::vector<Color>& raw)
{
    Color next = 0;
    for (auto c : raw) {
        if (c > next) return false;
        if (c == next) ++next;
    }
    return true;
}

inline bool is_proper(const Poset& p, const Coloring& c)
{
    if (c.size() != p.size()) fail(ErrorKind::bad_params, "coloring must assign every element");
    for (Element x = 0; x < p.size(); ++x) {
        const Bits& above = p.above(x);
        for (auto y = above.find_first(); y != Bits::npos; y = above.find_next(y)) {
            if (c[x] == c[y]) return false;
        }
    }
    return true;
}

inline Coloring monochromatic(std::size_t n) { return Coloring(std::vector<std::size_t>(n, 0)); }

/// Colour = rank; proper because every rank layer is an antichain.
inline Coloring rank_coloring(const Poset& p)
{
    const auto ranks = rank_partition(p);
    return Coloring(ranks.rank);
}

/// Colours elements in a random order; each element picks uniformly among the
/// colours already in use that no coloured comparable element carries, plus
/// one fresh colour.
template <class Rng>
Coloring random_proper_coloring(const Poset& p, Rng& rng)
{
    const std::size_t n = p.size();
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), Element{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Bits> classes;
    std::vector<std::size_t> raw(n, 0);
    std::vector<std::size_t> feasible;
    for (Element x : order) {
        const Bits near = p.comparable_to(x);
        feasible.clear();
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (!classes[c].intersects(near)) feasible.push_back(c);
        }
        std::uniform_int_distribution<std::size_t> pick(0, feasible.size());
        std::size_t choice = pick(rng);
        std::size_t color;
        if (choice == feasible.size()) {
            color = classes.size();
            classes.emplace_back(n);
        }
        else {
            color = feasible[choice];
        }
        classes[color].set(x);
        raw[x] = color;
    }
    return Coloring(raw);
}

/// Every proper colouring in canonical form, in lexicographic order of the
/// colour vector. Exponential; meant for hosts of a dozen elements or so.
template <class Visit>
void for_each_proper_coloring(const Poset& p, Visit&& visit)
{
    const std::size_t n = p.size();
    std::vector<std::size_t> raw(n, 0);
    auto rec = [&](auto&& self, Element x, std::size_t used) -> bool {
        if (x == n) return visit(Coloring(raw));
        for (std::size_t c = 0; c <= used; ++c) {
            bool ok = true;
            for (Element y = 0; y < x && ok; ++y) {
                if (raw[y] == c && p.comparable(x, y)) ok = false;
            }
            if (!ok) continue;
            raw[x] = c;
            if (!self(self, x + 1, std::max(used, c + 1))) return false;
        }
        return true;
    };
    rec(rec, 0, 0);
}

} // namespace rainbow
