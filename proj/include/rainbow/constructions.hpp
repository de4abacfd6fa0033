#pragma once

#include "rainbow/poset.hpp"

#include <string>
#include <vector>

namespace rainbow {

inline Poset chain(std::size_t k)
{
    std::vector<Cover> arcs;
    for (Element i = 0; i + 1 < k; ++i) arcs.emplace_back(i, i + 1);
    return make_poset(k, arcs);
}

inline Poset antichain(std::size_t k) { return make_poset(k, {}); }

/// O_k: the disjoint union of chains of lengths 1, 2, ..., k.
inline Poset organ(std::size_t k)
{
    if (k == 0) fail(ErrorKind::bad_params, "organ needs k >= 1");
    std::vector<Cover> arcs;
    std::vector<std::string> labels;
    Element next = 0;
    for (std::size_t len = 1; len <= k; ++len) {
        for (std::size_t i = 0; i < len; ++i) {
            labels.push_back("c" + std::to_string(len) + "_" + std::to_string(i + 1));
            if (i > 0) arcs.emplace_back(next + i - 1, next + i);
        }
        next += len;
    }
    return make_poset(next, arcs, labels);
}

/// H_k: the organ O_k with a new minimum and maximum.
inline Poset harp(std::size_t k) { return adjoin_extremum(adjoin_extremum(organ(k), Side::bottom), Side::top); }

/// K_{s_1,...,s_r}: level j is an antichain of size s_j, and every element of
/// a lower level is below every element of a higher one.
inline Poset complete_multilevel(const std::vector<std::size_t>& parts)
{
    std::size_t n = 0;
    std::vector<std::size_t> start;
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        if (parts[j] == 0) fail(ErrorKind::bad_params, "every level needs at least one element");
        start.push_back(n);
        for (std::size_t i = 0; i < parts[j]; ++i) labels.push_back("x" + std::to_string(j + 1) + "_" + std::to_string(i + 1));
        n += parts[j];
    }
    std::vector<Bits> up(n, Bits(n));
    for (std::size_t j = 0; j < parts.size(); ++j) {
        for (std::size_t jj = j + 1; jj < parts.size(); ++jj) {
            for (std::size_t a = 0; a < parts[j]; ++a) {
                for (std::size_t b = 0; b < parts[jj]; ++b) up[start[j] + a].set(start[jj] + b);
            }
        }
    }
    return Poset::from_relation(std::move(up), std::move(labels));
}

/// One minimum below two incomparable maxima.
inline Poset vee() { return linear_sum(chain(1), antichain(2)); }

/// C_1 below the organ O_2.
inline Poset jay() { return linear_sum(chain(1), organ(2)); }

inline Poset diamond() { return complete_multilevel({1, 2, 1}); }

struct BlowUp {
    Poset poset;
    std::vector<std::vector<Element>> chains; // chains[e] replaces original element e, bottom first
};

/// Replaces order[j] with a chain of 1 + |{i < j : order[i] incomparable to order[j]}|
/// elements; elements of different chains inherit the original relation.
inline BlowUp blowup_with_chains(const Poset& p, const std::vector<Element>& order)
{
    const std::size_t k = p.size();
    if (order.size() != k) fail(ErrorKind::bad_params, "blow-up order must list every element once");
    std::vector<char> seen(k, 0);
    for (Element e : order) {
        if (e >= k || seen[e]) fail(ErrorKind::bad_params, "blow-up order must be a permutation");
        seen[e] = 1;
    }
    std::vector<std::size_t> length(k, 1);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (p.incomparable(order[i], order[j])) ++length[order[j]];
        }
    }
    BlowUp out;
    out.chains.resize(k);
    std::vector<Element> owner;
    std::vector<std::string> labels;
    for (Element e = 0; e < k; ++e) {
        for (std::size_t i = 0; i < length[e]; ++i) {
            out.chains[e].push_back(owner.size());
            owner.push_back(e);
            std::string base = p.label(e).empty() ? "p" + std::to_string(e) : p.label(e);
            labels.push_back(base + "#" + std::to_string(i + 1));
        }
    }
    const std::size_t n = owner.size();
    std::vector<Bits> up(n, Bits(n));
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
            if (owner[a] == owner[b]) {
                if (a < b) up[a].set(b);
            }
            else if (p.less(owner[a], owner[b])) {
                up[a].set(b);
            }
        }
    }
    out.poset = Poset::from_relation(std::move(up), std::move(labels));
    return out;
}

inline Poset blowup(const Poset& p, const std::vector<Element>& order) { return blowup_with_chains(p, order).poset; }

/// D^{k,h}: complete k-ary tree of height h, edges pointing to the root.
/// Heap numbering: the root is 0 and the children of v are k*v+1 .. k*v+k.
inline Poset downtree(std::size_t k, std::size_t h)
{
    if (k == 0 || h == 0) fail(ErrorKind::bad_params, "downtree needs k, h >= 1");
    std::size_t n = 0, level = 1;
    for (std::size_t d = 0; d < h; ++d) {
        n += level;
        level *= k;
    }
    std::vector<Cover> arcs;
    std::vector<std::string> labels(n);
    labels[0] = "r";
    for (Element v = 1; v < n; ++v) {
        Element parent = (v - 1) / k;
        arcs.emplace_back(v, parent);
        labels[v] = labels[parent] + "." + std::to_string((v - 1) % k);
    }
    return make_poset(n, arcs, labels);
}

inline Poset uptree(std::size_t k, std::size_t h) { return dual(downtree(k, h)); }

/// D^j_k: two chains with four extra covers tying them together. A cover that
/// would reach a t-index beyond its chain is left out.
inline Poset d_jk(std::size_t j, std::size_t k)
{
    if (k < 4 || j <= 1 || j + 1 >= k) fail(ErrorKind::bad_params, "d_jk needs k >= 4 and 1 < j < k-1");
    std::vector<std::string> labels;
    auto add = [&](std::string name) {
        labels.push_back(std::move(name));
        return labels.size() - 1;
    };
    std::vector<Element> first, second;
    for (std::size_t i = 1; i <= j; ++i) first.push_back(add("b_" + std::to_string(i)));
    const Element m = add("m");
    first.push_back(m);
    Element t_next = labels.size();
    bool has_t_next = j + 1 <= k - 2;
    for (std::size_t i = j + 1; i <= k - 2; ++i) first.push_back(add("t_" + std::to_string(i)));
    for (std::size_t i = 0; i <= j; ++i) second.push_back(add("b'_" + std::to_string(i)));
    const Element m1 = add("m'_1");
    const Element m2 = add("m'_2");
    second.push_back(m1);
    second.push_back(m2);
    const Element tp_next = labels.size();
    for (std::size_t i = j + 1; i <= k - 1; ++i) second.push_back(add("t'_" + std::to_string(i)));

    std::vector<Cover> arcs;
    for (std::size_t i = 0; i + 1 < first.size(); ++i) arcs.emplace_back(first[i], first[i + 1]);
    for (std::size_t i = 0; i + 1 < second.size(); ++i) arcs.emplace_back(second[i], second[i + 1]);
    const Element b_j = first[j - 1];
    const Element bp_j = second[j];
    arcs.emplace_back(bp_j, m);
    arcs.emplace_back(m, tp_next);
    arcs.emplace_back(b_j, m1);
    if (has_t_next) arcs.emplace_back(m2, t_next);
    return make_poset(labels.size(), arcs, labels);
}

/// O^j_k = O_{k-2} + D^j_k.
inline Poset o_jk(std::size_t j, std::size_t k)
{
    Poset d = d_jk(j, k);
    return disjoint_sum(organ(k - 2), d);
}

/// Seven elements u, v_1, v_2, w_0..w_3 with covers v_1<v_2, v_1<w_2, w_1<v_2
/// and the chain w_0<w_1<w_2<w_3; u is isolated.
inline Poset a3_witness()
{
    // u=0 v1=1 v2=2 w0=3 w1=4 w2=5 w3=6
    return make_poset(7, {{1, 2}, {1, 5}, {4, 2}, {3, 4}, {4, 5}, {5, 6}}, {"u", "v_1", "v_2", "w_0", "w_1", "w_2", "w_3"});
}

} // namespace rainbow
