#pragma once

/**
 * @file extension.hpp
 * @brief Order extensions that keep a self-map order-preserving.
 *
 * Two families live here. The constructive one builds chains directly
 * from the shape of the functional graph (branch_lex_order and the
 * block concatenations built on it). The search-based one orients
 * incomparable pairs one at a time, closing each insertion under all
 * iterates of f, and checks its own output.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "endolat/errors.hpp"
#include "endolat/funcgraph.hpp"
#include "endolat/order.hpp"

namespace endolat {

/// How distinct elements with a common image are ranked.
/// Ties are always broken by ascending element index.
enum class SiblingPolicy {
    fixed_point_max,  // a fixed point is the greatest member of its own fiber
    fixed_point_min,  // a fixed point is the least member of its own fiber
    plain,
};

namespace detail {

inline bool sibling_less(element a, element b, element image, SiblingPolicy policy) {
    switch (policy) {
    case SiblingPolicy::fixed_point_max:
        if (a == image) return false;
        if (b == image) return true;
        break;
    case SiblingPolicy::fixed_point_min:
        if (a == image) return true;
        if (b == image) return false;
        break;
    case SiblingPolicy::plain:
        break;
    }
    return a < b;
}

} // namespace detail

/// Total order on a set of pairwise concurrent elements.
///
/// u < v is decided where the forward orbits of u and v first merge:
/// the last distinct pair f^(k-1)(u), f^(k-1)(v) shares an image and is
/// compared by `policy`. Every class built with the same policy is
/// mapped order-preservingly by f into the class of the images.
/// Returns `set` sorted ascending in that order.
inline std::vector<element> branch_lex_order(std::span<element const> set, FunctionTable const& f,
                                             SiblingPolicy policy) {
    std::vector<element> out(set.begin(), set.end());
    if (out.size() < 2) return out;

    // Concurrent iff the n-th iterates agree: any merge happens within n steps.
    element const target = f.iterate(out.front(), f.size());
    for (element u : out) {
        if (u >= f.size()) throw input_error("element " + std::to_string(u) + " out of range");
        if (f.iterate(u, f.size()) != target)
            throw domain_error("elements " + std::to_string(out.front()) + " and " +
                               std::to_string(u) + " are not concurrent");
    }

    auto less = [&](element u, element v) {
        while (u != v) {
            element const fu = f(u), fv = f(v);
            if (fu == fv) return detail::sibling_less(u, v, fu, policy);
            u = fu;
            v = fv;
        }
        return false;
    };
    std::sort(out.begin(), out.end(), less);
    return out;
}

/// A linear order on the acyclic part, listed ascending, with its block layout.
struct AcyclicChain {
    std::vector<element> order;
    std::vector<std::vector<element>> blocks;
};

/// Linear order on A* with hub p at the top of its basin and hub q at
/// the bottom of its basin.
///
/// Blocks, lowest first: basin(p), every other acyclic component in
/// ascending order of its fixed point, basin(q). Each block is a basin
/// and therefore f-closed, so concatenating monotone blocks keeps f
/// monotone. The result has {u : u <= p} = basin(p) and
/// {u : q <= u} = basin(q).
inline AcyclicChain acyclic_linear_extension(FunctionTable const& f, ComponentAnalysis const& a,
                                             element p, element q) {
    if (p >= f.size() || q >= f.size()) throw input_error("hub out of range");
    if (f(p) != p || f(q) != q) throw domain_error("hubs must be fixed points");
    if (p == q) throw domain_error("hubs must be distinct");

    AcyclicChain chain;
    chain.blocks.push_back(branch_lex_order(basin(p, f, a), f, SiblingPolicy::fixed_point_max));
    for (element c : a.fixed_points) {
        if (c == p || c == q) continue;
        chain.blocks.push_back(branch_lex_order(basin(c, f, a), f, SiblingPolicy::plain));
    }
    chain.blocks.push_back(branch_lex_order(basin(q, f, a), f, SiblingPolicy::fixed_point_min));
    for (auto const& b : chain.blocks) chain.order.insert(chain.order.end(), b.begin(), b.end());
    return chain;
}

/// Linear order on A* without hubs: one block per fixed point, each
/// with its fixed point on top.
inline AcyclicChain acyclic_chain(FunctionTable const& f, ComponentAnalysis const& a) {
    AcyclicChain chain;
    for (element c : a.fixed_points)
        chain.blocks.push_back(branch_lex_order(basin(c, f, a), f, SiblingPolicy::fixed_point_max));
    for (auto const& b : chain.blocks) chain.order.insert(chain.order.end(), b.begin(), b.end());
    return chain;
}

/// One chain per concurrency class E_0..E_{period-1} of a cyclic component.
/// Elements of different classes stay unrelated.
inline std::vector<std::vector<element>> component_order(FunctionTable const& f,
                                                         ComponentAnalysis const& a,
                                                         std::size_t component) {
    if (component >= a.component_count()) throw input_error("component index out of range");
    if (a.period[component] < 2)
        throw domain_error("component " + std::to_string(component) + " has no proper cycle");
    auto classes = a.classes(component);
    for (auto& cls : classes) cls = branch_lex_order(cls, f, SiblingPolicy::plain);
    return classes;
}

/// Relates every ordered pair along each chain in `r`.
inline void add_chains(Relation& r, std::span<std::vector<element> const> chains) {
    for (auto const& c : chains)
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i; j < c.size(); ++j) r.set(c[i], c[j]);
}

namespace detail {

// Inserts x <= y into a reflexive, transitive, antisymmetric relation and
// closes it. Returns false (leaving r untouched) when y < x already.
inline bool insert_closed(Relation& r, element x, element y) {
    if (r(x, y)) return true;
    if (r(y, x)) return false;
    BitMatrix& m = r.matrix();
    std::vector<BitMatrix::word> above_y(m.row(y), m.row(y) + m.words_per_row());
    for (element a = 0; a < r.size(); ++a)
        if (m.test(a, x)) m.or_into(m.row(a), above_y.data());
    return true;
}

// Inserts (f^k(a), f^k(b)) for k = 0, 1, ... until a pair is already
// present. Once one image pair is implied, every later one is too.
inline std::optional<Pair> insert_with_images(Relation& r, element a, element b,
                                              FunctionTable const& f) {
    while (!r(a, b)) {
        if (!insert_closed(r, a, b)) return Pair{a, b};
        a = f(a);
        b = f(b);
    }
    return std::nullopt;
}

} // namespace detail

/// Smallest partial order containing P and (a, b) on which f stays
/// monotone, or nullopt when antisymmetry breaks.
inline std::optional<PartialOrder> f_compatible_closure(PartialOrder const& p, Pair ab,
                                                        FunctionTable const& f) {
    if (f.size() != p.size()) throw input_error("map and order sizes differ");
    if (ab.first >= p.size() || ab.second >= p.size()) throw input_error("pair out of range");
    if (Verdict v = is_monotone(f, p); !v) throw domain_error("map is not monotone: " + v.describe());
    Relation r = p.relation();
    if (detail::insert_with_images(r, ab.first, ab.second, f)) return std::nullopt;
    return PartialOrder::from(std::move(r));
}

/// Result of a search-based extension. Never carries an unverified order.
struct ExtensionOutcome {
    std::optional<PartialOrder> order;
    std::string failure;
    std::vector<element> witness;

    bool ok() const noexcept { return order.has_value(); }
};

/// Orients, in lexicographic order, every incomparable pair (a, b) with
/// a < b accepted by `allow`: first try a <= b with f-compatible
/// closure, else b <= a. The final relation is checked to be a partial
/// order with f monotone and every allowed pair comparable.
template <typename Allow>
ExtensionOutcome orient_pairs_monotone(Relation base, FunctionTable const& f, Allow allow) {
    if (f.size() != base.size()) throw input_error("map and order sizes differ");
    if (Verdict v = check_partial_order(base); !v)
        return {std::nullopt, "starting relation is not a partial order: " + v.describe(), v.witness};
    if (Verdict v = is_monotone(f, base); !v)
        return {std::nullopt, "map is not monotone on the starting order", v.witness};

    std::size_t const n = base.size();
    for (element a = 0; a < n; ++a) {
        for (element b = a + 1; b < n; ++b) {
            if (base(a, b) || base(b, a) || !allow(a, b)) continue;
            Relation trial = base;
            if (!detail::insert_with_images(trial, a, b, f)) {
                base = std::move(trial);
                continue;
            }
            trial = base;
            if (!detail::insert_with_images(trial, b, a, f)) {
                base = std::move(trial);
                continue;
            }
            return {std::nullopt, "both orientations of an incomparable pair conflict", {a, b}};
        }
    }

    if (Verdict v = check_partial_order(base); !v)
        return {std::nullopt, "extension is not a partial order: " + v.describe(), v.witness};
    if (Verdict v = is_monotone(f, base); !v)
        return {std::nullopt, "map is not monotone on the extension", v.witness};
    for (element a = 0; a < n; ++a)
        for (element b = a + 1; b < n; ++b)
            if (allow(a, b) && !base(a, b) && !base(b, a))
                return {std::nullopt, "pair left incomparable", {a, b}};
    return {PartialOrder::from(std::move(base)), {}, {}};
}

/// Smallest order containing r on which f is monotone: adds (f x, f y)
/// for every x <= y until nothing changes. Returns the offending image
/// pair if antisymmetry breaks.
inline std::variant<Relation, Pair> monotone_hull(Relation r, FunctionTable const& f) {
    if (f.size() != r.size()) throw input_error("map and order sizes differ");
    for (bool changed = true; changed;) {
        changed = false;
        for (auto [x, y] : r.pairs()) {
            element const fx = f(x), fy = f(y);
            if (r(fx, fy)) continue;
            if (!detail::insert_closed(r, fx, fy)) return Pair{fx, fy};
            changed = true;
        }
    }
    return r;
}

/// Linear extension of P on which f stays monotone. P is first closed
/// under images, so f only needs to be monotone on some order containing
/// P. Succeeds whenever f has no proper cycle and that closure exists;
/// otherwise reports why not.
inline ExtensionOutcome szpilrajn_monotone(PartialOrder const& p, FunctionTable const& f) {
    auto hull = monotone_hull(p.relation(), f);
    if (auto const* bad = std::get_if<Pair>(&hull))
        return {std::nullopt, "images of P break antisymmetry", {bad->first, bad->second}};
    return orient_pairs_monotone(std::get<Relation>(std::move(hull)), f, [](element, element) { return true; });
}

/// Elements listed in ascending order of a relation that is linear on them.
inline std::vector<element> sort_by_order(std::vector<element> elems, Relation const& r) {
    std::sort(elems.begin(), elems.end(),
              [&](element x, element y) { return x != y && r(x, y); });
    return elems;
}

} // namespace endolat
