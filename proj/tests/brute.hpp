#pragma once

// Definition-level reference implementations for the tests. Nothing in
// here shares code paths with the library beyond FunctionTable/Relation
// storage; each function spells out the textbook definition directly.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "endolat/funcgraph.hpp"
#include "endolat/order.hpp"

namespace brute {

using endolat::element;
using endolat::FunctionTable;
using endolat::Relation;

// x ~ y iff f^k(x) = f^l(y) for some k, l >= 0 (bounded by n suffices).
inline bool same_component(FunctionTable const& f, element x, element y) {
    for (std::size_t k = 0; k <= f.size(); ++k)
        for (std::size_t l = 0; l <= f.size(); ++l)
            if (f.iterate(x, k) == f.iterate(y, l)) return true;
    return false;
}

inline bool is_cyclic(FunctionTable const& f, element c) {
    for (std::size_t m = 1; m <= f.size(); ++m)
        if (f.iterate(c, m) == c) return true;
    return false;
}

// Period of the cycle reached from x.
inline std::size_t period(FunctionTable const& f, element x) {
    element const c = f.iterate(x, f.size());
    for (std::size_t m = 1;; ++m)
        if (f.iterate(c, m) == c) return m;
}

inline std::optional<std::size_t> distance(FunctionTable const& f, element y, element c) {
    for (std::size_t t = 0; t <= 2 * f.size(); ++t)
        if (f.iterate(y, t) == c) return t;
    return std::nullopt;
}

inline bool concurrent(FunctionTable const& f, element u, element v) {
    for (std::size_t k = 0; k <= f.size(); ++k)
        if (f.iterate(u, k) == f.iterate(v, k)) return true;
    return false;
}

// (x, y) is prohibited iff there are k, l >= 0 and m >= 2 with m not
// dividing k - l, f^k(x) .. f^(k+m-1)(x) distinct, f^(k+m)(x) = f^k(x) = f^l(y).
inline bool prohibited(FunctionTable const& f, element x, element y) {
    std::size_t const n = f.size();
    for (std::size_t k = 0; k <= 2 * n; ++k) {
        for (std::size_t m = 2; m <= n; ++m) {
            std::set<element> orbit;
            for (std::size_t i = 0; i < m; ++i) orbit.insert(f.iterate(x, k + i));
            if (orbit.size() != m || f.iterate(x, k + m) != f.iterate(x, k)) continue;
            for (std::size_t l = 0; l <= 2 * n; ++l) {
                long long const diff = static_cast<long long>(k) - static_cast<long long>(l);
                if (diff % static_cast<long long>(m) != 0 && f.iterate(x, k) == f.iterate(y, l))
                    return true;
            }
        }
    }
    return false;
}

// Least upper bound straight from the definition, or nullopt.
inline std::optional<element> lub(Relation const& r, element x, element y) {
    std::vector<element> ub;
    for (element z = 0; z < r.size(); ++z)
        if (r(x, z) && r(y, z)) ub.push_back(z);
    for (element m : ub)
        if (std::all_of(ub.begin(), ub.end(), [&](element z) { return r(m, z); })) return m;
    return std::nullopt;
}

inline std::optional<element> glb(Relation const& r, element x, element y) {
    std::vector<element> lb;
    for (element z = 0; z < r.size(); ++z)
        if (r(z, x) && r(z, y)) lb.push_back(z);
    for (element m : lb)
        if (std::all_of(lb.begin(), lb.end(), [&](element z) { return r(z, m); })) return m;
    return std::nullopt;
}

inline bool is_lattice_endomorphism(FunctionTable const& f, Relation const& r) {
    for (element x = 0; x < r.size(); ++x)
        for (element y = 0; y < r.size(); ++y) {
            auto j = lub(r, x, y), m = glb(r, x, y);
            if (!j || !m) return false;
            if (lub(r, f(x), f(y)) != f(*j) || glb(r, f(x), f(y)) != f(*m)) return false;
        }
    return true;
}

// perm applied to f: g(perm[x]) = perm[f(x)].
inline FunctionTable relabel(FunctionTable const& f, std::vector<element> const& perm) {
    std::vector<element> image(f.size());
    for (element x = 0; x < f.size(); ++x) image[perm[x]] = perm[f(x)];
    return FunctionTable(std::move(image));
}

inline Relation relation(std::size_t n, std::vector<std::pair<element, element>> const& pairs) {
    Relation r = Relation::identity(n);
    for (auto [a, b] : pairs) r.set(a, b);
    return r;
}

} // namespace brute
