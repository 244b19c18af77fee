#pragma once

/**
 * @file funcgraph.hpp
 * @brief Structure of a finite self-map viewed as a functional graph.
 *
 * Drawing an edge x -> f(x) for every x splits the universe into
 * components, each holding exactly one cycle with in-trees hanging off
 * it. Everything the lattice construction needs about f lives here:
 * periods, distances to a designated cyclic element, concurrency
 * classes (residues of that distance mod the period), the split into
 * the cyclic part A0 (period >= 2) and the acyclic part A* (period 1),
 * and basins of fixed points.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "endolat/errors.hpp"

namespace endolat {

using element = std::size_t;

/// A self-map of {0, ..., n-1}, stored as its image table.
class FunctionTable {
public:
    FunctionTable() = default;

    explicit FunctionTable(std::vector<element> image) : image_(std::move(image)) {
        if (image_.empty()) throw input_error("self-map must have at least one element");
        for (std::size_t i = 0; i < image_.size(); ++i) {
            if (image_[i] >= image_.size())
                throw input_error("image of " + std::to_string(i) + " is " +
                                  std::to_string(image_[i]) + ", outside [0, " +
                                  std::to_string(image_.size()) + ")");
        }
    }
    FunctionTable(std::initializer_list<element> image)
        : FunctionTable(std::vector<element>(image)) {}

    std::size_t size() const noexcept { return image_.size(); }
    element operator()(element x) const { return image_[x]; }
    std::span<element const> image() const noexcept { return image_; }

    /// f^k(x)
    element iterate(element x, std::size_t k) const {
        for (std::size_t i = 0; i < k; ++i) x = image_[x];
        return x;
    }

    bool operator==(FunctionTable const&) const = default;

private:
    std::vector<element> image_;
};

struct Split {
    std::vector<element> cyclic;   // A0: components whose cycle is proper
    std::vector<element> acyclic;  // A*: components ending in a fixed point
};

/// Per-component structure of a self-map. Produced by components().
struct ComponentAnalysis {
    std::vector<std::size_t> component_id;
    /// Each cycle listed from its designated element c: c, f(c), f^2(c), ...
    std::vector<std::vector<element>> cycle_elements;
    std::vector<std::size_t> period;        // per component
    std::vector<std::size_t> distance;      // per element: d(x, c) to its component's c
    std::vector<std::size_t> class_index;   // per element: distance mod period
    std::vector<std::vector<element>> members;  // per component, ascending
    std::vector<element> fixed_points;
    std::vector<element> cyclic_part;
    std::vector<element> acyclic_part;

    std::size_t size() const noexcept { return component_id.size(); }
    std::size_t component_count() const noexcept { return period.size(); }
    element designated(std::size_t component) const { return cycle_elements[component].front(); }
    bool in_cyclic_part(element x) const { return period[component_id[x]] >= 2; }

    /// Concurrency classes E_0..E_{period-1} of one component, each ascending.
    std::vector<std::vector<element>> classes(std::size_t component) const {
        std::vector<std::vector<element>> out(period[component]);
        for (element u : members[component]) out[class_index[u]].push_back(u);
        return out;
    }
};

/// Components, cycles, periods and distances of f.
///
/// Each element is walked forward with a visit stamp until it reaches
/// an element whose component is already known (the walk's tail merges
/// into it) or closes a loop on the current walk (a new cycle). The
/// designated cyclic element of a component is its smallest-index cycle
/// member.
inline ComponentAnalysis components(FunctionTable const& f) {
    std::size_t const n = f.size();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);

    ComponentAnalysis a;
    a.component_id.assign(n, unset);
    a.distance.assign(n, 0);
    a.class_index.assign(n, 0);

    std::vector<std::size_t> on_walk(n, unset);  // position on the current walk
    std::vector<element> walk;
    walk.reserve(n);

    for (element start = 0; start < n; ++start) {
        if (a.component_id[start] != unset) continue;
        walk.clear();
        element x = start;
        while (a.component_id[x] == unset && on_walk[x] == unset) {
            on_walk[x] = walk.size();
            walk.push_back(x);
            x = f(x);
        }

        std::size_t tail_end = walk.size();  // walk[0, tail_end) are non-cycle elements
        if (a.component_id[x] == unset) {
            // Closed a new cycle starting at walk[on_walk[x]].
            std::size_t const comp = a.period.size();
            std::size_t const first = on_walk[x];
            std::size_t const len = walk.size() - first;
            element const c = *std::min_element(walk.begin() + static_cast<std::ptrdiff_t>(first),
                                                walk.end());
            std::vector<element> cycle;
            cycle.reserve(len);
            element y = c;
            for (std::size_t j = 0; j < len; ++j, y = f(y)) {
                cycle.push_back(y);
                a.component_id[y] = comp;
                a.distance[y] = (len - j) % len;  // f^j(c) needs len-j more steps back to c
            }
            a.cycle_elements.push_back(std::move(cycle));
            a.period.push_back(len);
            tail_end = first;
        }

        // Tail elements: d(y) = d(f(y)) + 1, filled back to front.
        for (std::size_t i = tail_end; i-- > 0;) {
            element const y = walk[i];
            a.component_id[y] = a.component_id[f(y)];
            a.distance[y] = a.distance[f(y)] + 1;
        }
        for (element y : walk) on_walk[y] = unset;
    }

    a.members.resize(a.period.size());
    for (element x = 0; x < n; ++x) {
        std::size_t const comp = a.component_id[x];
        a.class_index[x] = a.distance[x] % a.period[comp];
        a.members[comp].push_back(x);
        if (f(x) == x) a.fixed_points.push_back(x);
        (a.period[comp] >= 2 ? a.cyclic_part : a.acyclic_part).push_back(x);
    }
    return a;
}

/// n(x): the cycle length of x's component.
inline std::size_t period_of(element x, ComponentAnalysis const& a) {
    if (x >= a.size()) throw input_error("element " + std::to_string(x) + " out of range");
    return a.period[a.component_id[x]];
}

/// d(y, c) = min { t >= 0 : f^t(y) = c }, by direct iteration.
inline std::size_t distance(element y, element c, FunctionTable const& f) {
    if (y >= f.size() || c >= f.size()) throw input_error("element out of range");
    // Any element reachable from y is reached within n steps.
    element x = y;
    for (std::size_t t = 0; t <= f.size(); ++t, x = f(x))
        if (x == c) return t;
    throw domain_error("element " + std::to_string(c) + " is not reachable from " +
                       std::to_string(y));
}

/// (x, y) is f-prohibited iff both lie in one component of period >= 2
/// and their distances to the designated cyclic element differ mod the period.
inline bool is_prohibited(element x, element y, ComponentAnalysis const& a) {
    std::size_t const comp = a.component_id[x];
    if (comp != a.component_id[y]) return false;
    if (a.period[comp] < 2) return false;
    return a.class_index[x] != a.class_index[y];
}

inline bool has_proper_cycle(ComponentAnalysis const& a) {
    return std::any_of(a.period.begin(), a.period.end(), [](std::size_t p) { return p >= 2; });
}
inline bool has_proper_cycle(FunctionTable const& f) { return has_proper_cycle(components(f)); }

inline std::vector<element> fixed_points(FunctionTable const& f) {
    std::vector<element> out;
    for (element x = 0; x < f.size(); ++x)
        if (f(x) == x) out.push_back(x);
    return out;
}

inline Split split(ComponentAnalysis const& a) { return {a.cyclic_part, a.acyclic_part}; }
inline Split split(FunctionTable const& f) { return split(components(f)); }

/// All elements whose forward orbit reaches the fixed point c.
inline std::vector<element> basin(element c, FunctionTable const& f, ComponentAnalysis const& a) {
    if (c >= f.size()) throw input_error("element " + std::to_string(c) + " out of range");
    if (f(c) != c) throw domain_error("basin requested for non-fixed element " + std::to_string(c));
    return a.members[a.component_id[c]];
}

} // namespace endolat
