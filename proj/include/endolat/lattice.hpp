#pragma once

/**
 * @file lattice.hpp
 * @brief Deciding and constructing lattices on which a self-map is an
 *        endomorphism.
 *
 * A lattice exists iff f has no proper cycle or f has at least two fixed
 * points. When it exists, the order is glued from four pieces:
 *
 *   R*    a linear order on the acyclic part A*, monotone for f,
 *   rho_t one chain per concurrency class of each cyclic component,
 *   P     everything in A* at or below hub p sits below all of A0,
 *   Q     everything in A* at or above hub q sits above all of A0.
 *
 * The default construction pins R* so that the down-set of p is exactly
 * basin(p) and the up-set of q is exactly basin(q). Without that, an
 * element u with p < u < q whose image is p (or q) breaks the join/meet
 * identities for pairs (u, x) with x in A0. construct_paper_literal() keeps the
 * unpinned assembly available to show exactly that failure.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "endolat/errors.hpp"
#include "endolat/extension.hpp"
#include "endolat/funcgraph.hpp"
#include "endolat/order.hpp"

namespace endolat {

enum class DecisionReason { no_proper_cycle, two_fixed_points, blocked };

inline std::string_view to_string(DecisionReason r) {
    switch (r) {
    case DecisionReason::no_proper_cycle: return "no-proper-cycle";
    case DecisionReason::two_fixed_points: return "two-fixed-points";
    case DecisionReason::blocked: return "blocked";
    }
    return "?";
}

struct Decision {
    bool exists = false;
    DecisionReason reason = DecisionReason::blocked;
    std::vector<element> fixed_points;
    std::vector<element> proper_cycle;  // first proper cycle found, empty if none
};

inline Decision decide(FunctionTable const& f) {
    ComponentAnalysis const a = components(f);
    Decision d;
    d.fixed_points = a.fixed_points;
    for (std::size_t c = 0; c < a.component_count(); ++c)
        if (a.period[c] >= 2) {
            d.proper_cycle = a.cycle_elements[c];
            break;
        }
    if (d.proper_cycle.empty()) {
        d.exists = true;
        d.reason = DecisionReason::no_proper_cycle;
    } else if (d.fixed_points.size() >= 2) {
        d.exists = true;
        d.reason = DecisionReason::two_fixed_points;
    }
    return d;
}

/// Thrown when asked to construct a lattice that cannot exist.
class no_lattice_error : public domain_error {
public:
    explicit no_lattice_error(Decision d)
        : domain_error(message(d)), decision_(std::move(d)) {}
    Decision const& decision() const noexcept { return decision_; }

private:
    static std::string message(Decision const& d) {
        std::string s = "no lattice makes this map an endomorphism: it has the proper cycle";
        for (element x : d.proper_cycle) s += " " + std::to_string(x);
        s += " but " + std::to_string(d.fixed_points.size()) +
             " fixed point(s); the join and the meet of a proper cycle are two distinct fixed points";
        return s;
    }
    Decision decision_;
};

enum class ConstructionMode { repaired, literal, chain };

inline std::string_view to_string(ConstructionMode m) {
    switch (m) {
    case ConstructionMode::repaired: return "repaired";
    case ConstructionMode::literal: return "paper-literal";
    case ConstructionMode::chain: return "chain";
    }
    return "?";
}

struct ComponentChains {
    std::size_t component = 0;
    std::vector<std::vector<element>> classes;  // class i, ascending
};

/// How an order was assembled.
struct ConstructionTrace {
    element hub_low = no_element;   // p
    element hub_high = no_element;  // q
    std::vector<std::vector<element>> blocks;  // R* layout, lowest block first
    std::vector<element> acyclic_order;        // R* ascending
    std::vector<ComponentChains> components;
    std::size_t lower_glue_pairs = 0;  // |P|
    std::size_t upper_glue_pairs = 0;  // |Q|
};

struct LatticeResult {
    PartialOrder order;
    LatticeCertificate certificate;
    ConstructionTrace trace;
    ConstructionMode mode = ConstructionMode::repaired;

    bool verified() const noexcept {
        return certificate.is_lattice && certificate.is_endomorphism;
    }
};

namespace detail {

// R* ∪ rho ∪ P ∪ Q. `acyclic` relates only A* elements, `cyclic` only A0.
inline Relation glue(ComponentAnalysis const& a, Relation const& acyclic, Relation const& cyclic,
                     element p, element q, ConstructionTrace& trace) {
    Relation r = acyclic;
    r |= cyclic;
    r.add_reflexive();
    trace.lower_glue_pairs = trace.upper_glue_pairs = 0;
    for (element u : a.acyclic_part) {
        if (acyclic(u, p)) {
            for (element x : a.cyclic_part) r.set(u, x);
            trace.lower_glue_pairs += a.cyclic_part.size();
        }
        if (acyclic(q, u)) {
            for (element y : a.cyclic_part) r.set(y, u);
            trace.upper_glue_pairs += a.cyclic_part.size();
        }
    }
    return r;
}

inline Relation class_chains(FunctionTable const& f, ComponentAnalysis const& a,
                             ConstructionTrace& trace) {
    Relation rho = Relation::identity(f.size());
    for (std::size_t c = 0; c < a.component_count(); ++c) {
        if (a.period[c] < 2) continue;
        auto classes = component_order(f, a, c);
        add_chains(rho, classes);
        trace.components.push_back({c, std::move(classes)});
    }
    return rho;
}

// Splits R* into [.. p], (p, q), [q ..].
inline std::vector<std::vector<element>> hub_blocks(std::span<element const> ascending, element p,
                                                    element q) {
    std::vector<std::vector<element>> blocks(3);
    std::size_t stage = 0;
    for (element u : ascending) {
        if (stage == 1 && u == q) stage = 2;
        blocks[stage].push_back(u);
        if (stage == 0 && u == p) stage = 1;
    }
    return blocks;
}

inline LatticeResult finish(FunctionTable const& f, Relation r, ConstructionMode mode,
                            ConstructionTrace trace, bool must_verify) {
    if (Verdict v = check_partial_order(r); !v)
        throw verification_error("assembled relation is not a partial order: " + v.describe());
    PartialOrder order = PartialOrder::from(std::move(r));
    LatticeCertificate cert = certify(f, order);
    LatticeResult result{std::move(order), std::move(cert), std::move(trace), mode};
    if (must_verify && !result.verified()) {
        std::string why = "constructed order failed verification: ";
        if (!result.certificate.is_lattice) {
            why += "no lub or glb for a pair";
        } else {
            for (auto const& law : result.certificate.law_report)
                if (!law.passed) why += law.name + " ";
        }
        throw verification_error(why);
    }
    return result;
}

} // namespace detail

/// Builds and verifies a lattice on which f is an endomorphism.
///
/// Without proper cycles the result is a chain. Otherwise the hubs are
/// the two smallest fixed points and the pieces are glued with the
/// basin-pinned R*. Throws no_lattice_error when decide(f) is negative
/// and verification_error if the result does not check out.
inline LatticeResult construct(FunctionTable const& f) {
    Decision const d = decide(f);
    if (!d.exists) throw no_lattice_error(d);

    ComponentAnalysis const a = components(f);
    ConstructionTrace trace;
    bool const hubs = a.fixed_points.size() >= 2;
    AcyclicChain chain = hubs ? acyclic_linear_extension(f, a, a.fixed_points[0], a.fixed_points[1])
                              : acyclic_chain(f, a);
    if (hubs) {
        trace.hub_low = a.fixed_points[0];
        trace.hub_high = a.fixed_points[1];
    }
    trace.blocks = chain.blocks;
    trace.acyclic_order = chain.order;
    Relation const rstar = Relation::chain(f.size(), chain.order);

    if (!has_proper_cycle(a)) return detail::finish(f, rstar, ConstructionMode::chain, std::move(trace), true);

    Relation const rho = detail::class_chains(f, a, trace);
    Relation r = detail::glue(a, rstar, rho, trace.hub_low, trace.hub_high, trace);
    return detail::finish(f, std::move(r), ConstructionMode::repaired, std::move(trace), true);
}

/// The unpinned assembly from a caller-chosen R* (ascending listing of A*).
///
/// The hubs are the two smallest fixed points, named p and q in the
/// order R* lists them. The result is certified but not required to
/// pass: a failing endomorphism law is reported in the certificate.
inline LatticeResult construct_paper_literal(FunctionTable const& f, std::span<element const> rstar) {
    ComponentAnalysis const a = components(f);
    if (!has_proper_cycle(a) || a.fixed_points.size() < 2)
        throw domain_error("assembly needs a proper cycle and at least two fixed points");

    std::vector<bool> seen(f.size(), false);
    for (element u : rstar) {
        if (u >= f.size()) throw input_error("R* element " + std::to_string(u) + " out of range");
        if (a.in_cyclic_part(u))
            throw input_error("R* element " + std::to_string(u) + " lies on a proper-cycle component");
        if (seen[u]) throw input_error("R* lists " + std::to_string(u) + " twice");
        seen[u] = true;
    }
    if (rstar.size() != a.acyclic_part.size())
        throw input_error("R* must list every element of the acyclic part exactly once");

    Relation const linear = Relation::chain(f.size(), rstar);
    if (Verdict v = is_monotone(f, linear); !v)
        throw input_error("map is not monotone on R*: " + v.describe());

    element p = a.fixed_points[0], q = a.fixed_points[1];
    if (linear(q, p)) std::swap(p, q);

    ConstructionTrace trace;
    trace.hub_low = p;
    trace.hub_high = q;
    trace.acyclic_order.assign(rstar.begin(), rstar.end());
    trace.blocks = detail::hub_blocks(rstar, p, q);
    Relation const rho = detail::class_chains(f, a, trace);
    Relation r = detail::glue(a, linear, rho, p, q, trace);
    return detail::finish(f, std::move(r), ConstructionMode::literal, std::move(trace), false);
}

struct BaseAttempt {
    element hub_low = no_element;
    element hub_high = no_element;
    std::string failure;
    std::vector<element> witness;
};

/// Result of extending a caller-supplied order. `result` is set only
/// when a fully verified lattice containing the base order was found.
struct BaseConstruction {
    std::optional<LatticeResult> result;
    std::vector<BaseAttempt> attempts;

    bool ok() const noexcept { return result.has_value(); }
};

/// Extends the partial order `base` to a lattice on which f is an
/// endomorphism. construct(f) is returned when it already contains the
/// base; otherwise every ordered pair of fixed points is tried as hubs.
///
/// Each attempt puts basin(p) at or below p and basin(q) at or above q
/// in R*, so nothing strictly between the hubs maps onto one of them.
/// The base order is then extended on A* and inside each concurrency
/// class by orienting pairs, glued, and verified. Only a verified order that
/// contains `base` is returned; otherwise every failed attempt is listed.
inline BaseConstruction construct_with_base(FunctionTable const& f, Relation const& base) {
    std::size_t const n = f.size();
    if (base.size() != n) throw input_error("base order and map sizes differ");
    if (Verdict v = check_partial_order(base); !v)
        throw input_error("base relation is not a partial order: " + v.describe());
    if (Verdict v = is_monotone(f, base); !v)
        throw input_error("map is not monotone on the base order: " + v.describe());

    ComponentAnalysis const a = components(f);
    BaseConstruction out;

    // The default order, whenever it already honors the base.
    if (decide(f).exists) {
        LatticeResult res = construct(f);
        if (res.order.relation().contains(base)) {
            out.result = std::move(res);
            return out;
        }
    }

    if (!has_proper_cycle(a)) {
        ExtensionOutcome ext = szpilrajn_monotone(PartialOrder::from(base), f);
        if (!ext.ok()) {
            out.attempts.push_back({no_element, no_element, ext.failure, ext.witness});
            return out;
        }
        ConstructionTrace trace;
        std::vector<element> all(n);
        for (element x = 0; x < n; ++x) all[x] = x;
        trace.acyclic_order = sort_by_order(all, ext.order->relation());
        trace.blocks = {trace.acyclic_order};
        out.result = detail::finish(f, ext.order->relation(), ConstructionMode::chain, std::move(trace), true);
        return out;
    }
    if (a.fixed_points.size() < 2) throw no_lattice_error(decide(f));

    // The assembly never relates two different proper-cycle components.
    for (auto [x, y] : base.pairs()) {
        if (a.component_id[x] == a.component_id[y]) continue;
        if (a.in_cyclic_part(x) && a.in_cyclic_part(y)) {
            out.attempts.push_back({no_element, no_element,
                                    "base order relates two proper-cycle components", {x, y}});
            return out;
        }
    }

    auto same_component = [&](element x, element y) {
        return a.component_id[x] == a.component_id[y];
    };

    Relation rho_start = Relation::identity(n);
    for (auto [x, y] : base.pairs())
        if (a.in_cyclic_part(x) && same_component(x, y)) rho_start.set(x, y);
    ExtensionOutcome rho = orient_pairs_monotone(rho_start, f, [&](element x, element y) {
        return a.in_cyclic_part(x) && same_component(x, y) && a.class_index[x] == a.class_index[y];
    });
    if (!rho.ok()) {
        out.attempts.push_back({no_element, no_element, "class chains: " + rho.failure, rho.witness});
        return out;
    }

    Relation rstar_start = Relation::identity(n);
    for (auto [x, y] : base.pairs())
        if (!a.in_cyclic_part(x) && !a.in_cyclic_part(y)) rstar_start.set(x, y);

    for (element p : a.fixed_points) {
        for (element q : a.fixed_points) {
            if (p == q) continue;
            BaseAttempt attempt{p, q, {}, {}};
            std::size_t const cp = a.component_id[p], cq = a.component_id[q];

            Relation seeded = rstar_start;
            // Hub constraints; u < x with x in A0 needs u <= p, x < u needs q <= u.
            std::vector<Pair> wanted{{p, q}};
            for (element u : a.acyclic_part) {
                if (a.component_id[u] == cp) wanted.push_back({u, p});
                if (a.component_id[u] == cq) wanted.push_back({q, u});
            }
            for (auto [x, y] : base.pairs()) {
                if (!a.in_cyclic_part(x) && a.in_cyclic_part(y)) wanted.push_back({x, p});
                if (a.in_cyclic_part(x) && !a.in_cyclic_part(y)) wanted.push_back({q, y});
            }
            std::optional<Pair> conflict;
            for (auto [x, y] : wanted) {
                conflict = detail::insert_with_images(seeded, x, y, f);
                if (conflict) break;
            }
            if (conflict) {
                attempt.failure = "hub placement contradicts the base order";
                attempt.witness = {conflict->first, conflict->second};
                out.attempts.push_back(std::move(attempt));
                continue;
            }

            ExtensionOutcome rstar = orient_pairs_monotone(seeded, f, [&](element x, element y) {
                return !a.in_cyclic_part(x) && !a.in_cyclic_part(y);
            });
            if (!rstar.ok()) {
                attempt.failure = "linear extension of A*: " + rstar.failure;
                attempt.witness = rstar.witness;
                out.attempts.push_back(std::move(attempt));
                continue;
            }

            ConstructionTrace trace;
            trace.hub_low = p;
            trace.hub_high = q;
            trace.acyclic_order = sort_by_order(a.acyclic_part, rstar.order->relation());
            trace.blocks = detail::hub_blocks(trace.acyclic_order, p, q);
            for (std::size_t c = 0; c < a.component_count(); ++c) {
                if (a.period[c] < 2) continue;
                ComponentChains cc{c, a.classes(c)};
                for (auto& cls : cc.classes) cls = sort_by_order(cls, rho.order->relation());
                trace.components.push_back(std::move(cc));
            }

            Relation r = detail::glue(a, rstar.order->relation(), rho.order->relation(), p, q, trace);
            if (!r.contains(base)) {
                attempt.failure = "assembled order drops a base pair";
                out.attempts.push_back(std::move(attempt));
                continue;
            }
            try {
                LatticeResult res =
                    detail::finish(f, std::move(r), ConstructionMode::repaired, std::move(trace), false);
                if (res.verified()) {
                    out.result = std::move(res);
                    return out;
                }
                attempt.failure = res.certificate.is_lattice ? "map is not an endomorphism"
                                                             : "assembled order is not a lattice";
                for (auto const& law : res.certificate.law_report)
                    if (!law.passed) {
                        attempt.failure += " (" + law.name + ")";
                        attempt.witness = law.witness;
                        break;
                    }
                if (!res.certificate.is_lattice) attempt.witness = res.certificate.failing_pair;
            } catch (verification_error const& e) {
                attempt.failure = e.what();
            }
            out.attempts.push_back(std::move(attempt));
        }
    }
    return out;
}

/// Bottom, top, and k pairwise incomparable elements between them.
inline bool is_isomorphic_to_Mn(LatticeCertificate const& cert, std::size_t k) {
    detail::require_lattice(cert);
    if (cert.n != k + 2) return false;
    element bottom = 0, top = 0;
    for (element x = 1; x < cert.n; ++x) {
        bottom = cert.meet_of(bottom, x);
        top = cert.join_of(top, x);
    }
    if (bottom == top) return false;
    for (element x = 0; x < cert.n; ++x) {
        if (x == bottom || x == top) continue;
        for (element y = x + 1; y < cert.n; ++y) {
            if (y == bottom || y == top) continue;
            if (cert.join_of(x, y) != top || cert.meet_of(x, y) != bottom) return false;
        }
    }
    return true;
}

/// Join (meet) of a whole set of elements.
inline element join_all(LatticeCertificate const& cert, std::span<element const> xs) {
    element acc = xs.front();
    for (element x : xs) acc = cert.join_of(acc, x);
    return acc;
}
inline element meet_all(LatticeCertificate const& cert, std::span<element const> xs) {
    element acc = xs.front();
    for (element x : xs) acc = cert.meet_of(acc, x);
    return acc;
}

/// Structural checks every default construction must pass. Returns one
/// line per problem; empty means clean.
inline std::vector<std::string> audit(FunctionTable const& f, LatticeResult const& res) {
    std::vector<std::string> problems;
    ComponentAnalysis const a = components(f);
    LatticeCertificate const& cert = res.certificate;
    PartialOrder const& order = res.order;

    if (Verdict v = check_partial_order(order.relation()); !v)
        problems.push_back("not a partial order: " + v.describe());
    if (!cert.is_lattice) {
        problems.push_back("not a lattice");
        return problems;
    }
    if (Verdict v = is_endomorphism(f, cert); !v) problems.push_back(v.describe());

    for (element x = 0; x < f.size(); ++x)
        for (element y = x + 1; y < f.size(); ++y)
            if (is_prohibited(x, y, a) && order.comparable(x, y))
                problems.push_back("prohibited pair comparable: (" + std::to_string(x) + ", " +
                                   std::to_string(y) + ")");

    for (std::size_t c = 0; c < a.component_count(); ++c) {
        if (a.period[c] < 2) continue;
        auto const& cycle = a.cycle_elements[c];
        element const top = join_all(cert, cycle), bottom = meet_all(cert, cycle);
        if (top != res.trace.hub_high || bottom != res.trace.hub_low)
            problems.push_back("cycle through " + std::to_string(cycle.front()) +
                               " does not span the hubs");
        if (f(top) != top || f(bottom) != bottom)
            problems.push_back("cycle extremes are not fixed points");
    }

    if (res.mode == ConstructionMode::chain) {
        if (!order.is_total()) problems.push_back("chain mode produced a non-total order");
        if (Verdict v = is_monotone(f, order); !v) problems.push_back(v.describe());
        if (Verdict v = is_distributive(cert); !v) problems.push_back(v.describe());
    }
    return problems;
}

} // namespace endolat
