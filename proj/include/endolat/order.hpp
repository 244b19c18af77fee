#pragma once

/**
 * @file order.hpp
 * @brief Partial-order kernel: axiom checks, closure, monotonicity,
 *        join/meet tables and the lattice certificate.
 *
 * Relations are dense bit matrices; rel(x, y) means x <= y.
 */

#include <algorithm>
#include <bit>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "endolat/bitmatrix.hpp"
#include "endolat/errors.hpp"
#include "endolat/funcgraph.hpp"

namespace endolat {

inline constexpr element no_element = std::numeric_limits<element>::max();

using Pair = std::pair<element, element>;

/// Outcome of a law or axiom check. Carries the failing law and a
/// witness tuple when the check does not pass.
struct Verdict {
    bool ok = true;
    std::string law;
    std::vector<element> witness;

    explicit operator bool() const noexcept { return ok; }

    static Verdict pass() { return {}; }
    static Verdict fail(std::string law, std::vector<element> witness) {
        return {false, std::move(law), std::move(witness)};
    }

    std::string describe() const {
        if (ok) return "ok";
        std::string s = law + " fails at (";
        for (std::size_t i = 0; i < witness.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(witness[i]);
        }
        return s + ")";
    }
};

/// A binary relation on {0, ..., n-1}.
class Relation {
public:
    Relation() = default;
    explicit Relation(std::size_t n) : bits_(n) {}

    static Relation identity(std::size_t n) {
        Relation r(n);
        for (element x = 0; x < n; ++x) r.set(x, x);
        return r;
    }

    static Relation from_rows(std::vector<std::vector<bool>> const& rows) {
        Relation r(rows.size());
        for (std::size_t x = 0; x < rows.size(); ++x) {
            if (rows[x].size() != rows.size())
                throw input_error("relation matrix is not square: row " + std::to_string(x) +
                                  " has " + std::to_string(rows[x].size()) + " entries, expected " +
                                  std::to_string(rows.size()));
            for (std::size_t y = 0; y < rows.size(); ++y)
                if (rows[x][y]) r.set(x, y);
        }
        return r;
    }

    static Relation from_pairs(std::size_t n, std::span<Pair const> pairs) {
        Relation r(n);
        for (auto [x, y] : pairs) {
            if (x >= n || y >= n)
                throw input_error("pair (" + std::to_string(x) + ", " + std::to_string(y) +
                                  ") out of range");
            r.set(x, y);
        }
        return r;
    }

    /// The linear order listing ascends through `chain`; other elements
    /// are related only to themselves.
    static Relation chain(std::size_t n, std::span<element const> ascending) {
        Relation r = identity(n);
        for (std::size_t i = 0; i < ascending.size(); ++i)
            for (std::size_t j = i; j < ascending.size(); ++j) r.set(ascending[i], ascending[j]);
        return r;
    }

    std::size_t size() const noexcept { return bits_.size(); }
    bool operator()(element x, element y) const noexcept { return bits_.test(x, y); }
    bool test(element x, element y) const noexcept { return bits_.test(x, y); }
    void set(element x, element y, bool v = true) noexcept { bits_.set(x, y, v); }

    void add_reflexive() noexcept {
        for (element x = 0; x < size(); ++x) set(x, x);
    }

    std::vector<Pair> pairs() const {
        std::vector<Pair> out;
        for (element x = 0; x < size(); ++x)
            bits_.for_each_in_row(x, [&](element y) { out.emplace_back(x, y); });
        return out;
    }

    std::size_t pair_count() const noexcept {
        std::size_t total = 0;
        for (element x = 0; x < size(); ++x) total += bits_.row_count(x);
        return total;
    }

    /// Every pair of `other` is also in this relation.
    bool contains(Relation const& other) const noexcept {
        for (element x = 0; x < size(); ++x)
            if (!bits_.subset_of(other.bits_.row(x), bits_.row(x))) return false;
        return true;
    }

    Relation transposed() const {
        Relation t(size());
        for (element x = 0; x < size(); ++x)
            bits_.for_each_in_row(x, [&](element y) { t.set(y, x); });
        return t;
    }

    Relation& operator|=(Relation const& o) {
        for (element x = 0; x < size(); ++x) bits_.or_into(bits_.row(x), o.bits_.row(x));
        return *this;
    }

    BitMatrix const& matrix() const noexcept { return bits_; }
    BitMatrix& matrix() noexcept { return bits_; }

    bool operator==(Relation const&) const = default;

private:
    BitMatrix bits_;
};

/// Reflexivity, antisymmetry and transitivity, in that order of reporting.
inline Verdict check_partial_order(Relation const& r) {
    std::size_t const n = r.size();
    for (element x = 0; x < n; ++x)
        if (!r(x, x)) return Verdict::fail("reflexivity", {x});
    for (element x = 0; x < n; ++x)
        for (element y = x + 1; y < n; ++y)
            if (r(x, y) && r(y, x)) return Verdict::fail("antisymmetry", {x, y});
    BitMatrix const& m = r.matrix();
    for (element x = 0; x < n; ++x) {
        std::optional<Verdict> bad;
        m.for_each_in_row(x, [&](element y) {
            if (bad || m.subset_of(m.row(y), m.row(x))) return;
            for (element z = 0; z < n; ++z)
                if (r(y, z) && !r(x, z)) {
                    bad = Verdict::fail("transitivity", {x, y, z});
                    return;
                }
        });
        if (bad) return *bad;
    }
    return Verdict::pass();
}

inline Verdict check_partial_order(std::vector<std::vector<bool>> const& rows) {
    return check_partial_order(Relation::from_rows(rows));
}

/// Smallest transitive superset (Warshall on packed rows).
inline Relation transitive_closure(Relation r) {
    BitMatrix& m = r.matrix();
    for (element k = 0; k < r.size(); ++k)
        for (element i = 0; i < r.size(); ++i)
            if (m.test(i, k)) m.or_row(i, k);
    return r;
}

/// A relation known to satisfy the partial-order axioms.
class PartialOrder {
public:
    PartialOrder() = default;

    static PartialOrder from(Relation r) {
        if (Verdict v = check_partial_order(r); !v)
            throw domain_error("not a partial order: " + v.describe());
        return PartialOrder(std::move(r));
    }
    static PartialOrder identity(std::size_t n) { return PartialOrder(Relation::identity(n)); }
    static PartialOrder chain(std::span<element const> ascending) {
        return from(Relation::chain(ascending.size(), ascending));
    }

    std::size_t size() const noexcept { return rel_.size(); }
    bool leq(element x, element y) const noexcept { return rel_(x, y); }
    bool less(element x, element y) const noexcept { return x != y && rel_(x, y); }
    bool comparable(element x, element y) const noexcept { return rel_(x, y) || rel_(y, x); }
    Relation const& relation() const noexcept { return rel_; }

    bool is_total() const noexcept {
        for (element x = 0; x < size(); ++x)
            for (element y = x + 1; y < size(); ++y)
                if (!comparable(x, y)) return false;
        return true;
    }

    bool operator==(PartialOrder const&) const = default;

private:
    explicit PartialOrder(Relation r) : rel_(std::move(r)) {}
    Relation rel_;
};

/// x <= y implies f(x) <= f(y).
inline Verdict is_monotone(FunctionTable const& f, Relation const& r) {
    if (f.size() != r.size())
        throw input_error("map has " + std::to_string(f.size()) + " elements, order has " +
                          std::to_string(r.size()));
    for (element x = 0; x < r.size(); ++x) {
        std::optional<Verdict> bad;
        r.matrix().for_each_in_row(x, [&](element y) {
            if (!bad && !r(f(x), f(y))) bad = Verdict::fail("monotonicity", {x, y});
        });
        if (bad) return *bad;
    }
    return Verdict::pass();
}
inline Verdict is_monotone(FunctionTable const& f, PartialOrder const& p) {
    return is_monotone(f, p.relation());
}

struct LawCheck {
    std::string name;
    bool passed = true;
    bool skipped = false;
    std::vector<element> witness;
};

/// Join/meet tables of an order plus the results of the law checks run on them.
struct LatticeCertificate {
    std::size_t n = 0;
    std::vector<element> join;  // n*n, no_element where no lub exists
    std::vector<element> meet;
    bool is_lattice = false;
    bool is_endomorphism = false;
    std::vector<element> failing_pair;  // first pair without lub or glb
    std::vector<LawCheck> law_report;

    element join_of(element x, element y) const { return join[x * n + y]; }
    element meet_of(element x, element y) const { return meet[x * n + y]; }
    bool leq(element x, element y) const { return join_of(x, y) == y; }

    LawCheck const* law(std::string_view name) const {
        for (auto const& l : law_report)
            if (l.name == name) return &l;
        return nullptr;
    }
};

namespace detail {

inline std::size_t first_common_bit(BitMatrix const& m, element a, element b) {
    BitMatrix::word const* ra = m.row(a);
    BitMatrix::word const* rb = m.row(b);
    for (std::size_t i = 0; i < m.words_per_row(); ++i)
        if (BitMatrix::word w = ra[i] & rb[i])
            return i * BitMatrix::word_bits + static_cast<std::size_t>(std::countr_zero(w));
    return no_element;
}

inline std::size_t last_common_bit(BitMatrix const& m, element a, element b) {
    BitMatrix::word const* ra = m.row(a);
    BitMatrix::word const* rb = m.row(b);
    for (std::size_t i = m.words_per_row(); i-- > 0;)
        if (BitMatrix::word w = ra[i] & rb[i])
            return i * BitMatrix::word_bits + (BitMatrix::word_bits - 1) -
                   static_cast<std::size_t>(std::countl_zero(w));
    return no_element;
}

inline void require_lattice(LatticeCertificate const& cert) {
    if (!cert.is_lattice) throw domain_error("operation requires a lattice");
}

} // namespace detail

/// Least upper bounds and greatest lower bounds for every pair.
///
/// Elements are renumbered along a linear extension (ascending down-set
/// size). A least element of any set of upper bounds must then be the
/// first set bit of the intersected up-rows, so each pair costs one
/// scan plus one subset test.
inline LatticeCertificate lattice_tables(PartialOrder const& p) {
    std::size_t const n = p.size();
    Relation const& r = p.relation();
    Relation const down = r.transposed();

    std::vector<element> by_pos(n);
    std::iota(by_pos.begin(), by_pos.end(), element{0});
    std::vector<std::size_t> height(n);
    for (element x = 0; x < n; ++x) height[x] = down.matrix().row_count(x);
    std::stable_sort(by_pos.begin(), by_pos.end(),
                     [&](element a, element b) { return height[a] < height[b]; });
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[by_pos[i]] = i;

    BitMatrix up_p(n), down_p(n);
    for (element x = 0; x < n; ++x) {
        r.matrix().for_each_in_row(x, [&](element y) {
            up_p.set(x, pos[y]);
            down_p.set(y, pos[x]);
        });
    }

    LatticeCertificate cert;
    cert.n = n;
    cert.join.assign(n * n, no_element);
    cert.meet.assign(n * n, no_element);
    cert.is_lattice = true;
    for (element x = 0; x < n; ++x) {
        for (element y = x; y < n; ++y) {
            element j = no_element, m = no_element;
            if (std::size_t b = detail::first_common_bit(up_p, x, y); b != no_element) {
                element cand = by_pos[b];
                if (up_p.and_subset_of(up_p.row(x), up_p.row(y), up_p.row(cand))) j = cand;
            }
            if (std::size_t b = detail::last_common_bit(down_p, x, y); b != no_element) {
                element cand = by_pos[b];
                if (down_p.and_subset_of(down_p.row(x), down_p.row(y), down_p.row(cand))) m = cand;
            }
            cert.join[x * n + y] = cert.join[y * n + x] = j;
            cert.meet[x * n + y] = cert.meet[y * n + x] = m;
            if ((j == no_element || m == no_element) && cert.is_lattice) {
                cert.is_lattice = false;
                cert.failing_pair = {x, y};
            }
        }
    }
    return cert;
}

/// f(x v y) = f(x) v f(y) and f(x ^ y) = f(x) ^ f(y) for all pairs.
inline Verdict is_endomorphism(FunctionTable const& f, LatticeCertificate const& cert) {
    detail::require_lattice(cert);
    if (f.size() != cert.n) throw input_error("map and lattice sizes differ");
    for (element x = 0; x < cert.n; ++x)
        for (element y = x + 1; y < cert.n; ++y) {
            if (f(cert.join_of(x, y)) != cert.join_of(f(x), f(y)))
                return Verdict::fail("endomorphism-join", {x, y});
            if (f(cert.meet_of(x, y)) != cert.meet_of(f(x), f(y)))
                return Verdict::fail("endomorphism-meet", {x, y});
        }
    return Verdict::pass();
}

inline Verdict check_commutativity(LatticeCertificate const& cert) {
    detail::require_lattice(cert);
    for (element x = 0; x < cert.n; ++x)
        for (element y = 0; y < cert.n; ++y)
            if (cert.join_of(x, y) != cert.join_of(y, x) || cert.meet_of(x, y) != cert.meet_of(y, x))
                return Verdict::fail("commutativity", {x, y});
    return Verdict::pass();
}

inline Verdict check_associativity(LatticeCertificate const& cert) {
    detail::require_lattice(cert);
    std::size_t const n = cert.n;
    for (element x = 0; x < n; ++x)
        for (element y = 0; y < n; ++y) {
            element const xy_j = cert.join_of(x, y), xy_m = cert.meet_of(x, y);
            for (element z = 0; z < n; ++z) {
                if (cert.join_of(xy_j, z) != cert.join_of(x, cert.join_of(y, z)) ||
                    cert.meet_of(xy_m, z) != cert.meet_of(x, cert.meet_of(y, z)))
                    return Verdict::fail("associativity", {x, y, z});
            }
        }
    return Verdict::pass();
}

/// (x v y) ^ y = y and (x ^ y) v y = y.
inline Verdict check_absorption(LatticeCertificate const& cert) {
    detail::require_lattice(cert);
    for (element x = 0; x < cert.n; ++x)
        for (element y = 0; y < cert.n; ++y)
            if (cert.meet_of(cert.join_of(x, y), y) != y || cert.join_of(cert.meet_of(x, y), y) != y)
                return Verdict::fail("absorption", {x, y});
    return Verdict::pass();
}

/// x ^ (y v z) = (x ^ y) v (x ^ z) for all triples.
inline Verdict is_distributive(LatticeCertificate const& cert) {
    detail::require_lattice(cert);
    std::size_t const n = cert.n;
    for (element x = 0; x < n; ++x)
        for (element y = 0; y < n; ++y)
            for (element z = 0; z < n; ++z)
                if (cert.meet_of(x, cert.join_of(y, z)) !=
                    cert.join_of(cert.meet_of(x, y), cert.meet_of(x, z)))
                    return Verdict::fail("distributivity", {x, y, z});
    return Verdict::pass();
}

/// x <= z implies x v (y ^ z) = (x v y) ^ z.
inline Verdict is_modular(LatticeCertificate const& cert) {
    detail::require_lattice(cert);
    std::size_t const n = cert.n;
    for (element x = 0; x < n; ++x)
        for (element z = 0; z < n; ++z) {
            if (!cert.leq(x, z)) continue;
            for (element y = 0; y < n; ++y)
                if (cert.join_of(x, cert.meet_of(y, z)) != cert.meet_of(cert.join_of(x, y), z))
                    return Verdict::fail("modularity", {x, y, z});
        }
    return Verdict::pass();
}

struct CertifyOptions {
    /// Universes above this size skip the O(n^3) associativity check.
    std::size_t triple_law_limit = 400;
};

/// Join/meet tables plus every law check, for f acting on the order p.
inline LatticeCertificate certify(FunctionTable const& f, PartialOrder const& p,
                                  CertifyOptions const& opts = {}) {
    LatticeCertificate cert = lattice_tables(p);
    if (!cert.is_lattice) return cert;

    auto record = [&](char const* name, Verdict const& v) {
        cert.law_report.push_back({name, v.ok, false, v.witness});
    };
    record("commutativity", check_commutativity(cert));
    if (cert.n <= opts.triple_law_limit)
        record("associativity", check_associativity(cert));
    else
        cert.law_report.push_back({"associativity", true, true, {}});
    record("absorption", check_absorption(cert));

    if (f.size() != cert.n) throw input_error("map and lattice sizes differ");
    Verdict join_part = Verdict::pass(), meet_part = Verdict::pass();
    for (element x = 0; x < cert.n && (join_part.ok || meet_part.ok); ++x)
        for (element y = x + 1; y < cert.n; ++y) {
            if (join_part.ok && f(cert.join_of(x, y)) != cert.join_of(f(x), f(y)))
                join_part = Verdict::fail("endomorphism-join", {x, y});
            if (meet_part.ok && f(cert.meet_of(x, y)) != cert.meet_of(f(x), f(y)))
                meet_part = Verdict::fail("endomorphism-meet", {x, y});
        }
    record("endomorphism-join", join_part);
    record("endomorphism-meet", meet_part);
    cert.is_endomorphism = join_part.ok && meet_part.ok;
    return cert;
}

/// Pairs x < y with nothing strictly between them.
inline std::vector<Pair> hasse_covers(PartialOrder const& p) {
    std::size_t const n = p.size();
    Relation const& r = p.relation();
    Relation strict_down = r.transposed();
    for (element x = 0; x < n; ++x) strict_down.set(x, x, false);

    std::vector<Pair> covers;
    std::vector<BitMatrix::word> strict_up(r.matrix().words_per_row());
    for (element x = 0; x < n; ++x) {
        std::copy_n(r.matrix().row(x), strict_up.size(), strict_up.begin());
        strict_up[x / BitMatrix::word_bits] &= ~(BitMatrix::word{1} << (x % BitMatrix::word_bits));
        r.matrix().for_each_in_row(x, [&](element y) {
            if (y == x) return;
            // y covers x iff nothing strictly below y is strictly above x.
            BitMatrix::word const* below_y = strict_down.matrix().row(y);
            for (std::size_t i = 0; i < strict_up.size(); ++i)
                if (below_y[i] & strict_up[i]) return;
            covers.emplace_back(x, y);
        });
    }
    return covers;
}

/// The relation {(x, x v y)} read back from a join table.
inline Relation order_from_joins(LatticeCertificate const& cert) {
    detail::require_lattice(cert);
    Relation r(cert.n);
    for (element x = 0; x < cert.n; ++x)
        for (element y = 0; y < cert.n; ++y) r.set(x, cert.join_of(x, y));
    return r;
}

} // namespace endolat
