#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force ground truth on universes of at most six elements.
 *
 * Every labeled partial order is enumerated, the lattices among them are
 * kept with their join/meet tables, and a map is declared to admit a
 * lattice iff one of those tables makes it an endomorphism. Nothing here
 * depends on how decide() or construct() reach their answers.
 */

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "endolat/errors.hpp"
#include "endolat/funcgraph.hpp"
#include "endolat/lattice.hpp"
#include "endolat/order.hpp"

namespace endolat {

inline constexpr std::size_t oracle_max_size = 6;

namespace detail {

inline void require_oracle_size(std::size_t n) {
    if (n < 1 || n > oracle_max_size)
        throw domain_error("exhaustive enumeration supports 1 to " + std::to_string(oracle_max_size) +
                           " elements, got " + std::to_string(n));
}

// n <= 6 relations packed as bit x*n + y of a 64-bit mask.
struct SmallRelation {
    std::size_t n;
    std::uint64_t bits;

    std::uint64_t bit(std::size_t x, std::size_t y) const { return std::uint64_t{1} << (x * n + y); }
    bool test(std::size_t x, std::size_t y) const { return bits & bit(x, y); }

    // Adds x <= y and closes; the relation must already be transitive.
    void insert(std::size_t x, std::size_t y) {
        for (std::size_t a = 0; a < n; ++a) {
            if (!test(a, x)) continue;
            for (std::size_t b = 0; b < n; ++b)
                if (test(y, b)) bits |= bit(a, b);
        }
    }

    Relation to_relation() const {
        Relation r(n);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (test(x, y)) r.set(x, y);
        return r;
    }
};

inline std::uint64_t identity_bits(std::size_t n) {
    std::uint64_t bits = 0;
    for (std::size_t x = 0; x < n; ++x) bits |= std::uint64_t{1} << (x * n + x);
    return bits;
}

} // namespace detail

/// Every labeled partial order on n elements, each exactly once.
///
/// Pairs {i, j} are decided in lexicographic order: incomparable,
/// i < j, or j < i. Choosing a comparability closes the relation
/// transitively; a branch dies when the closure touches a pair already
/// decided incomparable. Pairs already forced by closure are skipped.
class PosetStream {
public:
    explicit PosetStream(std::size_t n) : n_(n) {
        detail::require_oracle_size(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) pairs_.push_back({i, j});
        stack_.push_back({0, 0, detail::identity_bits(n), 0});
    }

    std::size_t size() const noexcept { return n_; }

    /// The next poset, or nullopt once the stream is exhausted.
    std::optional<PartialOrder> next() {
        if (auto bits = next_bits()) return PartialOrder::from(detail::SmallRelation{n_, *bits}.to_relation());
        return std::nullopt;
    }

    /// Packed form of next(): bit x*n+y set iff x <= y.
    std::optional<std::uint64_t> next_bits() {
        while (!stack_.empty()) {
            Frame& fr = stack_.back();
            if (fr.pair == pairs_.size()) {
                std::uint64_t const out = fr.rel;
                stack_.pop_back();
                return out;
            }
            auto const [i, j] = pairs_[fr.pair];
            detail::SmallRelation rel{n_, fr.rel};
            bool const forced = rel.test(i, j) || rel.test(j, i);
            if (forced) {
                if (fr.choice++ == 0) {
                    push(fr.pair + 1, fr.rel, fr.incomparable);
                } else {
                    stack_.pop_back();
                }
                continue;
            }
            int const choice = fr.choice++;
            std::size_t const next_pair = fr.pair + 1;
            std::uint64_t const incomparable = fr.incomparable;
            if (choice == 0) {
                push(next_pair, fr.rel, incomparable | rel.bit(i, j));
            } else if (choice == 1 || choice == 2) {
                if (choice == 1)
                    rel.insert(i, j);
                else
                    rel.insert(j, i);
                if (respects(rel, incomparable)) push(next_pair, rel.bits, incomparable);
            } else {
                stack_.pop_back();
            }
        }
        return std::nullopt;
    }

private:
    struct Frame {
        std::size_t pair;
        int choice;
        std::uint64_t rel;
        std::uint64_t incomparable;  // bit i*n+j for pairs decided incomparable
    };

    void push(std::size_t pair, std::uint64_t rel, std::uint64_t incomparable) {
        stack_.push_back({pair, 0, rel, incomparable});
    }

    bool respects(detail::SmallRelation const& rel, std::uint64_t incomparable) const {
        for (auto [i, j] : pairs_)
            if ((incomparable & rel.bit(i, j)) && (rel.test(i, j) || rel.test(j, i))) return false;
        return true;
    }

    std::size_t n_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::vector<Frame> stack_;
};

inline std::vector<PartialOrder> enumerate_posets(std::size_t n) {
    std::vector<PartialOrder> out;
    PosetStream stream(n);
    while (auto p = stream.next()) out.push_back(std::move(*p));
    return out;
}

inline std::size_t count_posets(std::size_t n) {
    PosetStream stream(n);
    std::size_t count = 0;
    while (stream.next_bits()) ++count;
    return count;
}

/// Independent count: every poset has a linear extension, so it is the
/// image under some relabeling of a transitively closed subset of the
/// pairs i < j. Close every such subset, apply every permutation, and
/// count distinct results.
inline std::size_t count_posets_by_relabeling(std::size_t n) {
    if (n < 1 || n > 5) throw domain_error("relabeling count supports 1 to 5 elements");
    std::vector<std::pair<std::size_t, std::size_t>> upper;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) upper.push_back({i, j});

    std::vector<std::size_t> perm(n);
    std::unordered_set<std::uint64_t> seen;
    std::unordered_set<std::uint64_t> natural;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << upper.size()); ++subset) {
        // Warshall closure on a plain boolean matrix.
        bool m[5][5] = {};
        for (std::size_t x = 0; x < n; ++x) m[x][x] = true;
        for (std::size_t k = 0; k < upper.size(); ++k)
            if (subset >> k & 1u) m[upper[k].first][upper[k].second] = true;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m[i][j] = m[i][j] || (m[i][k] && m[k][j]);
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m[i][j]) key |= std::uint64_t{1} << (i * n + j);
        if (!natural.insert(key).second) continue;

        std::iota(perm.begin(), perm.end(), std::size_t{0});
        do {
            std::uint64_t relabeled = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (m[i][j]) relabeled |= std::uint64_t{1} << (perm[i] * n + perm[j]);
            seen.insert(relabeled);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return seen.size();
}

struct CatalogEntry {
    PartialOrder order;
    LatticeCertificate certificate;
    bool distributive = false;
};

/// All labeled lattices on n elements with their tables.
class LatticeCatalog {
public:
    explicit LatticeCatalog(std::size_t n) : n_(n) {
        PosetStream stream(n);
        while (auto p = stream.next()) {
            ++posets_;
            LatticeCertificate cert = lattice_tables(*p);
            if (!cert.is_lattice) continue;
            bool const dist = is_distributive(cert).ok;
            lattices_.push_back({std::move(*p), std::move(cert), dist});
        }
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t poset_count() const noexcept { return posets_; }
    std::vector<CatalogEntry> const& lattices() const noexcept { return lattices_; }

private:
    std::size_t n_;
    std::size_t posets_ = 0;
    std::vector<CatalogEntry> lattices_;
};

/// Shared catalog per size, built on first use.
inline LatticeCatalog const& lattice_catalog(std::size_t n) {
    detail::require_oracle_size(n);
    static std::array<std::unique_ptr<LatticeCatalog>, oracle_max_size + 1> cache;
    static std::mutex guard;
    std::lock_guard lock(guard);
    if (!cache[n]) cache[n] = std::make_unique<LatticeCatalog>(n);
    return *cache[n];
}

namespace detail {

inline bool preserves_tables(FunctionTable const& f, LatticeCertificate const& cert) {
    for (element x = 0; x < cert.n; ++x)
        for (element y = x + 1; y < cert.n; ++y)
            if (f(cert.join_of(x, y)) != cert.join_of(f(x), f(y)) ||
                f(cert.meet_of(x, y)) != cert.meet_of(f(x), f(y)))
                return false;
    return true;
}

} // namespace detail

/// Indices into lattice_catalog(n) of every lattice on which f is an endomorphism.
inline std::vector<std::size_t> oracle_witnesses(FunctionTable const& f) {
    auto const& cat = lattice_catalog(f.size());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cat.lattices().size(); ++i)
        if (detail::preserves_tables(f, cat.lattices()[i].certificate)) out.push_back(i);
    return out;
}

struct OracleAnswer {
    bool exists = false;
    CatalogEntry const* witness = nullptr;  // first witness in enumeration order
};

inline OracleAnswer oracle_decide(FunctionTable const& f) {
    for (auto const& entry : lattice_catalog(f.size()).lattices())
        if (detail::preserves_tables(f, entry.certificate)) return {true, &entry};
    return {};
}

/// Some distributive lattice makes f an endomorphism.
inline bool distributive_exists(FunctionTable const& f) {
    for (auto const& entry : lattice_catalog(f.size()).lattices())
        if (entry.distributive && detail::preserves_tables(f, entry.certificate)) return true;
    return false;
}

/// Calls fn on every self-map of {0..n-1}, in base-n counting order.
template <typename Fn>
void for_each_map(std::size_t n, Fn&& fn) {
    std::vector<element> image(n, 0);
    while (true) {
        fn(FunctionTable(image));
        std::size_t i = 0;
        while (i < n && ++image[i] == n) image[i++] = 0;
        if (i == n) return;
    }
}

inline std::vector<FunctionTable> sample_maps(std::size_t n, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<element> pick(0, n - 1);
    std::vector<FunctionTable> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<element> image(n);
        for (auto& x : image) x = pick(rng);
        out.emplace_back(std::move(image));
    }
    return out;
}

struct SweepReport {
    std::size_t n = 0;
    std::size_t maps = 0;
    std::size_t posets = 0;
    std::size_t lattices = 0;
    std::size_t exists = 0;
    std::vector<std::vector<element>> decision_mismatches;
    std::vector<std::vector<element>> construction_failures;
    std::vector<std::string> failure_details;

    bool clean() const noexcept {
        return decision_mismatches.empty() && construction_failures.empty();
    }
};

/// decide() against the oracle, and construct() + audit() on every
/// positive map. `sample == 0` sweeps all n^n maps; otherwise `sample`
/// maps are drawn with `seed`.
inline SweepReport sweep_compare(std::size_t n, std::size_t sample = 0, std::uint64_t seed = 20140301) {
    detail::require_oracle_size(n);
    auto const& cat = lattice_catalog(n);
    SweepReport rep;
    rep.n = n;
    rep.posets = cat.poset_count();
    rep.lattices = cat.lattices().size();

    auto check = [&](FunctionTable const& f) {
        ++rep.maps;
        std::vector<element> const image(f.image().begin(), f.image().end());
        bool const expected = oracle_decide(f).exists;
        bool const got = decide(f).exists;
        if (expected != got) rep.decision_mismatches.push_back(image);
        if (!got) return;
        ++rep.exists;
        try {
            auto problems = audit(f, construct(f));
            if (!problems.empty()) {
                rep.construction_failures.push_back(image);
                rep.failure_details.push_back(problems.front());
            }
        } catch (std::exception const& e) {
            rep.construction_failures.push_back(image);
            rep.failure_details.push_back(e.what());
        }
    };

    if (sample == 0)
        for_each_map(n, check);
    else
        for (auto const& f : sample_maps(n, sample, seed)) check(f);
    return rep;
}

} // namespace endolat
