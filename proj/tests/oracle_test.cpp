#include <gtest/gtest.h>

#include <set>

#include "brute.hpp"
#include "endolat/oracle.hpp"

using namespace endolat;
using V = std::vector<element>;

TEST(PosetCount, KnownValues) {
    std::size_t const expected[] = {0, 1, 3, 19, 219, 4231};
    for (std::size_t n = 1; n <= 5; ++n) {
        EXPECT_EQ(count_posets(n), expected[n]) << n;
        EXPECT_EQ(count_posets_by_relabeling(n), expected[n]) << n;
    }
    EXPECT_EQ(count_posets(6), 130023u);
    EXPECT_THROW(count_posets(0), domain_error);
    EXPECT_THROW(count_posets(7), domain_error);
    EXPECT_THROW(count_posets_by_relabeling(6), domain_error);
}

TEST(PosetStream, EveryOutputIsADistinctPartialOrder) {
    std::set<std::vector<bool>> seen;
    PosetStream stream(4);
    while (auto p = stream.next()) {
        ASSERT_TRUE(check_partial_order(p->relation()));
        std::vector<bool> key;
        for (element x = 0; x < 4; ++x)
            for (element y = 0; y < 4; ++y) key.push_back(p->leq(x, y));
        ASSERT_TRUE(seen.insert(key).second);
    }
    EXPECT_EQ(seen.size(), 219u);
    EXPECT_FALSE(stream.next());
}

TEST(LatticeCatalog, LabeledLatticeCounts) {
    // n! / |Aut| summed over the unlabeled lattices.
    EXPECT_EQ(lattice_catalog(1).lattices().size(), 1u);
    EXPECT_EQ(lattice_catalog(2).lattices().size(), 2u);
    EXPECT_EQ(lattice_catalog(3).lattices().size(), 6u);
    EXPECT_EQ(lattice_catalog(4).lattices().size(), 36u);  // 24 chains, 12 squares
    // chain 120, N5 120, square with a new top 60, with a new bottom 60, M3 20
    EXPECT_EQ(lattice_catalog(5).lattices().size(), 380u);
    EXPECT_EQ(lattice_catalog(5).poset_count(), 4231u);
    EXPECT_EQ(lattice_catalog(6).lattices().size(), 6390u);
}

TEST(Oracle, Examples) {
    EXPECT_TRUE(oracle_decide(FunctionTable{0}).exists);
    EXPECT_FALSE(oracle_decide(FunctionTable{1, 0}).exists);
    EXPECT_TRUE(oracle_witnesses(FunctionTable{1, 0}).empty());

    OracleAnswer ans = oracle_decide(FunctionTable{0, 1, 3, 4, 2});
    ASSERT_TRUE(ans.exists);
    ASSERT_NE(ans.witness, nullptr);
    EXPECT_TRUE(is_endomorphism(FunctionTable{0, 1, 3, 4, 2}, ans.witness->certificate));
    EXPECT_FALSE(oracle_decide(FunctionTable{0, 2, 1}).exists);
}

TEST(Oracle, DistributiveExists) {
    EXPECT_TRUE(distributive_exists(FunctionTable{0, 0, 1}));
    EXPECT_FALSE(distributive_exists(FunctionTable{0, 1, 3, 4, 2}));
    EXPECT_FALSE(distributive_exists(FunctionTable{1, 0}));
    EXPECT_TRUE(distributive_exists(FunctionTable{0, 1}));
    // A 2-cycle between two hubs is the square, which is distributive.
    EXPECT_TRUE(distributive_exists(FunctionTable{0, 1, 3, 2}));
}

TEST(Oracle, WitnessesPassIndependentDefinitions) {
    for_each_map(4, [&](FunctionTable const& f) {
        auto const& cat = lattice_catalog(4);
        for (std::size_t i : oracle_witnesses(f)) {
            auto const& e = cat.lattices()[i];
            ASSERT_TRUE(brute::is_lattice_endomorphism(f, e.order.relation()));
            ASSERT_TRUE(certify(f, e.order).is_endomorphism);
        }
    });
}

TEST(Oracle, CycleWithTwoFixedPointsOnlyHasMkWitnesses) {
    for (std::size_t k = 2; k <= 4; ++k) {
        std::vector<element> image{0, 1};
        for (std::size_t i = 0; i < k; ++i) image.push_back(i + 1 < k ? i + 3 : 2);
        FunctionTable const f(image);
        auto const witnesses = oracle_witnesses(f);
        ASSERT_FALSE(witnesses.empty());
        for (std::size_t i : witnesses) EXPECT_TRUE(is_isomorphic_to_Mn(lattice_catalog(k + 2).lattices()[i].certificate, k));
        // The square (k = 2) is distributive; M_3 and M_4 are not.
        EXPECT_EQ(distributive_exists(f), k == 2);
    }
}

TEST(Sweep, SmallUniversesAreClean) {
    EXPECT_EQ(sweep_compare(2).maps, 4u);
    for (std::size_t n = 1; n <= 5; ++n) {
        SweepReport rep = sweep_compare(n);
        EXPECT_TRUE(rep.clean()) << n;
        std::size_t maps = 1;
        for (std::size_t k = 0; k < n; ++k) maps *= n;
        EXPECT_EQ(rep.maps, maps);
    }
    SweepReport sampled = sweep_compare(6, 500, 20140301);
    EXPECT_EQ(sampled.maps, 500u);
    EXPECT_EQ(sampled.posets, 130023u);
    EXPECT_TRUE(sampled.clean());
}

TEST(SampleMaps, Deterministic) {
    auto a = sample_maps(6, 10, 42), b = sample_maps(6, 10, 42);
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_TRUE(std::equal(a[i].image().begin(), a[i].image().end(), b[i].image().begin()));
}
