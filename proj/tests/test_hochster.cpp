/**
 * @file test_hochster.cpp
 * @brief Hochster decompositions of moment-angle and real moment-angle complexes.
 */
#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "flagtor/corpus.hpp"
#include "flagtor/hochster.hpp"
#include "oracles.hpp"

using namespace flagtor;

namespace {

const Coefficients Q = Coefficients::rationals();
const Coefficients Z = Coefficients::integers();

std::vector<long long> betti(const HomologyProfile& h, int top) {
    std::vector<long long> out;
    for (int n = 0; n <= top; ++n) out.push_back(h.rank(n));
    return out;
}

/// Betti numbers of Z_K (or R_K) from the dense oracle, summed over all J.
std::vector<long long> oracle_betti(const SimplicialComplex& k, bool real, int top) {
    const auto ok = oracle::close_down(k.facet_lists());
    std::vector<long long> out(top + 1, 0);
    const int m = k.vertex_count();
    for (VertexMask j = 0; j < (VertexMask{1} << m); ++j) {
        oracle::Face jf;
        for (int v : mask_to_vertices(j)) jf.insert(v);
        const auto b = oracle::reduced_betti(oracle::restrict(ok, jf));
        const int shift = real ? 1 : mask_size(j) + 1;
        for (int n = -1; n + shift <= top; ++n)
            if (n + shift >= 0) out[n + shift] += b.at(n);
    }
    return out;
}

}  // namespace

TEST(Hochster, PointGivesDisc) {
    const auto t = zk_homology(simplex(1), Z);
    EXPECT_EQ(t.totals.rank(0), 1);
    EXPECT_EQ(t.totals.total_rank(), 1);
}

TEST(Hochster, TwoPointsGiveThreeSphere) {
    const auto t = zk_homology(discrete_points(2), Z);
    EXPECT_EQ(betti(t.totals, 4), (std::vector<long long>{1, 0, 0, 1, 0}));
    const auto r = rk_homology(discrete_points(2), Z);
    EXPECT_EQ(betti(r.totals, 2), (std::vector<long long>{1, 1, 0}));
}

TEST(Hochster, FourCycleGivesProductOfThreeSpheres) {
    const auto t = zk_homology(cycle(4), Q);
    EXPECT_EQ(betti(t.totals, 7), (std::vector<long long>{1, 0, 0, 2, 0, 0, 1, 0}));
    ASSERT_EQ(t.entries.size(), 4u);
    EXPECT_EQ(t.entries[1].subset, VertexMask{0b0101});
    EXPECT_EQ(t.entries[1].degree, 3);
    EXPECT_EQ(t.entries[1].subcomplex_degree, 0);
    EXPECT_EQ(t.entries[3].subset, VertexMask{0b1111});
    EXPECT_EQ(t.entries[3].degree, 6);
}

TEST(Hochster, FourCycleRealMomentAngleIsTorus) {
    const auto r = rk_homology(cycle(4), Q);
    EXPECT_EQ(betti(r.totals, 3), (std::vector<long long>{1, 2, 1, 0}));
}

TEST(Hochster, BettiNumbersMatchOracleSum) {
    for (const char* id : {"cycle:5", "octahedron", "rp2", "skeleton:1:simplex:4", "random-flag:7:0.5:2"}) {
        const auto k = corpus(id);
        EXPECT_EQ(betti(zk_homology(k, Q).totals, 14), oracle_betti(k, false, 14)) << id;
        EXPECT_EQ(betti(rk_homology(k, Q).totals, 6), oracle_betti(k, true, 6)) << id;
    }
}

TEST(Hochster, IntegralTorsionOfRp2Subcomplex) {
    const auto t = zk_homology(rp2_six_vertex(), Z);
    // J = [6] contributes H~_1(RP^2) = Z/2 in degree 1 + 6 + 1
    EXPECT_EQ(t.totals.torsion(8), std::vector<Integer>{Integer(2)});
    const auto c = zk_cohomology(rp2_six_vertex(), Z);
    EXPECT_EQ(c.totals.torsion(9), std::vector<Integer>{Integer(2)});
}

TEST(Hochster, EulerCharacteristicOfMomentAngleComplexVanishes) {
    for (const char* id : {"cycle:4", "cycle:6", "octahedron", "rp2", "points:3"})
        EXPECT_EQ(zk_homology(corpus(id), Q).totals.euler_characteristic(), 0) << id;
    EXPECT_EQ(zk_homology(simplex(3), Q).totals.euler_characteristic(), 1);
}

TEST(Hochster, SweepRejectsLargeComplexes) {
    EXPECT_THROW(subset_sweep(corpus("rp2-flag"), Q, Theory::Homology), BoundExceeded);
}

TEST(Hochster, ThreadCountDoesNotChangeResults) {
    const auto k = corpus("random-flag:10:0.5:4");
    const auto a = compute_subset_sweep(k, Z, Theory::Cohomology, 1);
    const auto b = compute_subset_sweep(k, Z, Theory::Cohomology, 4);
    ASSERT_EQ(a.profiles.size(), b.profiles.size());
    for (std::size_t j = 0; j < a.profiles.size(); ++j) EXPECT_EQ(a.profiles[j], b.profiles[j]);
}

TEST(Hochster, DiskCacheRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "flagtor-test-cache";
    std::filesystem::remove_all(dir);
    const auto k = corpus("random-flag:9:0.5:8");
    SweepOptions opts;
    opts.cache_dir = dir.string();
    clear_sweep_memo();
    const auto cold = subset_sweep(k, Z, Theory::Homology, opts);
    EXPECT_FALSE(cold->loaded_from_disk);
    clear_sweep_memo();
    const auto warm = subset_sweep(k, Z, Theory::Homology, opts);
    EXPECT_TRUE(warm->loaded_from_disk);
    ASSERT_EQ(cold->profiles.size(), warm->profiles.size());
    for (std::size_t j = 0; j < cold->profiles.size(); ++j) EXPECT_EQ(cold->profiles[j], warm->profiles[j]);
    // the in-process memo returns the same object
    EXPECT_EQ(subset_sweep(k, Z, Theory::Homology, opts).get(), warm.get());
    std::filesystem::remove_all(dir);
}
