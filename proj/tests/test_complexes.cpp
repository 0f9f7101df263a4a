/**
 * @file test_complexes.cpp
 * @brief Simplicial complexes, flagification, links and nu(K).
 */
#include <gtest/gtest.h>

#include <random>

#include "flagtor/complexes.hpp"
#include "flagtor/corpus.hpp"
#include "oracles.hpp"

using namespace flagtor;

namespace {

std::set<std::uint64_t> mask_set(std::span<const VertexMask> faces) { return {faces.begin(), faces.end()}; }

oracle::Faces oracle_faces(const SimplicialComplex& k) { return oracle::close_down(k.facet_lists()); }

VertexMask m_of(std::initializer_list<int> vs) {
    VertexMask s = 0;
    for (int v : vs) s |= VertexMask{1} << (v - 1);
    return s;
}

}  // namespace

TEST(Complexes, BoundaryOfTriangleHasSevenFaces) {
    const auto k = SimplicialComplex::from_facets(3, {{1, 2}, {2, 3}, {1, 3}});
    EXPECT_EQ(k.face_count(), 7u);
    EXPECT_EQ(k.dimension(), 1);
    EXPECT_FALSE(is_flag(k));
    EXPECT_EQ(missing_faces(k), std::vector<VertexMask>{m_of({1, 2, 3})});
}

TEST(Complexes, TwoDisjointPoints) {
    const auto k = SimplicialComplex::from_facets(2, {{1}, {2}});
    EXPECT_EQ(k.face_count(), 3u);
    EXPECT_EQ(k.dimension(), 0);
    EXPECT_TRUE(is_flag(k));
}

TEST(Complexes, EmptyComplexConvention) {
    const SimplicialComplex k;
    EXPECT_EQ(k.face_count(), 1u);
    EXPECT_EQ(k.dimension(), -1);
    EXPECT_EQ(reduced_euler_char(k), -1);
}

TEST(Complexes, InputValidation) {
    EXPECT_THROW(SimplicialComplex::from_facets(5, oracle::cycle_facets(4)), GhostVertex);
    EXPECT_THROW(SimplicialComplex::from_facets(3, {{1, 4}}), VertexOutOfRange);
    EXPECT_THROW(SimplicialComplex::from_facets(3, {{0, 1}, {2, 3}}), VertexOutOfRange);
    EXPECT_THROW(SimplicialComplex::from_facets(65, {{1}}), VertexOutOfRange);
}

TEST(Complexes, FullSubcomplexesOfFourCycle) {
    const auto k = cycle(4);
    const auto two_points = full_subcomplex(k, m_of({1, 3}));
    EXPECT_EQ(two_points.complex, discrete_points(2));
    EXPECT_EQ(two_points.vertex_map, (std::vector<int>{1, 3}));
    EXPECT_EQ(full_subcomplex(k, m_of({1, 2})).complex, simplex(2));
}

TEST(Complexes, LinkOfVertexInFourCycle) {
    const auto k = cycle(4);
    const auto l = link(k, m_of({1}));
    EXPECT_EQ(l.complex, discrete_points(2));
    EXPECT_EQ(l.vertex_map, (std::vector<int>{2, 4}));
    EXPECT_THROW(link(k, m_of({1, 3})), NotAFace);
}

TEST(Complexes, OctahedronLinkIsFourCycleOnOtherPairs) {
    const auto k = cross_polytope_boundary(3);
    const auto l = link(k, m_of({1}));
    EXPECT_EQ(l.complex.face_count(), 9u);
    EXPECT_EQ(mask_set(l.original_faces()),
              oracle::to_masks(oracle::link(oracle_faces(k), oracle::Face{1})));
    EXPECT_TRUE(is_flag(l.complex));
    EXPECT_EQ(h_vector(l.complex).h, (std::vector<long long>{1, 2, 1}));
}

TEST(Complexes, LinksAgreeWithBruteForce) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 3 + static_cast<int>(rng() % 5);
        const auto facets = oracle::random_facets(rng, m, 4, 4);
        const auto k = SimplicialComplex::from_facets(m, facets);
        const auto ok = oracle::close_down(facets);
        EXPECT_EQ(mask_set(k.faces()), oracle::to_masks(ok));
        for (const auto& sigma : ok)
            EXPECT_EQ(mask_set(link(k, oracle::to_mask(sigma)).original_faces()),
                      oracle::to_masks(oracle::link(ok, sigma)));
        for (VertexMask j = 0; j < (VertexMask{1} << m); ++j) {
            oracle::Face jf;
            for (int v : mask_to_vertices(j)) jf.insert(v);
            EXPECT_EQ(mask_set(full_subcomplex(k, j).original_faces()),
                      oracle::to_masks(oracle::restrict(ok, jf)));
        }
    }
}

TEST(Complexes, FourCycleIsFlagWithTwoMissingFaces) {
    const auto k = cycle(4);
    EXPECT_TRUE(is_flag(k));
    EXPECT_EQ(missing_faces(k), (std::vector<VertexMask>{m_of({1, 3}), m_of({2, 4})}));
}

TEST(Complexes, FlagificationOfSkeletonIsSimplex) {
    EXPECT_EQ(flagification(skeleton(simplex(4), 1)), simplex(4));
    EXPECT_EQ(flagification(simplex_boundary(3)), simplex(3));
}

TEST(Complexes, FlagificationMatchesCliqueOracle) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 3 + static_cast<int>(rng() % 6);
        const auto facets = oracle::random_facets(rng, m, 5, 4);
        const auto k = SimplicialComplex::from_facets(m, facets);
        const auto ok = oracle::close_down(facets);
        const auto expect = oracle::cliques(m, oracle::edges_of(ok));
        const auto kf = flagification(k);
        EXPECT_EQ(mask_set(kf.faces()), oracle::to_masks(expect));
        EXPECT_EQ(is_flag(k), oracle::to_masks(ok) == oracle::to_masks(expect));
        EXPECT_EQ(flagification(kf), kf);
        for (VertexMask mf : missing_faces(k)) {
            EXPECT_FALSE(k.contains(mf));
            for (int v : mask_to_vertices(mf)) EXPECT_TRUE(k.contains(mf & ~(VertexMask{1} << (v - 1))));
        }
    }
}

TEST(Complexes, NuOfSkeletaOfSimplex) {
    for (int m = 2; m <= 7; ++m) {
        // m discrete points are already flag
        EXPECT_EQ(nu_filtration(skeleton(simplex(m), 0)), 0);
        EXPECT_EQ(nu_direct(skeleton(simplex(m), 0)), 0);
        for (int i = 1; i <= m - 1; ++i) {
            const auto k = skeleton(simplex(m), i);
            EXPECT_EQ(nu_filtration(k), m - i - 1) << "m=" << m << " i=" << i;
            EXPECT_EQ(nu_direct(k), m - i - 1) << "m=" << m << " i=" << i;
        }
    }
    EXPECT_EQ(nu_direct(skeleton(simplex(4), 1)), 2);
}

TEST(Complexes, NuOfTriangleBoundaryUnionFiveSimplexBoundary) {
    const auto k = disjoint_union(simplex_boundary(3), simplex_boundary(6));
    EXPECT_EQ(k.vertex_count(), 9);
    EXPECT_EQ(nu_filtration(k), 1);
    EXPECT_EQ(nu_direct(k), 1);
    // sk_4 K differs from sk_4 K^f, so the skeleton bound is not sharp here
    const auto kf = flagification(k);
    EXPECT_EQ(kf.dimension(), 5);
    EXPECT_LT(common_skeleton_degree(k, kf), 4);
}

TEST(Complexes, NuMatchesSetTheoreticOracle) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 3 + static_cast<int>(rng() % 5);
        const auto facets = oracle::random_facets(rng, m, 6, 4);
        const auto k = SimplicialComplex::from_facets(m, facets);
        const int expect = oracle::nu(m, oracle::close_down(facets));
        EXPECT_EQ(nu_filtration(k), expect);
        EXPECT_EQ(nu_direct(k), expect);
    }
}

TEST(Complexes, NuCorpusHasAtLeastFiftyComplexes) {
    const auto ids = nu_corpus();
    EXPECT_GE(ids.size(), 50u);
    for (const auto& id : ids) {
        const auto k = corpus(id);
        EXPECT_EQ(nu_filtration(k), nu_direct(k)) << id;
        EXPECT_EQ(nu_direct(k), oracle::nu(k.vertex_count(), oracle_faces(k))) << id;
    }
}

TEST(Complexes, ReducedEulerCharacteristic) {
    EXPECT_EQ(reduced_euler_char(simplex(1)), 0);
    EXPECT_EQ(reduced_euler_char(cycle(4)), -1);
    EXPECT_EQ(reduced_euler_char(icosahedron()), 1);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 6);
        const auto facets = oracle::random_facets(rng, m, 4, 4);
        EXPECT_EQ(reduced_euler_char(SimplicialComplex::from_facets(m, facets)),
                  oracle::euler(oracle::close_down(facets)));
    }
}

TEST(Complexes, HVectors) {
    // (s-1)^2 + 4(s-1) + 4 = s^2 + 2s + 1
    EXPECT_EQ(h_vector(cycle(4)).h, (std::vector<long long>{1, 2, 1}));
    EXPECT_EQ(h_vector(cycle(4)).f, (std::vector<long long>{1, 4, 4}));
    EXPECT_EQ(h_vector(cross_polytope_boundary(3)).h, (std::vector<long long>{1, 3, 3, 1}));
    EXPECT_EQ(h_vector(icosahedron()).h, (std::vector<long long>{1, 9, 9, 1}));
    EXPECT_EQ(h_vector(simplex(3)).h, (std::vector<long long>{1, 0, 0, 0}));
}

TEST(Complexes, NamedConstructions) {
    EXPECT_EQ(icosahedron().face_count(), 63u);
    EXPECT_TRUE(is_flag(icosahedron()));
    EXPECT_EQ(rp2_six_vertex().facets().size(), 10u);
    const auto rp2f = corpus("rp2-flag");
    EXPECT_EQ(rp2f.vertex_count(), 31);
    EXPECT_TRUE(is_flag(rp2f));
    EXPECT_EQ(reduced_euler_char(rp2f), reduced_euler_char(rp2_six_vertex()));
    EXPECT_EQ(corpus("cycle:5"), cycle(5));
    EXPECT_EQ(corpus("cross:3"), cross_polytope_boundary(3));
    EXPECT_EQ(corpus("skeleton:1:simplex:4"), skeleton(simplex(4), 1));
    EXPECT_EQ(corpus("join(points:2,points:2)"), cross_polytope_boundary(2));
    EXPECT_EQ(corpus("union(boundary:3,boundary:6)").vertex_count(), 9);
}

TEST(Complexes, JoinOfZeroSpheresIsCrossPolytope) {
    EXPECT_EQ(join(join(discrete_points(2), discrete_points(2)), discrete_points(2)),
              cross_polytope_boundary(3));
}

TEST(Complexes, UnknownCorpusNames) {
    for (const char* bad : {"cycle", "cycle:x", "nonsense", "join(cycle:4)", "random-flag:8:0.5", "skeleton:1"})
        EXPECT_THROW(corpus(bad), UnknownName) << bad;
}

TEST(Complexes, RandomFlagIsDeterministic) {
    EXPECT_EQ(corpus("random-flag:12:0.4:7"), corpus("random-flag:12:0.4:7"));
    EXPECT_TRUE(is_flag(corpus("random-flag:12:0.4:7")));
    EXPECT_EQ(canonical_hash(corpus("random-flag:12:0.4:7")), canonical_hash(corpus("random-flag:12:0.4:7")));
    EXPECT_NE(canonical_hash(cycle(5)), canonical_hash(cycle(6)));
}
