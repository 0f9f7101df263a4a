/**
 * @file test_homology.cpp
 * @brief Reduced homology and cohomology over Z, Q and F_p.
 */
#include <gtest/gtest.h>

#include <random>

#include "flagtor/complexes.hpp"
#include "flagtor/homology.hpp"
#include "oracles.hpp"

using namespace flagtor;

namespace {

const Coefficients Q = Coefficients::rationals();
const Coefficients Z = Coefficients::integers();
const Coefficients F2 = Coefficients::prime_field(2);
const Coefficients F3 = Coefficients::prime_field(3);

std::vector<Integer> tors(std::initializer_list<int> xs) {
    std::vector<Integer> out;
    for (int x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST(Homology, EmptyComplexHasDegreeMinusOneClass) {
    const auto h = reduced_homology(SimplicialComplex(), Z);
    EXPECT_EQ(h.rank(-1), 1);
    EXPECT_EQ(h.total_rank(), 1);
}

TEST(Homology, FourCycleIsCircle) {
    const auto h = reduced_homology(cycle(4), Z);
    EXPECT_EQ(h.rank(1), 1);
    EXPECT_EQ(h.total_rank(), 1);
    EXPECT_TRUE(h.torsion(1).empty());
    const auto c = reduced_cohomology(cycle(4), Z);
    EXPECT_EQ(c.rank(1), 1);
    EXPECT_EQ(c.total_rank(), 1);
}

TEST(Homology, TwoPoints) {
    const auto c = reduced_cohomology(discrete_points(2), Z);
    EXPECT_EQ(c.rank(0), 1);
    EXPECT_EQ(c.total_rank(), 1);
}

TEST(Homology, ProjectivePlaneTorsion) {
    const auto k = rp2_six_vertex();
    const auto hz = reduced_homology(k, Z);
    EXPECT_EQ(hz.total_rank(), 0);
    EXPECT_EQ(hz.torsion(1), tors({2}));
    EXPECT_TRUE(hz.torsion(2).empty());
    const auto h2 = reduced_homology(k, F2);
    EXPECT_EQ(h2.rank(1), 1);
    EXPECT_EQ(h2.rank(2), 1);
    EXPECT_TRUE(reduced_homology(k, Q).is_zero());
    EXPECT_TRUE(reduced_homology(k, F3).is_zero());
    const auto cz = reduced_cohomology(k, Z);
    EXPECT_EQ(cz.torsion(2), tors({2}));
    EXPECT_TRUE(cz.torsion(1).empty());
}

TEST(Homology, ProjectivePlaneBoundaryMatrixEndsInTwo) {
    const auto k = rp2_six_vertex();
    const ChainComplex cc = simplicial_chain_complex(k.faces());
    const auto snf = smith_normal_form(cc.boundary[3]);  // triangles to edges
    ASSERT_FALSE(snf.diagonal.empty());
    EXPECT_EQ(snf.diagonal.back(), Integer(2));
}

TEST(Homology, DimensionsWithDegenerateConventions) {
    EXPECT_EQ(cdim_Z(simplex(1)), -1);
    EXPECT_EQ(cdim_Z(SimplicialComplex()), -1);
    EXPECT_EQ(cdim_Z(cycle(4)), 1);
    EXPECT_EQ(cdim_Z(rp2_six_vertex()), 2);
    EXPECT_EQ(hdim_F(rp2_six_vertex(), Q), -1);
    EXPECT_EQ(hdim_F(rp2_six_vertex(), F2), 2);
    EXPECT_EQ(torsion_primes(reduced_homology(rp2_six_vertex(), Z)), tors({2}));
}

TEST(Homology, BettiNumbersMatchDenseOracle) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 80; ++trial) {
        const int m = 3 + static_cast<int>(rng() % 5);
        const auto facets = oracle::random_facets(rng, m, 5, 4);
        const auto k = SimplicialComplex::from_facets(m, facets);
        const auto ok = oracle::close_down(facets);
        for (long long p : {0LL, 2LL, 3LL}) {
            const Coefficients c = p ? Coefficients::prime_field(p) : Q;
            const auto h = reduced_homology(k, c);
            const auto b = oracle::reduced_betti(ok, p);
            for (int n = -1; n <= 4; ++n) EXPECT_EQ(h.rank(n), b.at(n)) << "n=" << n << " p=" << p;
        }
    }
}

TEST(Homology, BoundaryMatricesSquareToZero) {
    for (const auto& k : {cycle(5), icosahedron(), rp2_six_vertex(), cross_polytope_boundary(4)}) {
        const ChainComplex cc = simplicial_chain_complex(k.faces());
        EXPECT_TRUE(boundary_squares_to_zero(cc));
        for (std::size_t i = 1; i + 1 < cc.boundary.size(); ++i)
            EXPECT_TRUE(multiply(cc.boundary[i], cc.boundary[i + 1]).is_zero());
    }
}

TEST(Homology, SpheresAndTheirSuspensions) {
    const auto oct = cross_polytope_boundary(3);
    const auto h = reduced_homology(oct, Z);
    EXPECT_EQ(h.rank(2), 1);
    EXPECT_EQ(h.total_rank(), 1);
    const auto s3 = reduced_homology(cross_polytope_boundary(4), Z);
    EXPECT_EQ(s3.rank(3), 1);
    EXPECT_EQ(s3.total_rank(), 1);
    EXPECT_EQ(reduced_homology(icosahedron(), Z).rank(2), 1);
}

TEST(Homology, EulerCharacteristicMatchesCombinatorial) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 3 + static_cast<int>(rng() % 5);
        const auto k = SimplicialComplex::from_facets(m, oracle::random_facets(rng, m, 5, 4));
        EXPECT_EQ(reduced_homology(k, Q).euler_characteristic(), reduced_euler_char(k));
    }
}

TEST(Homology, UniversalCoefficientsOnProjectiveSpaces) {
    // sd of RP^2 and the join RP^2 * S^0 (a suspension) keep the 2-torsion
    for (const auto& k : {barycentric_subdivision(rp2_six_vertex()), join(rp2_six_vertex(), discrete_points(2))}) {
        const auto hz = reduced_homology(k, Z);
        const auto cz = reduced_cohomology(k, Z);
        const auto h2 = reduced_homology(k, F2);
        for (int n = -1; n <= 4; ++n) {
            EXPECT_EQ(hz.rank(n), cz.rank(n));
            EXPECT_EQ(hz.torsion(n), cz.torsion(n + 1));
            EXPECT_EQ(h2.rank(n), hz.rank(n) + static_cast<long long>(hz.torsion(n).size() + hz.torsion(n - 1).size()));
        }
    }
}
