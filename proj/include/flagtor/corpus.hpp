/**
 * @file corpus.hpp
 * @brief Named complexes: a small grammar of generators and constructors.
 *
 *   cycle:M  cross:D  simplex:M  points:M  boundary:M  octahedron  icosahedron
 *   rp2  rp2-flag  random-flag:M:P:SEED  skeleton:I:<id>  sd:<id>
 *   join(<id>,<id>)  union(<id>,<id>)
 *
 * `boundary:M` is the boundary of the (M-1)-simplex, `cross:D` the boundary of
 * the D-dimensional cross-polytope, and `rp2-flag` the barycentric subdivision
 * of the six-vertex real projective plane.
 */
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "flagtor/complexes.hpp"
#include "flagtor/errors.hpp"

namespace flagtor {

/// Clique complex of G(m, p); edge {a,b} (a<b, lexicographic) is kept when the
/// next mt19937_64 draw falls below p·2^64.
inline SimplicialComplex random_flag(int m, double p, std::uint64_t seed) {
    if (m < 1 || m > kMaxVertices) throw VertexOutOfRange("random-flag: bad vertex count");
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("random-flag: p must lie in [0,1]");
    std::mt19937_64 rng(seed);
    const long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;
    std::vector<VertexMask> adj(m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            const std::uint64_t draw = rng();
            if (p >= 1.0 || static_cast<long double>(draw) < scaled) {
                adj[a] |= VertexMask{1} << b;
                adj[b] |= VertexMask{1} << a;
            }
        }
    return clique_complex(m, adj);
}

namespace detail {

inline int parse_int(const std::string& s, const std::string& whole) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw UnknownName(whole);
    try {
        return std::stoi(s);
    } catch (const std::exception&) {
        throw UnknownName(whole);
    }
}

inline std::pair<std::string, std::string> split_binary(const std::string& inner,
                                                        const std::string& whole) {
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '(') ++depth;
        else if (inner[i] == ')') --depth;
        else if (inner[i] == ',' && depth == 0) return {inner.substr(0, i), inner.substr(i + 1)};
    }
    throw UnknownName(whole);
}

}  // namespace detail

inline SimplicialComplex corpus(const std::string& name) {
    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : name.substr(colon + 1);
    auto arg = [&] { return detail::parse_int(rest, name); };

    if (name.rfind("join(", 0) == 0 || name.rfind("union(", 0) == 0) {
        if (name.back() != ')') throw UnknownName(name);
        const auto open = name.find('(');
        const auto [a, b] = detail::split_binary(name.substr(open + 1, name.size() - open - 2), name);
        return name[0] == 'j' ? join(corpus(a), corpus(b)) : disjoint_union(corpus(a), corpus(b));
    }
    if (name == "icosahedron") return icosahedron();
    if (name == "octahedron") return cross_polytope_boundary(3);
    if (name == "rp2") return rp2_six_vertex();
    if (name == "rp2-flag") return barycentric_subdivision(rp2_six_vertex());
    if (head == "cycle") return cycle(arg());
    if (head == "cross") return cross_polytope_boundary(arg());
    if (head == "simplex") return simplex(arg());
    if (head == "points") return discrete_points(arg());
    if (head == "boundary") {
        const int m = arg();
        if (m < 2) throw UnknownName(name);
        return simplex_boundary(m);
    }
    if (head == "sd") return barycentric_subdivision(corpus(rest));
    if (head == "skeleton") {
        const auto c2 = rest.find(':');
        if (c2 == std::string::npos) throw UnknownName(name);
        return skeleton(corpus(rest.substr(c2 + 1)), detail::parse_int(rest.substr(0, c2), name));
    }
    if (head == "random-flag") {
        const auto c2 = rest.find(':');
        const auto c3 = c2 == std::string::npos ? c2 : rest.find(':', c2 + 1);
        if (c3 == std::string::npos) throw UnknownName(name);
        double p = 0;
        try {
            std::size_t used = 0;
            p = std::stod(rest.substr(c2 + 1, c3 - c2 - 1), &used);
            if (used != c3 - c2 - 1) throw UnknownName(name);
        } catch (const std::invalid_argument&) {
            throw UnknownName(name);
        }
        const std::string seed = rest.substr(c3 + 1);
        if (seed.empty() || seed.find_first_not_of("0123456789") != std::string::npos)
            throw UnknownName(name);
        return random_flag(detail::parse_int(rest.substr(0, c2), name), p, std::stoull(seed));
    }
    throw UnknownName(name);
}

/// Flag complexes on at most 8 vertices used for corpus-wide verification.
inline std::vector<std::string> small_flag_corpus() {
    std::vector<std::string> ids{
        "points:1",  "points:2",  "points:3",  "simplex:2", "simplex:3",
        "cycle:4",   "cycle:5",   "cycle:6",   "cycle:7",   "cycle:8",
        "cross:2",   "cross:3",   "cross:4",   "sd:boundary:3",
        "join(points:2,points:3)", "join(cycle:4,points:2)", "join(points:3,points:3)",
        "join(cycle:4,cycle:4)",   "join(cycle:5,simplex:1)", "union(cycle:4,points:2)",
        "union(cycle:5,simplex:2)"};
    for (int seed = 1; seed <= 15; ++seed) ids.push_back("random-flag:8:0.5:" + std::to_string(seed));
    return ids;
}

/// Flag and non-flag complexes for the ν(K) cross-check.
inline std::vector<std::string> nu_corpus() {
    std::vector<std::string> ids;
    for (int m = 2; m <= 7; ++m)
        for (int i = 0; i < m - 1; ++i)
            ids.push_back("skeleton:" + std::to_string(i) + ":simplex:" + std::to_string(m));
    for (int m = 2; m <= 7; ++m) ids.push_back("boundary:" + std::to_string(m));
    ids.push_back("union(boundary:3,boundary:6)");
    ids.push_back("skeleton:1:octahedron");
    ids.push_back("skeleton:1:icosahedron");
    ids.push_back("skeleton:1:cross:4");
    ids.push_back("skeleton:2:cross:4");
    ids.push_back("rp2");
    ids.push_back("join(boundary:3,points:2)");
    ids.push_back("join(boundary:4,boundary:3)");
    ids.push_back("union(boundary:4,cycle:4)");
    for (int seed = 1; seed <= 6; ++seed) {
        ids.push_back("random-flag:7:0.6:" + std::to_string(seed));
        ids.push_back("skeleton:1:random-flag:7:0.7:" + std::to_string(seed));
    }
    ids.push_back("cycle:6");
    ids.push_back("cross:3");
    return ids;
}

}  // namespace flagtor
