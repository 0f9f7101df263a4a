/**
 * @file complexes.hpp
 * @brief Finite simplicial complexes on at most 64 vertices, stored as bitmasks.
 *
 * A complex keeps its full face set (not only facets) sorted by size and then
 * by mask, so membership is a binary search inside one size class. Vertices
 * are 1-based in every user-facing list and 0-based bit positions internally.
 *
 * Besides the core object this header has full subcomplexes, links, missing
 * faces, flagification, the flagness defect nu(K) (two independent
 * algorithms), f- and h-vectors, and the standard constructions used to build
 * test complexes (skeleta, joins, disjoint unions, barycentric subdivision).
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flagtor/errors.hpp"

namespace flagtor {

using VertexMask = std::uint64_t;

inline constexpr int kMaxVertices = 64;
/// Largest vertex count for operations that enumerate all 2^m subsets.
inline constexpr int kMaxSweepVertices = 24;

inline int mask_size(VertexMask s) noexcept { return std::popcount(s); }

inline VertexMask full_mask(int m) noexcept {
    return m >= 64 ? ~VertexMask{0} : (VertexMask{1} << m) - 1;
}

inline bool is_subset(VertexMask a, VertexMask b) noexcept { return (a & ~b) == 0; }

/// 1-based labels of the bits of s, ascending.
inline std::vector<int> mask_to_vertices(VertexMask s) {
    std::vector<int> out;
    while (s) {
        out.push_back(std::countr_zero(s) + 1);
        s &= s - 1;
    }
    return out;
}

/// Packs the bits of s that lie in `within` into the low bits (software pext).
inline VertexMask compress_mask(VertexMask s, VertexMask within) noexcept {
    VertexMask out = 0;
    int k = 0;
    while (within) {
        const VertexMask low = within & (~within + 1);
        if (s & low) out |= VertexMask{1} << k;
        ++k;
        within &= within - 1;
    }
    return out;
}

/// Orders faces by size, then by mask value.
struct FaceOrder {
    bool operator()(VertexMask a, VertexMask b) const noexcept {
        const int sa = mask_size(a), sb = mask_size(b);
        return sa != sb ? sa < sb : a < b;
    }
};

class SimplicialComplex {
public:
    /// The complex {∅} on zero vertices.
    SimplicialComplex() : m_(0), faces_{0} { index(); }

    /// Downward closure of `facets` (1-based vertex lists).
    static SimplicialComplex from_facets(int m, const std::vector<std::vector<int>>& facets) {
        if (m < 1 || m > kMaxVertices)
            throw VertexOutOfRange("vertex count must be in 1.." + std::to_string(kMaxVertices) +
                                   ", got " + std::to_string(m));
        std::vector<VertexMask> gens;
        gens.reserve(facets.size());
        for (const auto& facet : facets) {
            VertexMask s = 0;
            for (int v : facet) {
                if (v < 1 || v > m)
                    throw VertexOutOfRange("vertex " + std::to_string(v) + " outside [1," +
                                           std::to_string(m) + "]");
                s |= VertexMask{1} << (v - 1);
            }
            gens.push_back(s);
        }
        return from_faces(m, std::move(gens));
    }

    /// Downward closure of the given masks; every vertex of [m] must be covered.
    static SimplicialComplex from_faces(int m, std::vector<VertexMask> generators) {
        if (m < 0 || m > kMaxVertices)
            throw VertexOutOfRange("vertex count out of range: " + std::to_string(m));
        VertexMask covered = 0;
        for (VertexMask g : generators) {
            if (g & ~full_mask(m)) throw VertexOutOfRange("face uses a vertex outside [1,m]");
            covered |= g;
        }
        for (int v = 0; v < m; ++v)
            if (!(covered >> v & 1)) throw GhostVertex(v + 1);
        return SimplicialComplex(m, close_downward(std::move(generators)));
    }

    /// Builds a complex from a face list that is already downward closed.
    /// Ghost vertices are still rejected.
    static SimplicialComplex from_closed_faces(int m, std::vector<VertexMask> faces) {
        std::sort(faces.begin(), faces.end(), FaceOrder{});
        faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
        SimplicialComplex k(m, std::move(faces));
        for (int v = 0; v < m; ++v)
            if (!k.contains(VertexMask{1} << v)) throw GhostVertex(v + 1);
        return k;
    }

    int vertex_count() const noexcept { return m_; }
    /// -1 for {∅}.
    int dimension() const noexcept { return static_cast<int>(offsets_.size()) - 3; }
    std::size_t face_count() const noexcept { return faces_.size(); }
    VertexMask vertex_set() const noexcept { return full_mask(m_); }

    /// All faces including ∅, sorted by FaceOrder.
    const std::vector<VertexMask>& faces() const noexcept { return faces_; }

    /// Faces with exactly k vertices.
    std::span<const VertexMask> faces_of_size(int k) const noexcept {
        if (k < 0 || k + 1 >= static_cast<int>(offsets_.size())) return {};
        return {faces_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
    }

    bool contains(VertexMask s) const noexcept {
        const auto range = faces_of_size(mask_size(s));
        return std::binary_search(range.begin(), range.end(), s);
    }

    /// Bitmask of vertices joined to v (0-based) by an edge.
    VertexMask neighbors(int v) const noexcept { return adjacency_[v]; }

    std::vector<VertexMask> facets() const {
        std::vector<VertexMask> out;
        for (VertexMask f : faces_) {
            bool maximal = true;
            for (int v = 0; v < m_ && maximal; ++v)
                if (!(f >> v & 1) && contains(f | VertexMask{1} << v)) maximal = false;
            if (maximal) out.push_back(f);
        }
        return out;
    }

    std::vector<std::vector<int>> facet_lists() const {
        std::vector<std::vector<int>> out;
        for (VertexMask f : facets()) out.push_back(mask_to_vertices(f));
        return out;
    }

    bool operator==(const SimplicialComplex& o) const noexcept {
        return m_ == o.m_ && faces_ == o.faces_;
    }

private:
    SimplicialComplex(int m, std::vector<VertexMask> sorted_faces)
        : m_(m), faces_(std::move(sorted_faces)) {
        index();
    }

    static std::vector<VertexMask> close_downward(std::vector<VertexMask> gens) {
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        std::vector<VertexMask> out;
        for (VertexMask g : gens) {
            // enumerate all submasks of g, including 0
            VertexMask sub = g;
            while (true) {
                out.push_back(sub);
                if (sub == 0) break;
                sub = (sub - 1) & g;
            }
        }
        out.push_back(0);
        std::sort(out.begin(), out.end(), FaceOrder{});
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    void index() {
        const int top = faces_.empty() ? 0 : mask_size(faces_.back());
        offsets_.assign(top + 2, 0);
        std::size_t i = 0;
        for (int k = 0; k <= top; ++k) {
            offsets_[k] = i;
            while (i < faces_.size() && mask_size(faces_[i]) == k) ++i;
        }
        offsets_[top + 1] = faces_.size();
        adjacency_.assign(m_, 0);
        for (VertexMask e : faces_of_size(2)) {
            const int a = std::countr_zero(e);
            const int b = 63 - std::countl_zero(e);
            adjacency_[a] |= VertexMask{1} << b;
            adjacency_[b] |= VertexMask{1} << a;
        }
    }

    int m_;
    std::vector<VertexMask> faces_;
    std::vector<std::size_t> offsets_;
    std::vector<VertexMask> adjacency_;
};

/// A complex re-indexed onto a vertex subset, with the original labels kept.
struct Subcomplex {
    SimplicialComplex complex;
    /// vertex_map[i] is the original 1-based label of new vertex i+1.
    std::vector<int> vertex_map;

    /// Faces translated back to original-label masks.
    std::vector<VertexMask> original_faces() const {
        std::vector<VertexMask> out;
        out.reserve(complex.face_count());
        for (VertexMask f : complex.faces()) {
            VertexMask g = 0;
            while (f) {
                g |= VertexMask{1} << (vertex_map[std::countr_zero(f)] - 1);
                f &= f - 1;
            }
            out.push_back(g);
        }
        std::sort(out.begin(), out.end(), FaceOrder{});
        return out;
    }
};

/// Faces of K contained in J, in original labels and FaceOrder.
inline std::vector<VertexMask> faces_within(const SimplicialComplex& k, VertexMask j) {
    std::vector<VertexMask> out;
    for (VertexMask f : k.faces())
        if (is_subset(f, j)) out.push_back(f);
    return out;
}

/// Reduced Euler characteristic of a face list: -Σ (-1)^{|I|}, empty face included.
inline long long reduced_euler_char(std::span<const VertexMask> faces) {
    long long s = 0;
    for (VertexMask f : faces) s += (mask_size(f) % 2 == 0) ? 1 : -1;
    return -s;
}

inline long long reduced_euler_char(const SimplicialComplex& k) {
    return reduced_euler_char(std::span<const VertexMask>(k.faces()));
}

/// The full subcomplex K_J, re-indexed onto J. J = 0 gives {∅}.
inline Subcomplex full_subcomplex(const SimplicialComplex& k, VertexMask j) {
    j &= k.vertex_set();
    std::vector<VertexMask> faces;
    for (VertexMask f : k.faces())
        if (is_subset(f, j)) faces.push_back(compress_mask(f, j));
    std::sort(faces.begin(), faces.end(), FaceOrder{});
    return {SimplicialComplex::from_closed_faces(mask_size(j), std::move(faces)),
            mask_to_vertices(j)};
}

/// lk_K I, re-indexed onto its vertex support.
inline Subcomplex link(const SimplicialComplex& k, VertexMask face) {
    if (!k.contains(face)) throw NotAFace("link requested for a non-face");
    std::vector<VertexMask> raw;
    VertexMask support = 0;
    for (VertexMask f : k.faces())
        if ((f & face) == 0 && k.contains(f | face)) {
            raw.push_back(f);
            support |= f;
        }
    for (VertexMask& f : raw) f = compress_mask(f, support);
    return {SimplicialComplex::from_closed_faces(mask_size(support), std::move(raw)),
            mask_to_vertices(support)};
}

/// Minimal non-faces of K.
inline std::vector<VertexMask> missing_faces(const SimplicialComplex& k) {
    std::vector<VertexMask> out;
    const int m = k.vertex_count();
    for (VertexMask f : k.faces()) {
        for (int v = 0; v < m; ++v) {
            const VertexMask bit = VertexMask{1} << v;
            // generate each candidate once: from the face obtained by dropping its largest vertex
            if ((f & bit) || (f >> v) != 0) continue;
            const VertexMask cand = f | bit;
            if (k.contains(cand)) continue;
            bool minimal = true;
            for (VertexMask rest = cand; rest && minimal; rest &= rest - 1)
                if (!k.contains(cand & ~(rest & (~rest + 1)))) minimal = false;
            if (minimal) out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end(), FaceOrder{});
    return out;
}

/// True iff every missing face has two vertices.
inline bool is_flag(const SimplicialComplex& k) {
    for (VertexMask f : k.faces()) {
        if (mask_size(f) < 2) continue;
        // f extends by v iff v is adjacent to every vertex of f
        VertexMask common = k.vertex_set() & ~f;
        for (VertexMask rest = f; rest; rest &= rest - 1)
            common &= k.neighbors(std::countr_zero(rest));
        for (; common; common &= common - 1)
            if (!k.contains(f | (common & (~common + 1)))) return false;
    }
    // triangles are the only remaining case: a 3-clique on three edges with no face
    for (VertexMask e : k.faces_of_size(2)) {
        const int a = std::countr_zero(e), b = 63 - std::countl_zero(e);
        for (VertexMask c = k.neighbors(a) & k.neighbors(b); c; c &= c - 1)
            if (!k.contains(e | (c & (~c + 1)))) return false;
    }
    return true;
}

/// Clique complex of the graph given by adjacency masks (0-based).
inline SimplicialComplex clique_complex(int m, const std::vector<VertexMask>& adjacency) {
    std::vector<VertexMask> faces{0};
    // grow each clique only by vertices above its largest vertex
    std::vector<std::pair<VertexMask, VertexMask>> stack;  // (clique, extension candidates)
    for (int v = 0; v < m; ++v)
        stack.emplace_back(VertexMask{1} << v, adjacency[v] & ~full_mask(v + 1));
    while (!stack.empty()) {
        auto [clique, cand] = stack.back();
        stack.pop_back();
        faces.push_back(clique);
        for (; cand; cand &= cand - 1) {
            const int w = std::countr_zero(cand);
            stack.emplace_back(clique | VertexMask{1} << w, cand & adjacency[w] & ~full_mask(w + 1));
        }
    }
    return SimplicialComplex::from_closed_faces(m, std::move(faces));
}

/// The unique flag complex with the same 1-skeleton.
inline SimplicialComplex flagification(const SimplicialComplex& k) {
    std::vector<VertexMask> adj(k.vertex_count());
    for (int v = 0; v < k.vertex_count(); ++v) adj[v] = k.neighbors(v);
    return clique_complex(k.vertex_count(), adj);
}

inline SimplicialComplex skeleton(const SimplicialComplex& k, int i) {
    std::vector<VertexMask> faces;
    for (VertexMask f : k.faces())
        if (mask_size(f) <= i + 1) faces.push_back(f);
    return SimplicialComplex::from_closed_faces(k.vertex_count(), std::move(faces));
}

/// nu(K) by iterating L_{p+1} = L_p ∪ {missing faces of L_p with ≥ 3 vertices}.
inline int nu_filtration(const SimplicialComplex& k) {
    const SimplicialComplex target = flagification(k);
    SimplicialComplex current = k;
    int steps = 0;
    while (!(current == target)) {
        std::vector<VertexMask> faces = current.faces();
        for (VertexMask mf : missing_faces(current))
            if (mask_size(mf) >= 3) faces.push_back(mf);
        if (faces.size() == current.face_count())
            throw Error("nu filtration stalled before reaching the flagification");
        current = SimplicialComplex::from_closed_faces(k.vertex_count(), std::move(faces));
        ++steps;
    }
    return steps;
}

/// nu(K) as the least n with: J ⊆ I ∈ K^f and |I \ J| ≥ n imply J ∈ K.
inline int nu_direct(const SimplicialComplex& k) {
    const SimplicialComplex kf = flagification(k);
    int worst = -1;  // largest |I \ J| over violating pairs
    for (VertexMask big : kf.faces()) {
        for (VertexMask sub = big;; sub = (sub - 1) & big) {
            if (!k.contains(sub)) worst = std::max(worst, mask_size(big & ~sub));
            if (sub == 0) break;
        }
    }
    return worst + 1;
}

struct FVector {
    /// f[0] = f_{-1} = 1, f[i+1] = number of i-dimensional faces.
    std::vector<long long> f;
    /// h_0 .. h_n with n = dim K + 1.
    std::vector<long long> h;
};

inline FVector h_vector(const SimplicialComplex& k) {
    const int n = k.dimension() + 1;
    FVector out;
    out.f.assign(n + 1, 0);
    for (VertexMask face : k.faces()) ++out.f[mask_size(face)];
    // Σ_i h_i s^{n-i} = Σ_j f_{j-1} (s-1)^{n-j}
    std::vector<long long> poly(n + 1, 0);  // coefficient of s^d
    for (int j = 0; j <= n; ++j) {
        const int e = n - j;
        long long binom = 1;
        for (int d = 0; d <= e; ++d) {
            const long long sign = ((e - d) % 2 == 0) ? 1 : -1;
            poly[d] += out.f[j] * binom * sign;
            binom = binom * (e - d) / (d + 1);
        }
    }
    out.h.assign(n + 1, 0);
    for (int i = 0; i <= n; ++i) out.h[i] = poly[n - i];
    return out;
}

inline bool is_simplex(const SimplicialComplex& k) {
    return k.contains(k.vertex_set());
}

/// Largest i with sk_i K = sk_i L (L ⊇ K on the same vertex set); -1 if none.
inline int common_skeleton_degree(const SimplicialComplex& k, const SimplicialComplex& l) {
    int i = -1;
    while (i + 1 <= l.dimension()) {
        const auto a = k.faces_of_size(i + 2);
        const auto b = l.faces_of_size(i + 2);
        if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) break;
        ++i;
    }
    return i;
}

// ---------------------------------------------------------------------------
// Constructions

inline SimplicialComplex simplex(int m) {
    return SimplicialComplex::from_faces(m, {full_mask(m)});
}

/// Boundary of the (m-1)-simplex.
inline SimplicialComplex simplex_boundary(int m) {
    std::vector<VertexMask> gens;
    for (int v = 0; v < m; ++v) gens.push_back(full_mask(m) & ~(VertexMask{1} << v));
    return SimplicialComplex::from_faces(m, std::move(gens));
}

inline SimplicialComplex discrete_points(int m) {
    std::vector<VertexMask> gens;
    for (int v = 0; v < m; ++v) gens.push_back(VertexMask{1} << v);
    return SimplicialComplex::from_faces(m, std::move(gens));
}

inline SimplicialComplex cycle(int m) {
    if (m < 3) throw InputError("a cycle needs at least 3 vertices");
    std::vector<VertexMask> gens;
    for (int v = 0; v < m; ++v) gens.push_back(VertexMask{1} << v | VertexMask{1} << ((v + 1) % m));
    return SimplicialComplex::from_faces(m, std::move(gens));
}

inline SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
    const int m = a.vertex_count() + b.vertex_count();
    if (m > kMaxVertices) throw VertexOutOfRange("join exceeds the vertex cap");
    std::vector<VertexMask> faces;
    faces.reserve(a.face_count() * b.face_count());
    for (VertexMask fa : a.faces())
        for (VertexMask fb : b.faces()) faces.push_back(fa | fb << a.vertex_count());
    return SimplicialComplex::from_closed_faces(m, std::move(faces));
}

inline SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b) {
    const int m = a.vertex_count() + b.vertex_count();
    if (m > kMaxVertices) throw VertexOutOfRange("disjoint union exceeds the vertex cap");
    std::vector<VertexMask> faces(a.faces());
    for (VertexMask fb : b.faces()) faces.push_back(fb << a.vertex_count());
    return SimplicialComplex::from_closed_faces(m, std::move(faces));
}

/// Boundary of the d-dimensional cross-polytope: the d-fold join of S^0.
inline SimplicialComplex cross_polytope_boundary(int d) {
    if (d < 1) throw InputError("cross-polytope needs d >= 1");
    SimplicialComplex out = discrete_points(2);
    for (int i = 1; i < d; ++i) out = join(out, discrete_points(2));
    return out;
}

/// Barycentric subdivision; vertex i+1 is the i-th nonempty face in FaceOrder.
inline SimplicialComplex barycentric_subdivision(const SimplicialComplex& k) {
    std::vector<VertexMask> verts(k.faces().begin() + 1, k.faces().end());
    const int m = static_cast<int>(verts.size());
    if (m > kMaxVertices) throw VertexOutOfRange("subdivision exceeds the vertex cap");
    std::vector<VertexMask> adj(m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (is_subset(verts[a], verts[b]) || is_subset(verts[b], verts[a])) {
                adj[a] |= VertexMask{1} << b;
                adj[b] |= VertexMask{1} << a;
            }
    // chains of faces are exactly the cliques of the comparability graph
    return clique_complex(m, adj);
}

/// Six-vertex minimal triangulation of the real projective plane.
inline SimplicialComplex rp2_six_vertex() {
    return SimplicialComplex::from_facets(
        6, {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
            {2, 3, 5}, {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}});
}

/// Boundary of the icosahedron (a flag triangulation of S^2 on 12 vertices).
inline SimplicialComplex icosahedron() {
    std::vector<std::vector<int>> facets;
    for (int i = 0; i < 5; ++i) {
        const int u0 = 2 + i, u1 = 2 + (i + 1) % 5;
        const int l0 = 7 + i, l1 = 7 + (i + 1) % 5;
        facets.push_back({1, u0, u1});
        facets.push_back({u0, u1, l0});
        facets.push_back({u1, l0, l1});
        facets.push_back({12, l0, l1});
    }
    return SimplicialComplex::from_facets(12, facets);
}

/// FNV-1a over the vertex count and face list; identifies a complex in caches.
inline std::uint64_t canonical_hash(const SimplicialComplex& k) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint64_t>(k.vertex_count()));
    for (VertexMask f : k.faces()) mix(f);
    return h;
}

}  // namespace flagtor
