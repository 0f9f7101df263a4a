/**
 * @file lscat.hpp
 * @brief LS-category of Z_K and R_K for flag K, Toomer invariants, the lower
 *        bound through ν(K), and a search for cup-product witnesses.
 *
 * Degenerate conventions: cdim of a point and of {∅} is -1, and the full
 * simplex gives category 0.
 */
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flagtor/complexes.hpp"
#include "flagtor/hochster.hpp"
#include "flagtor/homology.hpp"
#include "flagtor/pontryagin.hpp"

namespace flagtor {

/// max_J cdim_Z K_J over all J ⊆ [m].
inline int max_subcomplex_cdim(const SimplicialComplex& k, const SweepOptions& opts = {}) {
    const auto sweep = subset_sweep(k, Coefficients::integers(), Theory::Cohomology, opts);
    int best = -1;
    for (const auto& h : sweep->profiles) best = std::max(best, cdim_from_cohomology(h));
    return best;
}

/// 1 + max_J cdim_Z K_J; valid for any K.
inline int cat_via_subcomplexes(const SimplicialComplex& k, const SweepOptions& opts = {}) {
    return 1 + max_subcomplex_cdim(k, opts);
}

/// 1 + max over faces I (∅ included) of cdim_Z lk_K I.
inline int cat_via_links(const SimplicialComplex& k) {
    int best = -1;
    for (VertexMask face : k.faces()) best = std::max(best, cdim_Z(link(k, face).complex));
    return 1 + best;
}

/// cat(Z_K) = cat(R_K) for flag K.
inline int cat_zk(const SimplicialComplex& k, const SweepOptions& opts = {}) {
    require_flag(k);
    if (is_simplex(k)) return 0;
    return cat_via_subcomplexes(k, opts);
}

/// Toomer invariant e_F(Z_K) = 1 + max_J hdim_F K_J for flag K.
inline int toomer(const SimplicialComplex& k, const Coefficients& field,
                  const SweepOptions& opts = {}) {
    require_flag(k);
    if (!field.is_field()) throw InputError("the Toomer invariant needs field coefficients");
    const auto sweep = subset_sweep(k, field, Theory::Homology, opts);
    int best = -1;
    for (const auto& h : sweep->profiles) best = std::max(best, hdim_from_homology(h));
    return 1 + best;
}

struct ToomerReport {
    /// Field label ("q", "fp:2", ...) to e_F.
    std::map<std::string, int> per_field;
    int maximum = 0;
};

/// e_F over Q and over F_p for every prime p dividing torsion of some H̃_*(K_J; Z).
inline ToomerReport toomer_all_fields(const SimplicialComplex& k, const SweepOptions& opts = {}) {
    require_flag(k);
    ToomerReport r;
    std::vector<Coefficients> fields{Coefficients::rationals()};
    const auto zsweep = subset_sweep(k, Coefficients::integers(), Theory::Homology, opts);
    std::vector<Integer> primes;
    for (const auto& h : zsweep->profiles)
        for (const Integer& p : torsion_primes(h)) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const Integer& p : primes) fields.push_back(Coefficients::prime_field(p.get_ui()));
    r.maximum = -1;
    for (const auto& f : fields) {
        const int e = toomer(k, f, opts);
        r.per_field[f.to_string()] = e;
        r.maximum = std::max(r.maximum, e);
    }
    return r;
}

/// 1 - ν(K) + max_J cdim_Z K^f_J, a lower bound on cat(Z_K) for any K.
inline int cat_lower_bound(const SimplicialComplex& k, const SweepOptions& opts = {}) {
    return 1 - nu_direct(k) + max_subcomplex_cdim(flagification(k), opts);
}

// ---------------------------------------------------------------------------
// Cup-length witnesses

struct CupWitness {
    /// Disjoint parts A_1..A_{d+1}, ordered by least vertex.
    std::vector<VertexMask> parts;
    /// Component of K_{A_i} whose indicator is φ_i.
    std::vector<VertexMask> components;
    int degree = 0;
    /// Field over which c was shown not to be a coboundary.
    std::string field;
};

struct CupSearchResult {
    std::optional<CupWitness> witness;
    long long candidates_tested = 0;
    bool budget_exhausted = false;
    int d = -1;
};

inline constexpr long long kDefaultCupBudget = 20000;

namespace detail {

/// Connected components of K_A as vertex masks, ordered by least vertex.
inline std::vector<VertexMask> components(const SimplicialComplex& k, VertexMask a) {
    std::vector<VertexMask> out;
    VertexMask left = a;
    while (left) {
        VertexMask comp = left & (~left + 1);
        VertexMask frontier = comp;
        while (frontier) {
            const int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            const VertexMask fresh = k.neighbors(v) & a & ~comp;
            comp |= fresh;
            frontier |= fresh;
        }
        out.push_back(comp);
        left &= ~comp;
    }
    return out;
}

/// Sign of the permutation sorting the part-ordered vertices of σ.
inline int part_order_sign(const std::vector<int>& verts) {
    int inversions = 0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (verts[i] > verts[j]) ++inversions;
    return inversions % 2 ? -1 : 1;
}

}  // namespace detail

/// Searches for disjoint A_1..A_{d+1} and component indicators whose product
/// cochain is a non-trivial class in H̃^d(K_{A_1 ⊔ ... ⊔ A_{d+1}}).
inline CupSearchResult cup_witness_search(const SimplicialComplex& k, const SweepOptions& opts = {},
                                          long long budget = kDefaultCupBudget) {
    require_flag(k);
    CupSearchResult result;
    const auto sweep = subset_sweep(k, Coefficients::integers(), Theory::Cohomology, opts);
    int d = -1;
    for (const auto& h : sweep->profiles) d = std::max(d, cdim_from_cohomology(h));
    result.d = d;
    if (d < 0 || is_simplex(k)) return result;

    std::vector<VertexMask> unions;
    for (std::size_t u = 0; u < sweep->profiles.size(); ++u)
        if (cdim_from_cohomology(sweep->profiles[u]) == d && mask_size(u) >= 2 * (d + 1))
            unions.push_back(u);
    std::stable_sort(unions.begin(), unions.end(),
                     [](VertexMask a, VertexMask b) { return mask_size(a) > mask_size(b); });

    const std::vector<Coefficients> fields{Coefficients::rationals(),
                                           Coefficients::prime_field(2)};
    for (VertexMask u : unions) {
        const auto faces = faces_within(k, u);
        const ChainComplex cc = simplicial_chain_complex(faces);
        // faces of size d+1 index the rows of δ^{d-1} = ∂_d^T
        const std::size_t top_k = static_cast<std::size_t>(d + 1);
        if (top_k >= cc.dims.size()) continue;
        const ExactMatrix delta = cc.boundary[top_k].transposed();
        std::vector<VertexMask> top_faces;
        for (VertexMask f : faces)
            if (mask_size(f) == d + 1) top_faces.push_back(f);
        std::vector<std::size_t> base_rank;
        for (const auto& f : fields) base_rank.push_back(rank(delta, f));

        const std::vector<int> verts = mask_to_vertices(u);
        std::vector<int> assign(verts.size(), -1);
        std::vector<VertexMask> parts;
        bool stop = false;

        auto test_partition = [&]() {
            std::vector<std::vector<VertexMask>> comps;
            for (VertexMask p : parts) {
                auto c = detail::components(k, p);
                if (c.size() < 2) return;
                c.pop_back();
                comps.push_back(std::move(c));
            }
            std::vector<std::size_t> choice(parts.size(), 0);
            while (!stop) {
                if (result.candidates_tested >= budget) {
                    result.budget_exhausted = true;
                    stop = true;
                    return;
                }
                ++result.candidates_tested;
                std::vector<MatrixEntry> entries = delta.entries();
                const std::size_t col = delta.cols();
                for (std::size_t row = 0; row < top_faces.size(); ++row) {
                    const VertexMask f = top_faces[row];
                    std::vector<int> ordered;
                    bool hit = true;
                    for (std::size_t i = 0; i < parts.size() && hit; ++i) {
                        const VertexMask in = f & parts[i];
                        if (mask_size(in) != 1 || !(in & comps[i][choice[i]])) hit = false;
                        else ordered.push_back(std::countr_zero(in));
                    }
                    if (hit) entries.push_back({row, col, Integer(detail::part_order_sign(ordered))});
                }
                const ExactMatrix augmented(delta.rows(), col + 1, std::move(entries));
                for (std::size_t fi = 0; fi < fields.size(); ++fi) {
                    if (rank(augmented, fields[fi]) > base_rank[fi]) {
                        CupWitness w;
                        w.parts = parts;
                        for (std::size_t i = 0; i < parts.size(); ++i)
                            w.components.push_back(comps[i][choice[i]]);
                        w.degree = d;
                        w.field = fields[fi].to_string();
                        result.witness = std::move(w);
                        stop = true;
                        return;
                    }
                }
                std::size_t i = 0;
                while (i < choice.size() && ++choice[i] == comps[i].size()) choice[i++] = 0;
                if (i == choice.size()) return;
            }
        };

        // restricted growth strings: parts appear in order of least vertex
        auto place = [&](auto&& self, std::size_t pos) -> void {
            if (stop) return;
            const std::size_t remaining = verts.size() - pos;
            if (parts.size() + remaining < static_cast<std::size_t>(d + 1)) return;
            if (pos == verts.size()) {
                if (parts.size() == static_cast<std::size_t>(d + 1)) test_partition();
                return;
            }
            const VertexMask bit = VertexMask{1} << (verts[pos] - 1);
            for (std::size_t p = 0; p < parts.size() && !stop; ++p) {
                parts[p] |= bit;
                self(self, pos + 1);
                parts[p] &= ~bit;
            }
            if (!stop && parts.size() < static_cast<std::size_t>(d + 1)) {
                parts.push_back(bit);
                self(self, pos + 1);
                parts.pop_back();
            }
        };
        place(place, 0);
        if (stop) break;
    }
    return result;
}

// ---------------------------------------------------------------------------

struct CatReport {
    std::optional<int> cat_flag;
    int via_subcomplexes = 0;
    int via_links = 0;
    std::optional<ToomerReport> toomer;
    int nu = 0;
    int lower_bound_nonflag = 0;
    std::optional<CupSearchResult> cup;
};

inline CatReport cat_report(const SimplicialComplex& k, const SweepOptions& opts = {},
                            bool with_cup_search = false) {
    CatReport r;
    const bool flag = is_flag(k);
    r.via_subcomplexes = cat_via_subcomplexes(k, opts);
    r.via_links = cat_via_links(k);
    r.nu = nu_direct(k);
    r.lower_bound_nonflag = cat_lower_bound(k, opts);
    if (flag) {
        r.cat_flag = cat_zk(k, opts);
        r.toomer = toomer_all_fields(k, opts);
        if (with_cup_search) r.cup = cup_witness_search(k, opts);
    }
    return r;
}

}  // namespace flagtor
