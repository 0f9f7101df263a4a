/**
 * @file pontryagin.hpp
 * @brief Tor, minimal presentations, the Koszul dual algebra and cobar Ext for
 *        loop homology of moment-angle complexes.
 *
 * Multidegrees are exponent vectors alpha with the λ-exponent stored halved;
 * a homological index n paired with alpha stands for the bidegree (-n, 2alpha).
 *
 * Tor is computed two ways for flag K: from reduced homology of full
 * subcomplexes, and from the multigraded slices of the Koszul-type complex
 * Λ[u_1..u_m] ⊗ k[K] with differential
 *
 *   d(u_I ⊗ χ_α) = Σ_{j ∈ supp α, j ∉ I} (-1)^{#{i∈I : i<j}} u_{I∪j} ⊗ χ_{α-e_j}.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "flagtor/complexes.hpp"
#include "flagtor/hochster.hpp"
#include "flagtor/homology.hpp"

namespace flagtor {

using Exponent = std::vector<int>;

struct MultiDegree {
    int i = 0;
    Exponent alpha;
    auto operator<=>(const MultiDegree&) const = default;
};

inline int total_degree(const Exponent& a) { return std::accumulate(a.begin(), a.end(), 0); }

inline VertexMask support(const Exponent& a) {
    VertexMask s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0) s |= VertexMask{1} << i;
    return s;
}

inline bool is_squarefree(const Exponent& a) {
    return std::all_of(a.begin(), a.end(), [](int x) { return x <= 1; });
}

inline Exponent exponent_of_mask(VertexMask j, int m) {
    Exponent a(m, 0);
    for (int i = 0; i < m; ++i) a[i] = static_cast<int>(j >> i & 1);
    return a;
}

inline void require_flag(const SimplicialComplex& k) {
    if (!is_flag(k)) throw NotFlag();
}

inline void check_exponent(const SimplicialComplex& k, const Exponent& beta) {
    if (static_cast<int>(beta.size()) != k.vertex_count())
        throw InputError("multidegree length " + std::to_string(beta.size()) +
                         " does not match m = " + std::to_string(k.vertex_count()));
    for (int b : beta)
        if (b < 0) throw InputError("multidegree entries must be non-negative");
}

// ---------------------------------------------------------------------------
// Tor via full subcomplexes

struct TorEntry {
    int n;
    VertexMask subset;
    DegreeGroup group;
    bool operator==(const TorEntry&) const = default;
};

struct TorTable {
    Coefficients coeff = Coefficients::rationals();
    /// Nonzero entries sorted by (n, subset); entry (n, J) sits in bidegree (-|J|, 2J).
    std::vector<TorEntry> entries;

    DegreeGroup at(int n, VertexMask j) const {
        for (const auto& e : entries)
            if (e.n == n && e.subset == j) return e.group;
        return {};
    }
};

/// Tor_n at (-|J|, 2J) is H̃_{n-1}(K_J).
inline TorTable tor_via_subcomplexes(const SimplicialComplex& k, const Coefficients& c,
                                     const SweepOptions& opts = {}) {
    require_flag(k);
    const auto sweep = subset_sweep(k, c, Theory::Homology, opts);
    TorTable t;
    t.coeff = c;
    for (std::size_t j = 0; j < sweep->profiles.size(); ++j) {
        const HomologyProfile& h = sweep->profiles[j];
        for (int d = h.min_degree(); d <= h.max_degree(); ++d)
            if (!h.group(d).is_zero()) t.entries.push_back({d + 1, j, h.group(d)});
    }
    std::sort(t.entries.begin(), t.entries.end(), [](const TorEntry& a, const TorEntry& b) {
        return a.n != b.n ? a.n < b.n : a.subset < b.subset;
    });
    return t;
}

/// Tor at the single multidegree 2J, indexed by n; needs no subset sweep.
inline HomologyProfile tor_at_subset(const SimplicialComplex& k, const Coefficients& c,
                                     VertexMask j) {
    require_flag(k);
    const HomologyProfile h = reduced_homology(faces_within(k, j), c);
    HomologyProfile out(0);
    for (int d = h.min_degree(); d <= h.max_degree(); ++d) out.add(d + 1, h.group(d));
    return out;
}

// ---------------------------------------------------------------------------
// Koszul-type complex, one multidegree at a time

/// Slice at 2β, graded by t = |α|; boundary[t] maps degree t to t-1.
inline ChainComplex koszul_slice(const SimplicialComplex& k, const Exponent& beta) {
    check_exponent(k, beta);
    const VertexMask s = support(beta);
    VertexMask s2 = 0;
    for (int i = 0; i < k.vertex_count(); ++i)
        if (beta[i] >= 2) s2 |= VertexMask{1} << i;
    const int total = total_degree(beta);

    // basis element is determined by I; α = β - I
    std::vector<std::vector<VertexMask>> basis(total + 1);
    for (VertexMask a : k.faces()) {
        if (!is_subset(s2, a) || !is_subset(a, s)) continue;
        const VertexMask free_part = s & ~a;
        for (VertexMask t = s2;; t = (t - 1) & s2) {
            const VertexMask i = free_part | t;
            basis[total - mask_size(i)].push_back(i);
            if (t == 0) break;
        }
    }
    std::vector<std::unordered_map<VertexMask, std::size_t>> index(total + 1);
    for (int t = 0; t <= total; ++t) {
        std::sort(basis[t].begin(), basis[t].end());
        for (std::size_t n = 0; n < basis[t].size(); ++n) index[t].emplace(basis[t][n], n);
    }

    ChainComplex cc;
    cc.min_degree = 0;
    for (int t = 0; t <= total; ++t) {
        cc.dims.push_back(basis[t].size());
        if (t == 0) {
            cc.boundary.emplace_back(0, basis[0].size());
            continue;
        }
        std::vector<MatrixEntry> entries;
        for (std::size_t col = 0; col < basis[t].size(); ++col) {
            const VertexMask i = basis[t][col];
            // supp α: vertices where β exceeds the I part
            VertexMask supp_alpha = 0;
            for (VertexMask rest = s; rest; rest &= rest - 1) {
                const int v = std::countr_zero(rest);
                if (beta[v] - static_cast<int>(i >> v & 1) > 0) supp_alpha |= VertexMask{1} << v;
            }
            for (VertexMask rest = supp_alpha & ~i; rest; rest &= rest - 1) {
                const int j = std::countr_zero(rest);
                const VertexMask target = i | VertexMask{1} << j;
                const int below = mask_size(i & full_mask(j));
                entries.push_back(
                    {index[t - 1].at(target), col, Integer(below % 2 == 0 ? 1 : -1)});
            }
        }
        cc.boundary.emplace_back(basis[t - 1].size(), basis[t].size(), std::move(entries));
    }
    return cc;
}

/// Σ_t (-1)^t dim M_t of a slice.
inline long long slice_euler_characteristic(const ChainComplex& cc) {
    long long s = 0;
    for (std::size_t t = 0; t < cc.dims.size(); ++t)
        s += (t % 2 == 0 ? 1 : -1) * static_cast<long long>(cc.dims[t]);
    return s;
}

/// Homology of the Koszul slice at 2β, indexed by homological degree.
inline HomologyProfile tor_via_koszul_complex(const SimplicialComplex& k, const Coefficients& c,
                                              const Exponent& beta) {
    require_flag(k);
    return homology(koszul_slice(k, beta), c);
}

// ---------------------------------------------------------------------------
// Minimal presentation

struct PresentationCounts {
    Coefficients coeff = Coefficients::rationals();
    /// (J, H̃_0(K_J)) and (J, H̃_1(K_J)) for nonzero groups, ordered by J.
    std::vector<std::pair<VertexMask, DegreeGroup>> generators;
    std::vector<std::pair<VertexMask, DegreeGroup>> relations;
    long long total_generators = 0;
    long long total_relations = 0;
    /// Over Z the counts only bound the minimal presentation from below.
    bool lower_bound_only = false;
};

inline PresentationCounts generator_relation_counts(const SimplicialComplex& k,
                                                    const Coefficients& c,
                                                    const SweepOptions& opts = {}) {
    require_flag(k);
    const auto sweep = subset_sweep(k, c, Theory::Homology, opts);
    PresentationCounts out;
    out.coeff = c;
    out.lower_bound_only = !c.is_field();
    for (std::size_t j = 0; j < sweep->profiles.size(); ++j) {
        const HomologyProfile& h = sweep->profiles[j];
        if (!h.group(0).is_zero()) {
            out.generators.emplace_back(j, h.group(0));
            out.total_generators += h.rank(0);
        }
        if (!h.group(1).is_zero()) {
            out.relations.emplace_back(j, h.group(1));
            out.total_relations += h.rank(1);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Normal words of the Koszul dual k[K]^!

namespace detail {

inline std::vector<VertexMask> adjacency_masks(const SimplicialComplex& k) {
    std::vector<VertexMask> adj(k.vertex_count());
    for (int v = 0; v < k.vertex_count(); ++v) adj[v] = k.neighbors(v);
    return adj;
}

/// Whether appending letter a keeps the word in normal form.
inline bool extends_normally(const std::vector<int>& word, int a, const std::vector<VertexMask>& adj) {
    int pos = static_cast<int>(word.size()) - 1;
    while (pos >= 0 && (adj[a] >> word[pos] & 1)) {
        if (word[pos] > a) return false;
        --pos;
    }
    return pos < 0 || word[pos] != a;
}

template <class Visit>
void enumerate_normal_words(const std::vector<VertexMask>& adj, int max_len, std::vector<int>& word,
                            Visit&& visit) {
    visit(word);
    if (static_cast<int>(word.size()) == max_len) return;
    for (int a = 0; a < static_cast<int>(adj.size()); ++a) {
        if (!extends_normally(word, a, adj)) continue;
        word.push_back(a);
        enumerate_normal_words(adj, max_len, word, visit);
        word.pop_back();
    }
}

}  // namespace detail

struct KoszulDualWord {
    /// 1-based letters.
    std::vector<int> word;
    Exponent alpha;
};

struct KoszulDualBasis {
    int length = 0;
    std::vector<KoszulDualWord> words;
    std::map<Exponent, long long> counts;
};

/// Normal words of length s: u_a² = 0 and u_a u_b = -u_b u_a on edges {a,b} ∈ K.
inline KoszulDualBasis koszul_dual_basis(const SimplicialComplex& k, int s) {
    if (s < 0) throw InputError("word length must be non-negative");
    const auto adj = detail::adjacency_masks(k);
    KoszulDualBasis out;
    out.length = s;
    std::vector<int> word;
    detail::enumerate_normal_words(adj, s, word, [&](const std::vector<int>& w) {
        if (static_cast<int>(w.size()) != s) return;
        KoszulDualWord kw;
        kw.alpha.assign(k.vertex_count(), 0);
        for (int a : w) {
            kw.word.push_back(a + 1);
            ++kw.alpha[a];
        }
        ++out.counts[kw.alpha];
        out.words.push_back(std::move(kw));
    });
    return out;
}

/// Number of normal words per letter multiset, for all lengths up to max_len.
inline std::map<Exponent, long long> normal_word_counts(const SimplicialComplex& k, int max_len) {
    const auto adj = detail::adjacency_masks(k);
    std::map<Exponent, long long> counts;
    std::vector<int> word;
    Exponent alpha(k.vertex_count(), 0);
    detail::enumerate_normal_words(adj, max_len, word, [&](const std::vector<int>& w) {
        std::fill(alpha.begin(), alpha.end(), 0);
        for (int a : w) ++alpha[a];
        ++counts[alpha];
    });
    return counts;
}

// ---------------------------------------------------------------------------
// Cobar construction of the dual coalgebra of k[K], one multidegree at a time

struct CobarSlice {
    Exponent beta;
    /// dims[s] = number of words [α_1|...|α_s]; coboundary[s] maps length s to s+1.
    std::vector<std::size_t> dims;
    std::vector<ExactMatrix> coboundary;
};

inline constexpr int kDefaultCobarBound = 8;

inline CobarSlice cobar_slice(const SimplicialComplex& k, const Exponent& beta,
                              int max_total = kDefaultCobarBound) {
    check_exponent(k, beta);
    const int total = total_degree(beta);
    if (total > max_total)
        throw BoundExceeded("cobar slice |beta| = " + std::to_string(total) + " exceeds bound " +
                            std::to_string(max_total));
    const int m = k.vertex_count();
    // mixed-radix encoding of exponents a <= beta
    std::vector<std::uint32_t> radix(m, 1);
    std::uint32_t box = 1;
    for (int i = 0; i < m; ++i) {
        radix[i] = box;
        box *= static_cast<std::uint32_t>(beta[i] + 1);
    }
    auto digit = [&](std::uint32_t code, int i) { return static_cast<int>(code / radix[i] % (beta[i] + 1)); };
    auto supp_of = [&](std::uint32_t code) {
        VertexMask s = 0;
        for (int i = 0; i < m; ++i)
            if (digit(code, i) > 0) s |= VertexMask{1} << i;
        return s;
    };
    auto fits = [&](std::uint32_t a, std::uint32_t b) {  // a <= b coordinatewise
        for (int i = 0; i < m; ++i)
            if (digit(a, i) > digit(b, i)) return false;
        return true;
    };
    std::vector<std::uint32_t> letters;  // nonzero a <= beta with supp a ∈ K
    std::vector<int> letter_degree(box, 0);
    for (std::uint32_t code = 1; code < box; ++code) {
        int d = 0;
        for (int i = 0; i < m; ++i) d += digit(code, i);
        letter_degree[code] = d;
        if (k.contains(supp_of(code))) letters.push_back(code);
    }

    using Word = std::vector<std::uint32_t>;
    std::vector<std::vector<Word>> words(total + 1);
    Word current;
    auto extend = [&](auto&& self, std::uint32_t remaining) -> void {
        if (remaining == 0) {
            words[current.size()].push_back(current);
            return;
        }
        for (std::uint32_t a : letters) {
            if (!fits(a, remaining)) continue;
            current.push_back(a);
            self(self, remaining - a);
            current.pop_back();
        }
    };
    extend(extend, box - 1);

    CobarSlice out;
    out.beta = beta;
    std::vector<std::map<Word, std::size_t>> index(total + 2);
    for (int s = 0; s <= total; ++s) {
        std::sort(words[s].begin(), words[s].end());
        for (std::size_t n = 0; n < words[s].size(); ++n) index[s].emplace(words[s][n], n);
        out.dims.push_back(words[s].size());
    }
    for (int s = 0; s <= total; ++s) {
        const std::size_t target_dim = s + 1 <= total ? words[s + 1].size() : 0;
        std::vector<MatrixEntry> entries;
        if (s + 1 <= total) {
            for (std::size_t col = 0; col < words[s].size(); ++col) {
                const Word& w = words[s][col];
                for (std::size_t pos = 0; pos < w.size(); ++pos) {
                    const long sign = (pos + 1) % 2 == 0 ? 1 : -1;  // (-1)^i with i 1-based
                    for (std::uint32_t a : letters) {
                        if (a == w[pos] || !fits(a, w[pos])) continue;
                        Word split(w.begin(), w.begin() + pos);
                        split.push_back(a);
                        split.push_back(w[pos] - a);
                        split.insert(split.end(), w.begin() + pos + 1, w.end());
                        entries.push_back({index[s + 1].at(split), col, Integer(sign)});
                    }
                }
            }
        }
        out.coboundary.emplace_back(target_dim, words[s].size(), std::move(entries));
    }
    return out;
}

inline bool cobar_squares_to_zero(const CobarSlice& c) {
    for (std::size_t s = 0; s + 1 < c.coboundary.size(); ++s)
        if (!multiply(c.coboundary[s + 1], c.coboundary[s]).is_zero()) return false;
    return true;
}

/// dim Ext^s_{k[K]}(k,k) at 2β for s = 0..|β|.
inline std::vector<long long> cobar_ext(const SimplicialComplex& k, const Coefficients& field,
                                        const Exponent& beta, int max_total = kDefaultCobarBound) {
    if (!field.is_field()) throw InputError("cobar Ext requires field coefficients");
    const CobarSlice slice = cobar_slice(k, beta, max_total);
    std::vector<long long> ranks;
    for (const auto& d : slice.coboundary) ranks.push_back(static_cast<long long>(rank(d, field)));
    std::vector<long long> ext;
    for (std::size_t s = 0; s < slice.dims.size(); ++s)
        ext.push_back(static_cast<long long>(slice.dims[s]) - ranks[s] - (s ? ranks[s - 1] : 0));
    return ext;
}

// ---------------------------------------------------------------------------
// Milnor-Moore spectral sequence

struct MilnorMooreReport {
    long long e2_total = 0;
    long long einf_total = 0;
    bool collapse = false;
};

/// E^2 total from Koszul slices at every squarefree J; E^∞ total from H_*(Z_K).
inline MilnorMooreReport milnor_moore_check(const SimplicialComplex& k, const Coefficients& field,
                                            const SweepOptions& opts = {}) {
    require_flag(k);
    require_sweepable(k);
    if (!field.is_field()) throw InputError("Milnor-Moore check requires field coefficients");
    MilnorMooreReport r;
    const std::size_t total = std::size_t{1} << k.vertex_count();
    for (std::size_t j = 0; j < total; ++j)
        r.e2_total += homology(koszul_slice(k, exponent_of_mask(j, k.vertex_count())), field)
                          .total_rank();
    r.einf_total = zk_homology(k, field, opts).totals.total_rank();
    r.collapse = r.e2_total == r.einf_total;
    return r;
}

}  // namespace flagtor
