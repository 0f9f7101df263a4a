/**
 * @file homology.hpp
 * @brief Reduced simplicial (co)homology over Q, F_p and Z.
 *
 * The augmented chain complex carries the empty face in degree -1, so {∅}
 * has H̃_{-1} of rank 1 and every Hochster-type sum works without special
 * cases. Faces are oriented by ascending vertex order and the boundary sign of
 * dropping the i-th vertex is (-1)^i.
 */
#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "flagtor/complexes.hpp"
#include "flagtor/exact_linalg.hpp"

namespace flagtor {

/// One graded piece: free rank plus torsion as prime powers.
struct DegreeGroup {
    long long rank = 0;
    std::vector<Integer> torsion;

    bool is_zero() const noexcept { return rank == 0 && torsion.empty(); }
    bool operator==(const DegreeGroup&) const = default;

    DegreeGroup& operator+=(const DegreeGroup& o) {
        rank += o.rank;
        torsion.insert(torsion.end(), o.torsion.begin(), o.torsion.end());
        std::sort(torsion.begin(), torsion.end());
        return *this;
    }
};

/// Graded groups indexed by consecutive integer degrees.
class HomologyProfile {
public:
    HomologyProfile() = default;
    explicit HomologyProfile(int min_degree) : min_(min_degree) {}

    int min_degree() const noexcept { return min_; }
    int max_degree() const noexcept { return min_ + static_cast<int>(groups_.size()) - 1; }

    const DegreeGroup& group(int n) const {
        static const DegreeGroup zero;
        if (n < min_ || n > max_degree()) return zero;
        return groups_[n - min_];
    }
    long long rank(int n) const { return group(n).rank; }
    const std::vector<Integer>& torsion(int n) const { return group(n).torsion; }

    void add(int n, const DegreeGroup& g) {
        if (g.is_zero()) return;
        if (groups_.empty()) min_ = std::min(min_, n);
        if (n < min_) {
            groups_.insert(groups_.begin(), min_ - n, DegreeGroup{});
            min_ = n;
        }
        if (n > max_degree()) groups_.resize(n - min_ + 1);
        groups_[n - min_] += g;
    }

    /// Highest degree with a nonzero group.
    std::optional<int> top_degree() const {
        for (int n = max_degree(); n >= min_; --n)
            if (!group(n).is_zero()) return n;
        return std::nullopt;
    }

    bool is_zero() const { return !top_degree().has_value(); }

    long long total_rank() const {
        long long s = 0;
        for (const auto& g : groups_) s += g.rank;
        return s;
    }

    /// Σ (-1)^n rank_n.
    long long euler_characteristic() const {
        long long s = 0;
        for (int n = min_; n <= max_degree(); ++n) s += (n % 2 == 0 ? 1 : -1) * rank(n);
        return s;
    }

    bool operator==(const HomologyProfile& o) const {
        const int lo = std::min(min_, o.min_);
        const int hi = std::max(max_degree(), o.max_degree());
        for (int n = lo; n <= hi; ++n)
            if (!(group(n) == o.group(n))) return false;
        return true;
    }

private:
    int min_ = 0;
    std::vector<DegreeGroup> groups_;
};

/// dims[k] = dim C_{min+k}; boundary[k] maps C_{min+k} to C_{min+k-1}.
struct ChainComplex {
    int min_degree = 0;
    std::vector<std::size_t> dims;
    std::vector<ExactMatrix> boundary;
};

/// dims[k] = dim C^{min+k}; coboundary[k] maps C^{min+k} to C^{min+k+1}.
struct CochainComplex {
    int min_degree = 0;
    std::vector<std::size_t> dims;
    std::vector<ExactMatrix> coboundary;
};

namespace detail {

struct MapData {
    long long rank = 0;
    std::vector<Integer> torsion;  // elementary divisors of the cokernel's torsion
};

inline MapData analyze(const ExactMatrix& m, const Coefficients& c) {
    if (m.is_zero()) return {};
    if (c.kind() == Coefficients::Kind::Integers) {
        const SNFResult snf = smith_normal_form(m);
        return {static_cast<long long>(snf.rank()), elementary_divisors(snf.diagonal)};
    }
    return {static_cast<long long>(rank(m, c)), {}};
}

}  // namespace detail

inline HomologyProfile homology(const ChainComplex& cc, const Coefficients& c) {
    const std::size_t n = cc.dims.size();
    std::vector<detail::MapData> maps(n + 1);
    for (std::size_t k = 0; k < n; ++k) maps[k] = detail::analyze(cc.boundary[k], c);
    HomologyProfile out(cc.min_degree);
    for (std::size_t k = 0; k < n; ++k) {
        DegreeGroup g;
        g.rank = static_cast<long long>(cc.dims[k]) - maps[k].rank - maps[k + 1].rank;
        g.torsion = maps[k + 1].torsion;
        out.add(cc.min_degree + static_cast<int>(k), g);
    }
    return out;
}

inline HomologyProfile cohomology(const CochainComplex& cc, const Coefficients& c) {
    const std::size_t n = cc.dims.size();
    std::vector<detail::MapData> maps(n);
    for (std::size_t k = 0; k < n; ++k) maps[k] = detail::analyze(cc.coboundary[k], c);
    HomologyProfile out(cc.min_degree);
    for (std::size_t k = 0; k < n; ++k) {
        DegreeGroup g;
        g.rank = static_cast<long long>(cc.dims[k]) - maps[k].rank - (k ? maps[k - 1].rank : 0);
        if (k) g.torsion = maps[k - 1].torsion;
        out.add(cc.min_degree + static_cast<int>(k), g);
    }
    return out;
}

/// Position of `face` among the faces of its size, or npos.
inline std::size_t face_position(std::span<const VertexMask> same_size, VertexMask face) {
    auto it = std::lower_bound(same_size.begin(), same_size.end(), face);
    return (it != same_size.end() && *it == face) ? static_cast<std::size_t>(it - same_size.begin())
                                                  : static_cast<std::size_t>(-1);
}

/// Augmented chain complex of a downward-closed face list sorted by FaceOrder.
inline ChainComplex simplicial_chain_complex(std::span<const VertexMask> faces) {
    std::vector<std::span<const VertexMask>> by_size;
    std::size_t i = 0;
    while (i < faces.size()) {
        const int k = mask_size(faces[i]);
        std::size_t j = i;
        while (j < faces.size() && mask_size(faces[j]) == k) ++j;
        if (k != static_cast<int>(by_size.size())) throw Error("face list is not downward closed");
        by_size.push_back(faces.subspan(i, j - i));
        i = j;
    }
    ChainComplex cc;
    cc.min_degree = -1;
    for (std::size_t k = 0; k < by_size.size(); ++k) {
        cc.dims.push_back(by_size[k].size());
        if (k == 0) {
            cc.boundary.emplace_back(0, by_size[0].size());
            continue;
        }
        std::vector<MatrixEntry> entries;
        entries.reserve(by_size[k].size() * k);
        for (std::size_t col = 0; col < by_size[k].size(); ++col) {
            VertexMask f = by_size[k][col];
            int pos = 0;
            for (VertexMask rest = f; rest; rest &= rest - 1, ++pos) {
                const VertexMask sub = f & ~(rest & (~rest + 1));
                const std::size_t row = face_position(by_size[k - 1], sub);
                if (row == static_cast<std::size_t>(-1))
                    throw Error("face list is not downward closed");
                entries.push_back({row, col, Integer(pos % 2 == 0 ? 1 : -1)});
            }
        }
        cc.boundary.emplace_back(by_size[k - 1].size(), by_size[k].size(), std::move(entries));
    }
    return cc;
}

inline CochainComplex dual(const ChainComplex& cc) {
    CochainComplex out;
    out.min_degree = cc.min_degree;
    out.dims = cc.dims;
    for (std::size_t k = 0; k < cc.dims.size(); ++k)
        out.coboundary.push_back(k + 1 < cc.dims.size() ? cc.boundary[k + 1].transposed()
                                                        : ExactMatrix(0, cc.dims[k]));
    return out;
}

/// True iff every composite ∂_{k} ∂_{k+1} vanishes.
inline bool boundary_squares_to_zero(const ChainComplex& cc) {
    for (std::size_t k = 0; k + 1 < cc.boundary.size(); ++k)
        if (!multiply(cc.boundary[k], cc.boundary[k + 1]).is_zero()) return false;
    return true;
}

inline HomologyProfile reduced_homology(std::span<const VertexMask> faces, const Coefficients& c) {
    return homology(simplicial_chain_complex(faces), c);
}

inline HomologyProfile reduced_homology(const SimplicialComplex& k, const Coefficients& c) {
    return reduced_homology(std::span<const VertexMask>(k.faces()), c);
}

inline HomologyProfile reduced_cohomology(std::span<const VertexMask> faces, const Coefficients& c) {
    return cohomology(dual(simplicial_chain_complex(faces)), c);
}

inline HomologyProfile reduced_cohomology(const SimplicialComplex& k, const Coefficients& c) {
    return reduced_cohomology(std::span<const VertexMask>(k.faces()), c);
}

/// Top degree of nonzero reduced integral cohomology, or -1.
inline int cdim_from_cohomology(const HomologyProfile& integral_cohomology) {
    return std::max(-1, integral_cohomology.top_degree().value_or(-1));
}

/// Top degree of nonzero reduced homology, or -1.
inline int hdim_from_homology(const HomologyProfile& h) {
    return std::max(-1, h.top_degree().value_or(-1));
}

inline int cdim_Z(std::span<const VertexMask> faces) {
    return cdim_from_cohomology(reduced_cohomology(faces, Coefficients::integers()));
}

inline int cdim_Z(const SimplicialComplex& k) {
    return cdim_Z(std::span<const VertexMask>(k.faces()));
}

inline int hdim_F(const SimplicialComplex& k, const Coefficients& field) {
    if (!field.is_field()) throw InputError("hdim requires field coefficients");
    return hdim_from_homology(reduced_homology(k, field));
}

/// Primes dividing some torsion coefficient of the profile.
inline std::vector<Integer> torsion_primes(const HomologyProfile& h) {
    std::vector<Integer> out;
    for (int n = h.min_degree(); n <= h.max_degree(); ++n)
        for (const Integer& q : h.torsion(n)) out.push_back(prime_of(q));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace flagtor
