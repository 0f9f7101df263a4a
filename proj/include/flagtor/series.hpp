/**
 * @file series.hpp
 * @brief Truncated multigraded power series, Poincaré series of loop homology,
 *        rational homotopy ranks and their product formula.
 *
 * A monomial x^α stands for t^{-|α|} λ^{2α}: the λ-exponent is stored halved
 * and the t-exponent is implied. Coefficients are dense over all monomials of
 * total degree at most N, laid out by a MonomialIndex.
 */
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "flagtor/complexes.hpp"
#include "flagtor/errors.hpp"
#include "flagtor/exact_linalg.hpp"
#include "flagtor/pontryagin.hpp"

namespace flagtor {

inline constexpr int kDefaultTruncation = 8;
inline constexpr std::size_t kMaxMonomials = 8'000'000;

/// Dense enumeration of all exponents in m variables with total degree <= N.
///
/// Monomials are ordered by degree; inside one degree, by descending α_0,
/// then descending α_1, and so on.
class MonomialIndex {
public:
    MonomialIndex(int m, int n) : m_(m), n_(n) {
        if (m < 1 || n < 0) throw InputError("series needs m >= 1 and N >= 0");
        const int top = m + n + 1;
        binom_.assign(top + 1, std::vector<std::uint64_t>(top + 1, 0));
        for (int a = 0; a <= top; ++a) {
            binom_[a][0] = 1;
            for (int b = 1; b <= a; ++b) {
                const std::uint64_t s = binom_[a - 1][b - 1] + binom_[a - 1][b];
                binom_[a][b] = std::min<std::uint64_t>(s, UINT64_MAX / 4);
            }
        }
        const std::uint64_t count = choose(m + n, n);
        if (count > kMaxMonomials)
            throw BoundExceeded("series with m = " + std::to_string(m) + ", N = " +
                                std::to_string(n) + " needs " + std::to_string(count) +
                                " coefficients");
        offsets_.resize(n + 2);
        for (int d = 0; d <= n + 1; ++d) offsets_[d] = d == 0 ? 0 : choose(d - 1 + m, m);
        exps_.reserve(count * m);
        degrees_.reserve(count);
        std::vector<std::uint8_t> cur(m, 0);
        for (int d = 0; d <= n; ++d) fill(cur, 0, d, d);
    }

    int variables() const noexcept { return m_; }
    int truncation() const noexcept { return n_; }
    std::size_t size() const noexcept { return degrees_.size(); }
    std::size_t degree_begin(int d) const { return offsets_.at(d); }
    std::size_t degree_end(int d) const { return offsets_.at(d + 1); }
    int degree(std::size_t idx) const { return degrees_[idx]; }
    const std::uint8_t* exponent(std::size_t idx) const { return exps_.data() + idx * m_; }

    Exponent exponent_vector(std::size_t idx) const {
        return Exponent(exponent(idx), exponent(idx) + m_);
    }

    /// Index of a + b (b may be null); requires |a + b| <= N.
    std::size_t rank(const std::uint8_t* a, const std::uint8_t* b = nullptr) const {
        int d = 0;
        for (int i = 0; i < m_; ++i) d += a[i] + (b ? b[i] : 0);
        std::size_t r = offsets_[d];
        int remaining = d;
        for (int i = 0; i + 1 < m_ && remaining > 0; ++i) {
            const int ai = a[i] + (b ? b[i] : 0);
            const int gap = remaining - ai - 1;
            if (gap >= 0) r += choose(gap + m_ - i - 1, m_ - i - 1);
            remaining -= ai;
        }
        return r;
    }

    std::size_t rank(const Exponent& a) const {
        if (static_cast<int>(a.size()) != m_) throw InputError("exponent length mismatch");
        if (total_degree(a) > n_) throw InputError("exponent beyond truncation");
        std::vector<std::uint8_t> v(a.begin(), a.end());
        return rank(v.data());
    }

private:
    std::uint64_t choose(int a, int b) const {
        if (b < 0 || a < b) return 0;
        return binom_[a][b];
    }

    void fill(std::vector<std::uint8_t>& cur, int i, int remaining, int d) {
        if (i == m_ - 1) {
            cur[i] = static_cast<std::uint8_t>(remaining);
            exps_.insert(exps_.end(), cur.begin(), cur.end());
            degrees_.push_back(static_cast<std::uint8_t>(d));
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            cur[i] = static_cast<std::uint8_t>(v);
            fill(cur, i + 1, remaining - v, d);
        }
    }

    int m_;
    int n_;
    std::vector<std::vector<std::uint64_t>> binom_;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint8_t> exps_;
    std::vector<std::uint8_t> degrees_;
};

inline std::shared_ptr<const MonomialIndex> monomial_index(int m, int n) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialIndex>> memo;
    std::lock_guard lock(mutex);
    auto& slot = memo[{m, n}];
    if (!slot) slot = std::make_shared<const MonomialIndex>(m, n);
    return slot;
}

template <class Coeff>
class TruncatedSeries {
public:
    TruncatedSeries(int m, int n) : index_(monomial_index(m, n)), coeffs_(index_->size(), 0) {}

    static TruncatedSeries one(int m, int n) {
        TruncatedSeries s(m, n);
        s.coeffs_[0] = 1;
        return s;
    }

    int variables() const noexcept { return index_->variables(); }
    int truncation() const noexcept { return index_->truncation(); }
    const MonomialIndex& index() const noexcept { return *index_; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    Coeff& operator[](std::size_t idx) { return coeffs_[idx]; }
    const Coeff& operator[](std::size_t idx) const { return coeffs_[idx]; }

    /// Coefficient of x^α; zero beyond the truncation.
    Coeff coeff(const Exponent& a) const {
        if (total_degree(a) > truncation()) return 0;
        return coeffs_[index_->rank(a)];
    }

    void set(const Exponent& a, Coeff v) { coeffs_[index_->rank(a)] = std::move(v); }

    /// Nonzero terms in index order.
    std::vector<std::pair<Exponent, Coeff>> terms() const {
        std::vector<std::pair<Exponent, Coeff>> out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) out.emplace_back(index_->exponent_vector(i), coeffs_[i]);
        return out;
    }

    /// Indices of nonzero coefficients, grouped by degree.
    std::vector<std::vector<std::size_t>> support_by_degree() const {
        std::vector<std::vector<std::size_t>> out(truncation() + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) out[index_->degree(i)].push_back(i);
        return out;
    }

    /// Same series cut to a lower truncation.
    TruncatedSeries truncated(int n) const {
        if (n > truncation()) throw InputError("cannot raise the truncation of a series");
        TruncatedSeries out(variables(), n);
        for (std::size_t i = 0; i < out.size(); ++i) out.coeffs_[i] = coeffs_[i];
        return out;
    }

    /// Sum of coefficients per total degree.
    std::vector<Coeff> graded_coefficients() const {
        std::vector<Coeff> out(truncation() + 1, 0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out[index_->degree(i)] += coeffs_[i];
        return out;
    }

    bool operator==(const TruncatedSeries& o) const {
        return variables() == o.variables() && truncation() == o.truncation() &&
               coeffs_ == o.coeffs_;
    }

private:
    std::shared_ptr<const MonomialIndex> index_;
    std::vector<Coeff> coeffs_;
};

using MultiSeries = TruncatedSeries<Rational>;
using IntegerSeries = TruncatedSeries<Integer>;
/// l_α at every α with |α| <= N; the constant term is zero.
using RankTable = IntegerSeries;

inline MultiSeries to_rational(const IntegerSeries& s) {
    MultiSeries out(s.variables(), s.truncation());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != 0) out[i] = Rational(s[i]);
    return out;
}

namespace detail {

template <class Coeff>
void require_compatible(const TruncatedSeries<Coeff>& f, const TruncatedSeries<Coeff>& g) {
    if (f.variables() != g.variables()) throw InputError("series have different variable counts");
}

template <class Coeff>
void require_unit(const TruncatedSeries<Coeff>& f) {
    if (f[0] != 1) throw NonUnitConstantTerm();
}

}  // namespace detail

template <class Coeff>
TruncatedSeries<Coeff> mul(const TruncatedSeries<Coeff>& f, const TruncatedSeries<Coeff>& g) {
    detail::require_compatible(f, g);
    const int n = std::min(f.truncation(), g.truncation());
    TruncatedSeries<Coeff> h(f.variables(), n);
    const auto& ix = h.index();
    const auto fs = f.support_by_degree();
    const auto gs = g.support_by_degree();
    for (int a = 0; a <= n; ++a)
        for (std::size_t i : fs[a])
            for (int b = 0; a + b <= n; ++b)
                for (std::size_t j : gs[b])
                    h[ix.rank(f.index().exponent(i), g.index().exponent(j))] += f[i] * g[j];
    return h;
}

/// 1/f; f must have constant term 1.
template <class Coeff>
TruncatedSeries<Coeff> inverse(const TruncatedSeries<Coeff>& f) {
    detail::require_unit(f);
    TruncatedSeries<Coeff> g(f.variables(), f.truncation());
    const auto& ix = g.index();
    const auto fs = f.support_by_degree();
    g[0] = 1;
    for (int d = 1; d <= f.truncation(); ++d)
        for (int k = 1; k <= d; ++k)
            for (std::size_t b : fs[k])
                for (std::size_t a = ix.degree_begin(d - k); a < ix.degree_end(d - k); ++a)
                    if (g[a] != 0) g[ix.rank(ix.exponent(a), ix.exponent(b))] -= f[b] * g[a];
    return g;
}

/// E(-ln f) where E multiplies the coefficient of x^α by |α|.
template <class Coeff>
TruncatedSeries<Coeff> neg_log_derivative(const TruncatedSeries<Coeff>& f) {
    detail::require_unit(f);
    TruncatedSeries<Coeff> e(f.variables(), f.truncation());
    const auto& ix = e.index();
    const auto fs = f.support_by_degree();
    for (std::size_t i = 1; i < f.size(); ++i) e[i] = -Coeff(ix.degree(i)) * f[i];
    for (int d = 2; d <= f.truncation(); ++d)
        for (int k = 1; k < d; ++k)
            for (std::size_t b : fs[k])
                for (std::size_t a = ix.degree_begin(d - k); a < ix.degree_end(d - k); ++a)
                    if (e[a] != 0) e[ix.rank(ix.exponent(a), ix.exponent(b))] -= f[b] * e[a];
    return e;
}

/// -ln f = Σ_{k≥1} (1-f)^k / k, truncated.
template <class Coeff>
MultiSeries neg_log(const TruncatedSeries<Coeff>& f) {
    const auto e = neg_log_derivative(f);
    MultiSeries w(f.variables(), f.truncation());
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e[i] != 0) w[i] = Rational(e[i]) / e.index().degree(i);
    return w;
}

// ---------------------------------------------------------------------------
// Poincaré series of loop homology

/// χ̃(K_J) for every J ⊆ [m], by a subset-sum transform over the faces.
inline std::vector<long long> reduced_euler_chars(const SimplicialComplex& k) {
    require_sweepable(k);
    const int m = k.vertex_count();
    std::vector<long long> g(std::size_t{1} << m, 0);
    for (VertexMask f : k.faces()) g[f] = mask_size(f) % 2 == 0 ? 1 : -1;
    for (int i = 0; i < m; ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (j >> i & 1) g[j] += g[j ^ (std::size_t{1} << i)];
    for (auto& v : g) v = -v;
    return g;
}

/// -Σ_J χ̃(K_J) x^J over squarefree J with |J| <= N.
inline IntegerSeries euler_denominator(const SimplicialComplex& k, int n) {
    const auto chi = reduced_euler_chars(k);
    const int m = k.vertex_count();
    IntegerSeries f(m, n);
    std::vector<std::uint8_t> e(m);
    for (std::size_t j = 0; j < chi.size(); ++j) {
        if (chi[j] == 0 || mask_size(j) > n) continue;
        for (int i = 0; i < m; ++i) e[i] = static_cast<std::uint8_t>(j >> i & 1);
        f[f.index().rank(e.data())] = static_cast<long>(-chi[j]);
    }
    return f;
}

inline IntegerSeries poincare_ozk_integral(const SimplicialComplex& k, int n) {
    require_flag(k);
    return inverse(euler_denominator(k, n));
}

/// Multigraded Poincaré series of H_*(ΩZ_K) for flag K.
inline MultiSeries poincare_ozk(const SimplicialComplex& k, int n = kDefaultTruncation) {
    return to_rational(poincare_ozk_integral(k, n));
}

/// Poincaré series of H_*(ΩDJ(K)) = F(ΩZ_K) · Π (1 + x_i).
inline MultiSeries poincare_odj(const SimplicialComplex& k, int n = kDefaultTruncation) {
    IntegerSeries f = poincare_ozk_integral(k, n);
    const auto& ix = f.index();
    const int m = k.vertex_count();
    std::vector<std::uint8_t> buf(m);
    for (int v = 0; v < m; ++v) {
        // multiply by (1 + x_v) in place, highest degree first
        for (std::size_t a = ix.size(); a-- > 0;) {
            const std::uint8_t* e = ix.exponent(a);
            if (e[v] == 0) continue;
            std::copy(e, e + m, buf.begin());
            --buf[v];
            f[a] += f[ix.rank(buf.data())];
        }
    }
    return to_rational(f);
}

struct PanovRayReport {
    /// Coefficients of t^0, t^1, ... of (1+t)^{m-n} Σ h_i (-t)^i.
    std::vector<Integer> lhs;
    /// Coefficients of -Σ_J χ̃(K_J) t^{|J|}.
    std::vector<Integer> rhs;
    bool equal = false;
};

inline PanovRayReport panov_ray_check(const SimplicialComplex& k) {
    require_flag(k);
    const int m = k.vertex_count();
    const FVector fv = h_vector(k);
    const int n = static_cast<int>(fv.h.size()) - 1;
    PanovRayReport r;
    r.lhs.assign(m + 1, 0);
    std::vector<Integer> poly(n + 1);
    for (int i = 0; i <= n; ++i) poly[i] = (i % 2 == 0 ? 1 : -1) * Integer(static_cast<long>(fv.h[i]));
    for (int e = 0; e < m - n; ++e) {
        std::vector<Integer> next(poly.size() + 1, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] += poly[i];
        }
        poly = std::move(next);
    }
    for (std::size_t i = 0; i < poly.size() && i <= static_cast<std::size_t>(m); ++i) r.lhs[i] = poly[i];
    r.rhs.assign(m + 1, 0);
    const auto chi = reduced_euler_chars(k);
    for (std::size_t j = 0; j < chi.size(); ++j) r.rhs[mask_size(j)] -= static_cast<long>(chi[j]);
    r.equal = r.lhs == r.rhs;
    return r;
}

// ---------------------------------------------------------------------------
// Homotopy ranks

inline int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    return n > 1 ? -result : result;
}

inline int exponent_gcd(const std::uint8_t* a, int m) {
    int g = 0;
    for (int i = 0; i < m; ++i) g = std::gcd(g, static_cast<int>(a[i]));
    return g;
}

/// l_α = dim of π_*(ΩZ_K) ⊗ Q in bidegree (-|α|, 2α) for 0 < |α| <= N.
inline RankTable homotopy_ranks(const SimplicialComplex& k, int n = kDefaultTruncation) {
    require_flag(k);
    const int m = k.vertex_count();
    // P(λ) = -Σ χ̃(K_J) (-λ)^J; e = E(-ln P)
    IntegerSeries p = euler_denominator(k, n);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.index().degree(i) % 2 == 1) p[i] = -p[i];
    const IntegerSeries e = neg_log_derivative(p);
    const auto& ix = e.index();
    RankTable l(m, n);
    std::vector<std::uint8_t> buf(m);
    for (std::size_t a = 1; a < ix.size(); ++a) {
        const std::uint8_t* alpha = ix.exponent(a);
        const int g = exponent_gcd(alpha, m);
        Integer sum = 0;
        for (int d = 1; d <= g; ++d) {
            if (g % d || mobius(d) == 0) continue;
            for (int i = 0; i < m; ++i) buf[i] = static_cast<std::uint8_t>(alpha[i] / d);
            sum += mobius(d) * e[ix.rank(buf.data())];
        }
        const int deg = ix.degree(a);
        if (sum % deg != 0)
            throw IntegralityViolation("homotopy rank at degree " + std::to_string(deg) +
                                       " is not an integer");
        Integer value = sum / deg;
        if (deg % 2 == 1) value = -value;
        if (value < 0)
            throw IntegralityViolation("homotopy rank at degree " + std::to_string(deg) +
                                       " is negative");
        l[a] = value;
    }
    return l;
}

/// Π_α (1 - (-1)^{|α|} x^α)^{(-1)^{|α|+1} l_α}, truncated at the table's bound.
inline MultiSeries pbw_reconstruct(const RankTable& ranks) {
    const int m = ranks.variables();
    IntegerSeries f = IntegerSeries::one(m, ranks.truncation());
    const auto& ix = f.index();
    const int n = ranks.truncation();
    std::vector<std::uint8_t> buf(m);
    std::vector<Integer> c;
    for (std::size_t a = 1; a < ix.size(); ++a) {
        if (ranks[a] == 0) continue;
        if (ranks[a] < 0) throw InputError("homotopy ranks must be non-negative");
        const int d = ix.degree(a);
        const std::uint8_t* alpha = ix.exponent(a);
        // factor Σ_k c_k x^{kα}
        const Integer& l = ranks[a];
        c.assign(n / d + 1, 0);
        c[0] = 1;
        for (int kk = 1; kk <= n / d; ++kk) {
            if (d % 2 == 1)
                c[kk] = c[kk - 1] * (l - (kk - 1)) / kk;  // C(l, k)
            else
                c[kk] = c[kk - 1] * (l + (kk - 1)) / kk;  // C(l+k-1, k)
        }
        for (std::size_t g = ix.degree_end(n - d); g-- > 0;) {
            const std::size_t target = ix.rank(ix.exponent(g), alpha);
            Integer add = c[1] * f[g];
            std::copy(ix.exponent(g), ix.exponent(g) + m, buf.begin());
            for (int kk = 2; kk <= n / d; ++kk) {
                bool ok = true;
                for (int i = 0; i < m; ++i) {
                    if (buf[i] < alpha[i]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
                for (int i = 0; i < m; ++i) buf[i] = static_cast<std::uint8_t>(buf[i] - alpha[i]);
                add += c[kk] * f[ix.rank(buf.data())];
            }
            f[target] += add;
        }
    }
    return to_rational(f);
}

struct ChiInequality {
    Rational value;
    /// True when the compositional formula was used (gcd(α) = 1).
    bool direct = false;
    bool nonnegative = false;
};

/// l_α at a single multidegree, from the box of exponents below α.
inline Integer homotopy_rank_at(const SimplicialComplex& k, const Exponent& alpha) {
    require_flag(k);
    check_exponent(k, alpha);
    const int deg = total_degree(alpha);
    if (deg == 0) return 0;
    const int m = k.vertex_count();
    const VertexMask s = support(alpha);
    std::vector<int> radix(m, 1);
    int box = 1;
    for (int i = 0; i < m; ++i) {
        radix[i] = box;
        box *= alpha[i] + 1;
    }
    auto digit = [&](int code, int i) { return code / radix[i] % (alpha[i] + 1); };
    auto degree_of = [&](int code) {
        int d = 0;
        for (int i = 0; i < m; ++i) d += digit(code, i);
        return d;
    };
    // p_J at squarefree sub-boxes J ⊆ supp α
    std::vector<std::pair<int, Integer>> p;  // (code, p_J), J nonempty
    for (VertexMask j = s; j; j = (j - 1) & s) {
        int code = 0;
        for (VertexMask r = j; r; r &= r - 1) code += radix[std::countr_zero(r)];
        const long long chi = reduced_euler_char(faces_within(k, j));
        if (chi != 0) p.emplace_back(code, Integer(static_cast<long>((mask_size(j) % 2 ? 1 : -1) * chi)));
    }
    auto fits = [&](int a, int b) {
        for (int i = 0; i < m; ++i)
            if (digit(a, i) > digit(b, i)) return false;
        return true;
    };
    std::vector<int> order(box);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return degree_of(a) < degree_of(b); });
    std::vector<Integer> e(box, 0);
    std::vector<Integer> pv(box, 0);
    for (const auto& [code, v] : p) pv[code] = v;
    for (int g : order) {
        if (g == 0) continue;
        Integer v = -degree_of(g) * pv[g];
        for (const auto& [code, pc] : p)
            if (code != g && fits(code, g)) v -= pc * e[g - code];
        e[g] = v;
    }
    int gg = 0;
    for (int a : alpha) gg = std::gcd(gg, a);
    Integer sum = 0;
    for (int d = 1; d <= gg; ++d) {
        if (gg % d || mobius(d) == 0) continue;
        int code = 0;
        for (int i = 0; i < m; ++i) code += alpha[i] / d * radix[i];
        sum += mobius(d) * e[code];
    }
    if (sum % deg != 0) throw IntegralityViolation("homotopy rank is not an integer");
    Integer value = sum / deg;
    return deg % 2 ? Integer(-value) : value;
}

/// Σ_{N≥1} (1/N) Σ_{α = J_1+...+J_N} Π χ̃(K_{J_i}) over nonempty squarefree J_i.
inline ChiInequality chi_inequality(const SimplicialComplex& k, const Exponent& alpha) {
    require_flag(k);
    check_exponent(k, alpha);
    int g = 0;
    for (int a : alpha) g = std::gcd(g, a);
    ChiInequality out;
    if (g != 1) {
        out.value = Rational(homotopy_rank_at(k, alpha));
        out.nonnegative = out.value >= 0;
        return out;
    }
    out.direct = true;
    const int m = k.vertex_count();
    const int deg = total_degree(alpha);
    const VertexMask s = support(alpha);
    std::vector<int> radix(m, 1);
    int box = 1;
    for (int i = 0; i < m; ++i) {
        radix[i] = box;
        box *= alpha[i] + 1;
    }
    auto digit = [&](int code, int i) { return code / radix[i] % (alpha[i] + 1); };
    std::vector<std::pair<int, long long>> parts;  // (code of J, χ̃(K_J))
    for (VertexMask j = s; j; j = (j - 1) & s) {
        const long long chi = reduced_euler_char(faces_within(k, j));
        if (chi == 0) continue;
        int code = 0;
        for (VertexMask r = j; r; r &= r - 1) code += radix[std::countr_zero(r)];
        parts.emplace_back(code, chi);
    }
    auto fits = [&](int a, int b) {
        for (int i = 0; i < m; ++i)
            if (digit(a, i) > digit(b, i)) return false;
        return true;
    };
    std::vector<Integer> c(box, 0);
    c[0] = 1;
    Rational value = 0;
    for (int nparts = 1; nparts <= deg; ++nparts) {
        std::vector<Integer> next(box, 0);
        for (int gcode = 1; gcode < box; ++gcode)
            for (const auto& [code, chi] : parts)
                if (fits(code, gcode) && c[gcode - code] != 0)
                    next[gcode] += c[gcode - code] * static_cast<long>(chi);
        c = std::move(next);
        Rational term(c[box - 1], nparts);
        term.canonicalize();
        value += term;
    }
    out.value = value;
    out.nonnegative = value >= 0;
    return out;
}

}  // namespace flagtor
