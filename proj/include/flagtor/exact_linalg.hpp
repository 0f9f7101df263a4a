/**
 * @file exact_linalg.hpp
 * @brief Exact sparse linear algebra: ranks over Q and F_p, Smith normal form over Z.
 *
 * Matrices hold arbitrary-precision integer entries in a canonical sparse
 * form (sorted by row then column, no zeros, no duplicates). Rank over F_p is
 * sparse modular elimination; rank over Q is fraction-free elimination with
 * content reduction; the Smith normal form first clears unit pivots sparsely
 * and then finishes on a small dense remainder.
 */
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flagtor/errors.hpp"

namespace flagtor {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_prime(unsigned long p) {
    if (p < 2) return false;
    const Integer z(p);
    return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

/// Coefficient ring for ranks and homology: Q, F_p, or Z.
class Coefficients {
public:
    enum class Kind { Rationals, PrimeField, Integers };

    static Coefficients rationals() { return Coefficients(Kind::Rationals, 0); }
    static Coefficients integers() { return Coefficients(Kind::Integers, 0); }
    static Coefficients prime_field(unsigned long p) {
        if (!is_prime(p)) throw NonPrimeModulus(p);
        return Coefficients(Kind::PrimeField, p);
    }

    /// Parses "q", "z" or "fp:P".
    static Coefficients parse(const std::string& text) {
        if (text == "q" || text == "Q") return rationals();
        if (text == "z" || text == "Z") return integers();
        if (text.rfind("fp:", 0) == 0) {
            const std::string digits = text.substr(3);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw InputError("bad coefficients: " + text);
            return prime_field(std::stoul(digits));
        }
        throw InputError("bad coefficients: " + text + " (expected q, z or fp:P)");
    }

    Kind kind() const noexcept { return kind_; }
    unsigned long characteristic() const noexcept { return p_; }
    bool is_field() const noexcept { return kind_ != Kind::Integers; }

    std::string to_string() const {
        switch (kind_) {
            case Kind::Rationals: return "q";
            case Kind::Integers: return "z";
            case Kind::PrimeField: return "fp:" + std::to_string(p_);
        }
        return "?";
    }

    bool operator==(const Coefficients&) const = default;

private:
    Coefficients(Kind k, unsigned long p) : kind_(k), p_(p) {}
    Kind kind_;
    unsigned long p_;
};

struct MatrixEntry {
    std::size_t row;
    std::size_t col;
    Integer value;
};

/// Sparse integer matrix in canonical form.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    /// Duplicate positions are summed; zero sums are dropped.
    ExactMatrix(std::size_t rows, std::size_t cols, std::vector<MatrixEntry> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        for (const auto& e : entries_)
            if (e.row >= rows_ || e.col >= cols_) throw Error("matrix entry out of bounds");
        std::sort(entries_.begin(), entries_.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        std::vector<MatrixEntry> merged;
        merged.reserve(entries_.size());
        for (auto& e : entries_) {
            if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
                merged.back().value += e.value;
            else
                merged.push_back(std::move(e));
        }
        std::erase_if(merged, [](const MatrixEntry& e) { return e.value == 0; });
        entries_ = std::move(merged);
    }

    static ExactMatrix from_dense(const std::vector<std::vector<long long>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows[0].size() : 0;
        std::vector<MatrixEntry> entries;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (rows[i][j] != 0) entries.push_back({i, j, Integer(static_cast<long>(rows[i][j]))});
        return ExactMatrix(r, c, std::move(entries));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const std::vector<MatrixEntry>& entries() const noexcept { return entries_; }
    bool is_zero() const noexcept { return entries_.empty(); }

    ExactMatrix transposed() const {
        std::vector<MatrixEntry> t;
        t.reserve(entries_.size());
        for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
        return ExactMatrix(cols_, rows_, std::move(t));
    }

    std::vector<std::vector<Integer>> to_dense() const {
        std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols_, 0));
        for (const auto& e : entries_) d[e.row][e.col] = e.value;
        return d;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<MatrixEntry> entries_;
};

inline ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix product dimension mismatch");
    std::vector<std::vector<std::pair<std::size_t, const Integer*>>> brows(b.rows());
    for (const auto& e : b.entries()) brows[e.row].emplace_back(e.col, &e.value);
    std::vector<MatrixEntry> out;
    for (const auto& e : a.entries())
        for (const auto& [col, v] : brows[e.col]) out.push_back({e.row, col, e.value * *v});
    return ExactMatrix(a.rows(), b.cols(), std::move(out));
}

namespace detail {

using ModRow = std::vector<std::pair<std::size_t, std::uint64_t>>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

/// r := r - c * s over F_p, both sorted by column.
inline ModRow axpy_mod(const ModRow& r, std::uint64_t c, const ModRow& s, std::uint64_t p) {
    ModRow out;
    out.reserve(r.size() + s.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
        if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
            out.push_back(r[i++]);
        } else {
            const std::uint64_t sub = mulmod(c, s[j].second, p);
            if (i < r.size() && r[i].first == s[j].first) {
                const std::uint64_t v = (r[i].second + p - sub) % p;
                if (v) out.emplace_back(r[i].first, v);
                ++i;
            } else if (sub) {
                out.emplace_back(s[j].first, (p - sub) % p);
            }
            ++j;
        }
    }
    return out;
}

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

/// a*r - b*s, both sorted by column.
inline IntRow combine(const Integer& a, const IntRow& r, const Integer& b, const IntRow& s) {
    IntRow out;
    out.reserve(r.size() + s.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
        if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
            out.emplace_back(r[i].first, a * r[i].second);
            ++i;
        } else if (i == r.size() || s[j].first < r[i].first) {
            out.emplace_back(s[j].first, -(b * s[j].second));
            ++j;
        } else {
            Integer v = a * r[i].second - b * s[j].second;
            if (v != 0) out.emplace_back(r[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

inline void make_primitive(IntRow& r) {
    Integer g = 0;
    for (const auto& e : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& e : r) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

inline std::vector<IntRow> integer_rows(const ExactMatrix& m) {
    std::vector<IntRow> rows(m.rows());
    for (const auto& e : m.entries()) rows[e.row].emplace_back(e.col, e.value);
    return rows;
}

}  // namespace detail

inline std::size_t rank_mod_p(const ExactMatrix& m, unsigned long p) {
    if (!is_prime(p)) throw NonPrimeModulus(p);
    std::vector<detail::ModRow> rows(m.rows());
    for (const auto& e : m.entries()) {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), e.value.get_mpz_t(), p);
        const std::uint64_t v = r.get_ui();
        if (v) rows[e.row].emplace_back(e.col, v);
    }
    std::unordered_map<std::size_t, detail::ModRow> pivots;  // leading column -> monic row
    for (auto& row : rows) {
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) {
                const std::uint64_t inv = detail::powmod(row.front().second, p - 2, p);
                for (auto& e : row) e.second = detail::mulmod(e.second, inv, p);
                pivots.emplace(row.front().first, std::move(row));
                break;
            }
            row = detail::axpy_mod(row, row.front().second, it->second, p);
        }
    }
    return pivots.size();
}

/// Fraction-free elimination over Z with content reduction; equals the rank over Q.
inline std::size_t rank_rational(const ExactMatrix& m) {
    auto rows = detail::integer_rows(m);
    std::unordered_map<std::size_t, detail::IntRow> pivots;
    for (auto& row : rows) {
        detail::make_primitive(row);
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) {
                pivots.emplace(row.front().first, std::move(row));
                break;
            }
            const Integer a = it->second.front().second;
            const Integer b = row.front().second;
            Integer g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            row = detail::combine(a / g, row, b / g, it->second);
            detail::make_primitive(row);
        }
    }
    return pivots.size();
}

/// Rank over the field of `c`; over Z this is the rank over Q.
inline std::size_t rank(const ExactMatrix& m, const Coefficients& c) {
    if (c.kind() == Coefficients::Kind::PrimeField) return rank_mod_p(m, c.characteristic());
    return rank_rational(m);
}

struct SNFResult {
    /// Nonzero invariant factors d_1 | d_2 | ... | d_r, all positive.
    std::vector<Integer> diagonal;
    std::size_t rank() const noexcept { return diagonal.size(); }
};

namespace detail {

/// Replaces a list of positive integers by the divisibility chain of diag(d).
inline void normalize_chain(std::vector<Integer>& d) {
    std::sort(d.begin(), d.end());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (d[j] % d[i] == 0) continue;
            Integer g, l;
            mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
            mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
            d[i] = g;
            d[j] = l;
        }
}

/// Diagonalizes a dense matrix by unimodular row/column operations.
inline std::vector<Integer> dense_diagonalize(std::vector<std::vector<Integer>> a) {
    std::vector<Integer> out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // minimal |pivot| in the trailing block
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (!best || abs(a[i][j]) < abs(a[best->first][best->second])))
                    best = {i, j};
        if (!best) break;
        std::swap(a[t], a[best->first]);
        for (auto& row : a) std::swap(row[t], row[best->second]);
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                const Integer q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                const Integer q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (clean) break;
            // move the smallest remainder in row/column t onto the diagonal
            std::size_t bi = t, bj = t;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) bi = i, bj = t;
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) bi = t, bj = j;
            std::swap(a[t], a[bi]);
            for (auto& row : a) std::swap(row[t], row[bj]);
        }
        out.push_back(abs(a[t][t]));
    }
    return out;
}

}  // namespace detail

/// Invariant factors of M over Z.
inline SNFResult smith_normal_form(const ExactMatrix& m) {
    auto rows = detail::integer_rows(m);
    std::vector<std::vector<std::size_t>> col_rows(m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& e : rows[r]) col_rows[e.first].push_back(r);
    std::vector<bool> alive(rows.size(), true);
    std::size_t units = 0;

    auto entry_in = [&](std::size_t r, std::size_t c) -> const Integer* {
        auto it = std::lower_bound(rows[r].begin(), rows[r].end(), c,
                                   [](const auto& e, std::size_t col) { return e.first < col; });
        return (it != rows[r].end() && it->first == c) ? &it->second : nullptr;
    };

    // Sparse phase: eliminate unit pivots, preferring short columns.
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!alive[r] || rows[r].empty()) continue;
            std::size_t best_col = 0;
            std::size_t best_len = SIZE_MAX;
            for (const auto& e : rows[r])
                if (abs(e.second) == 1 && col_rows[e.first].size() < best_len) {
                    best_col = e.first;
                    best_len = col_rows[e.first].size();
                }
            if (best_len == SIZE_MAX) continue;
            const Integer pivot = *entry_in(r, best_col);
            const std::vector<std::size_t> touched = col_rows[best_col];
            for (std::size_t s : touched) {
                if (s == r || !alive[s]) continue;
                const Integer* a = entry_in(s, best_col);
                if (!a) continue;
                const Integer factor = *a * pivot;  // pivot is its own inverse
                const detail::IntRow before = rows[s];
                rows[s] = detail::combine(1, rows[s], factor, rows[r]);
                // register columns that newly appeared in row s
                std::size_t i = 0;
                for (const auto& e : rows[s]) {
                    while (i < before.size() && before[i].first < e.first) ++i;
                    if (i == before.size() || before[i].first != e.first)
                        col_rows[e.first].push_back(s);
                }
            }
            alive[r] = false;
            col_rows[best_col].clear();
            ++units;
            progress = true;
        }
    }

    // Dense phase on the remaining block.
    std::vector<std::size_t> live_rows;
    std::unordered_map<std::size_t, std::size_t> col_index;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!alive[r] || rows[r].empty()) continue;
        live_rows.push_back(r);
        for (const auto& e : rows[r]) col_index.emplace(e.first, col_index.size());
    }
    std::vector<std::vector<Integer>> dense(live_rows.size(),
                                            std::vector<Integer>(col_index.size(), 0));
    for (std::size_t i = 0; i < live_rows.size(); ++i)
        for (const auto& e : rows[live_rows[i]]) dense[i][col_index.at(e.first)] = e.second;

    SNFResult out;
    out.diagonal = detail::dense_diagonalize(std::move(dense));
    detail::normalize_chain(out.diagonal);
    out.diagonal.insert(out.diagonal.begin(), units, Integer(1));
    return out;
}

/// Prime-power decomposition of the invariant factors greater than 1, ascending.
inline std::vector<Integer> elementary_divisors(const std::vector<Integer>& invariant_factors) {
    std::vector<Integer> out;
    for (Integer n : invariant_factors) {
        if (n < 0) n = -n;
        if (n <= 1) continue;
        for (Integer p = 2; p * p <= n; ++p) {
            if (n % p != 0) continue;
            Integer q = 1;
            while (n % p == 0) {
                n /= p;
                q *= p;
            }
            out.push_back(q);
        }
        if (n > 1) out.push_back(n);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Smallest prime dividing a prime power.
inline Integer prime_of(const Integer& prime_power) {
    for (Integer p = 2; p * p <= prime_power; ++p)
        if (prime_power % p == 0) return p;
    return prime_power;
}

}  // namespace flagtor
