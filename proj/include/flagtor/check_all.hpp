/**
 * @file check_all.hpp
 * @brief Runs every cross-check of the library on one complex.
 *
 * Each property compares two independent computations (or a computation with
 * an identity it must satisfy). Properties that need a flag complex are
 * reported as skipped on non-flag input.
 */
#pragma once

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flagtor/complexes.hpp"
#include "flagtor/hochster.hpp"
#include "flagtor/homology.hpp"
#include "flagtor/lscat.hpp"
#include "flagtor/pontryagin.hpp"
#include "flagtor/series.hpp"

namespace flagtor {

enum class CheckStatus { Pass, Fail, Skipped, Info };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
        case CheckStatus::Info: return "info";
    }
    return "?";
}

struct PropertyResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
    double seconds = 0;
};

struct CheckAllOptions {
    Coefficients coeff = Coefficients::rationals();
    int trunc = kDefaultTruncation;
    SweepOptions sweep;
    int nonsquarefree_samples = 50;
    int nonsquarefree_max_degree = 6;
    /// Largest |β| for cobar slices; 0 picks 4 for m <= 10 and 3 above.
    int cobar_bound = 0;
    /// Largest word length compared with the series; 0 picks min(6, N) for m <= 8, else min(4, N).
    int word_bound = 0;
    std::uint64_t seed = 1;
    bool cup_search = true;
    long long cup_budget = kDefaultCupBudget;
};

namespace detail {

struct Outcome {
    bool ok = true;
    std::string detail;
};

inline std::string mask_string(VertexMask s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int v : mask_to_vertices(s)) {
        os << (first ? "" : ",") << v;
        first = false;
    }
    os << '}';
    return os.str();
}

inline std::string exponent_string(const Exponent& a) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ')';
    return os.str();
}

/// The coefficient rings used by field-level checks: Q, F_2 and the requested one.
inline std::vector<Coefficients> check_fields(const Coefficients& c) {
    std::vector<Coefficients> out{Coefficients::rationals(), Coefficients::prime_field(2)};
    if (c.is_field() && !(c == out[0]) && !(c == out[1])) out.push_back(c);
    return out;
}

/// Number of p-power torsion summands.
inline long long p_torsion_count(const std::vector<Integer>& torsion, unsigned long p) {
    long long n = 0;
    for (const Integer& q : torsion)
        if (q % p == 0) ++n;
    return n;
}

}  // namespace detail

inline std::vector<PropertyResult> check_all(const SimplicialComplex& k,
                                             const CheckAllOptions& opt = {}) {
    require_sweepable(k);
    const int m = k.vertex_count();
    const bool flag = is_flag(k);
    const int cobar_bound = opt.cobar_bound > 0 ? opt.cobar_bound : (m <= 10 ? 4 : 3);
    const int word_bound =
        opt.word_bound > 0 ? opt.word_bound : std::min(m <= 8 ? 6 : 4, opt.trunc);
    const auto fields = detail::check_fields(opt.coeff);
    const std::size_t subsets = std::size_t{1} << m;
    std::vector<PropertyResult> results;

    auto run = [&](const std::string& name, bool needs_flag, const std::function<detail::Outcome()>& body) {
        PropertyResult r;
        r.name = name;
        const auto start = std::chrono::steady_clock::now();
        if (needs_flag && !flag) {
            r.status = CheckStatus::Skipped;
            r.detail = "requires a flag complex";
        } else {
            try {
                const detail::Outcome o = body();
                r.status = o.ok ? CheckStatus::Pass : CheckStatus::Fail;
                r.detail = o.detail;
            } catch (const std::exception& e) {
                r.status = CheckStatus::Fail;
                r.detail = std::string("exception: ") + e.what();
            }
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
    };

    run("flagification_idempotent", false, [&] {
        const auto kf = flagification(k);
        if (!(flagification(kf) == kf)) return detail::Outcome{false, "K^f is not fixed"};
        if (flag && !(kf == k)) return detail::Outcome{false, "flag K differs from K^f"};
        if (!is_flag(kf)) return detail::Outcome{false, "K^f is not flag"};
        return detail::Outcome{true, std::to_string(kf.face_count()) + " faces in K^f"};
    });

    run("link_equals_full_subcomplex", true, [&] {
        for (VertexMask face : k.faces()) {
            VertexMask support = 0;
            for (int v = 0; v < m; ++v) {
                const VertexMask bit = VertexMask{1} << v;
                if (!(face & bit) && k.contains(face | bit)) support |= bit;
            }
            if (link(k, face).original_faces() != faces_within(k, support))
                return detail::Outcome{false, "link of " + detail::mask_string(face)};
        }
        return detail::Outcome{true, std::to_string(k.face_count()) + " links"};
    });

    run("nu_algorithms_agree", false, [&] {
        const int a = nu_filtration(k), b = nu_direct(k);
        return detail::Outcome{a == b, "filtration " + std::to_string(a) + ", direct " + std::to_string(b)};
    });

    run("nu_skeleton_bound", false, [&] {
        const auto kf = flagification(k);
        const int d = kf.dimension();
        const int i = common_skeleton_degree(k, kf);
        const int nu = nu_direct(k);
        if (i < 0) return detail::Outcome{true, "no common skeleton"};
        return detail::Outcome{nu <= d - i, "nu " + std::to_string(nu) + " <= " +
                                                std::to_string(d) + " - " + std::to_string(i)};
    });

    run("euler_characteristic", false, [&] {
        const auto sweep = subset_sweep(k, Coefficients::rationals(), Theory::Homology, opt.sweep);
        for (std::size_t j = 0; j < subsets; ++j)
            if (reduced_euler_char(faces_within(k, j)) != sweep->profiles[j].euler_characteristic())
                return detail::Outcome{false, "J = " + detail::mask_string(j)};
        return detail::Outcome{true, std::to_string(subsets) + " subcomplexes"};
    });

    run("universal_coefficients", false, [&] {
        const auto hz = subset_sweep(k, Coefficients::integers(), Theory::Homology, opt.sweep);
        const auto cz = subset_sweep(k, Coefficients::integers(), Theory::Cohomology, opt.sweep);
        std::vector<std::pair<Coefficients, std::shared_ptr<const SubsetSweep>>> fs;
        for (const auto& f : fields)
            fs.emplace_back(f, subset_sweep(k, f, Theory::Homology, opt.sweep));
        for (std::size_t j = 0; j < subsets; ++j) {
            const auto& h = hz->profiles[j];
            const auto& c = cz->profiles[j];
            const int lo = std::min(h.min_degree(), c.min_degree()) - 1;
            const int hi = std::max(h.max_degree(), c.max_degree()) + 1;
            for (int n = lo; n <= hi; ++n) {
                if (h.rank(n) != c.rank(n) || h.torsion(n) != c.torsion(n + 1))
                    return detail::Outcome{false, "Z cohomology at J = " + detail::mask_string(j)};
                for (const auto& [f, s] : fs) {
                    long long expect = h.rank(n);
                    if (f.kind() == Coefficients::Kind::PrimeField)
                        expect += detail::p_torsion_count(h.torsion(n), f.characteristic()) +
                                  detail::p_torsion_count(h.torsion(n - 1), f.characteristic());
                    if (s->profiles[j].rank(n) != expect)
                        return detail::Outcome{false, f.to_string() + " rank at J = " +
                                                          detail::mask_string(j)};
                }
            }
        }
        return detail::Outcome{true, "Z homology, Z cohomology and field ranks consistent"};
    });

    run("cdim_equals_field_maximum", false, [&] {
        const auto cz = subset_sweep(k, Coefficients::integers(), Theory::Cohomology, opt.sweep);
        const auto hz = subset_sweep(k, Coefficients::integers(), Theory::Homology, opt.sweep);
        const auto hq = subset_sweep(k, Coefficients::rationals(), Theory::Homology, opt.sweep);
        for (std::size_t j = 0; j < subsets; ++j) {
            int best = hdim_from_homology(hq->profiles[j]);
            const auto primes = torsion_primes(hz->profiles[j]);
            if (!primes.empty()) {
                const auto faces = faces_within(k, j);
                for (const Integer& p : primes)
                    best = std::max(best, hdim_from_homology(reduced_homology(
                                              faces, Coefficients::prime_field(p.get_ui()))));
            }
            if (best != cdim_from_cohomology(cz->profiles[j]))
                return detail::Outcome{false, "J = " + detail::mask_string(j)};
        }
        return detail::Outcome{true, ""};
    });

    run("tor_koszul_equals_subcomplexes", true, [&] {
        long long slices = 0;
        for (const auto& f : fields) {
            const auto sweep = subset_sweep(k, f, Theory::Homology, opt.sweep);
            for (std::size_t j = 0; j < subsets; ++j) {
                const HomologyProfile kos = homology(koszul_slice(k, exponent_of_mask(j, m)), f);
                const HomologyProfile& h = sweep->profiles[j];
                for (int n = 0; n <= std::max(kos.max_degree(), h.max_degree() + 1); ++n)
                    if (kos.rank(n) != h.rank(n - 1))
                        return detail::Outcome{false, f.to_string() + " at J = " + detail::mask_string(j) +
                                                          ", n = " + std::to_string(n)};
                ++slices;
            }
        }
        return detail::Outcome{true, std::to_string(slices) + " squarefree slices"};
    });

    std::vector<Exponent> samples;
    {
        std::mt19937_64 rng(opt.seed);
        while (static_cast<int>(samples.size()) < opt.nonsquarefree_samples) {
            Exponent beta(m, 0);
            const int deg = 2 + static_cast<int>(rng() % (opt.nonsquarefree_max_degree - 1));
            for (int d = 0; d < deg; ++d) ++beta[rng() % m];
            if (!is_squarefree(beta)) samples.push_back(beta);
        }
    }

    run("tor_nonsquarefree_vanishes", true, [&] {
        for (const auto& beta : samples)
            for (const auto& f : fields)
                if (!homology(koszul_slice(k, beta), f).is_zero())
                    return detail::Outcome{false, f.to_string() + " at beta = " + detail::exponent_string(beta)};
        return detail::Outcome{true, std::to_string(samples.size()) + " sampled multidegrees"};
    });

    run("koszul_differential_squares_to_zero", false, [&] {
        for (std::size_t j = 0; j < subsets; ++j)
            if (!boundary_squares_to_zero(koszul_slice(k, exponent_of_mask(j, m))))
                return detail::Outcome{false, "J = " + detail::mask_string(j)};
        for (const auto& beta : samples)
            if (!boundary_squares_to_zero(koszul_slice(k, beta)))
                return detail::Outcome{false, "beta = " + detail::exponent_string(beta)};
        return detail::Outcome{true, ""};
    });

    run("koszul_slice_euler_characteristic", false, [&] {
        for (std::size_t j = 0; j < subsets; ++j)
            if (slice_euler_characteristic(koszul_slice(k, exponent_of_mask(j, m))) !=
                -reduced_euler_char(faces_within(k, j)))
                return detail::Outcome{false, "J = " + detail::mask_string(j)};
        for (const auto& beta : samples)
            if (slice_euler_characteristic(koszul_slice(k, beta)) != 0)
                return detail::Outcome{false, "beta = " + detail::exponent_string(beta)};
        return detail::Outcome{true, ""};
    });

    run("cobar_diagonal_matches_normal_words", true, [&] {
        const auto counts = normal_word_counts(k, cobar_bound);
        const auto ix = monomial_index(m, cobar_bound);
        const Coefficients f = opt.coeff.is_field() ? opt.coeff : Coefficients::rationals();
        for (std::size_t a = 1; a < ix->size(); ++a) {
            const Exponent beta = ix->exponent_vector(a);
            const int s = total_degree(beta);
            const CobarSlice slice = cobar_slice(k, beta, cobar_bound);
            if (!cobar_squares_to_zero(slice))
                return detail::Outcome{false, "cobar differential squares nonzero at " + detail::exponent_string(beta)};
            const auto ext = cobar_ext(k, f, beta, cobar_bound);
            for (int t = 0; t < static_cast<int>(ext.size()); ++t) {
                const auto it = counts.find(beta);
                const long long words = it == counts.end() ? 0 : it->second;
                const long long expect = t == s ? words : 0;
                if (ext[t] != expect)
                    return detail::Outcome{false, "Ext^" + std::to_string(t) + " at " + detail::exponent_string(beta)};
            }
        }
        return detail::Outcome{true, std::to_string(ix->size() - 1) + " multidegrees with |beta| <= " +
                                         std::to_string(cobar_bound)};
    });

    run("milnor_moore_collapse", true, [&] {
        std::ostringstream os;
        for (const auto& f : fields) {
            const auto r = milnor_moore_check(k, f, opt.sweep);
            os << f.to_string() << ": " << r.e2_total << "=" << r.einf_total << " ";
            if (!r.collapse) return detail::Outcome{false, os.str()};
        }
        return detail::Outcome{true, os.str()};
    });

    std::optional<MultiSeries> ozk;
    std::optional<RankTable> ranks;

    run("series_inverse_identity", true, [&] {
        ozk = poincare_ozk(k, opt.trunc);
        const auto denom = to_rational(euler_denominator(k, opt.trunc));
        return detail::Outcome{mul(*ozk, denom) == MultiSeries::one(m, opt.trunc), ""};
    });

    run("series_nonnegative_integers", true, [&] {
        if (!ozk) ozk = poincare_ozk(k, opt.trunc);
        for (std::size_t i = 0; i < ozk->size(); ++i) {
            const Rational& c = (*ozk)[i];
            if (c < 0 || c.get_den() != 1)
                return detail::Outcome{false, "coefficient at " + detail::exponent_string(ozk->index().exponent_vector(i))};
        }
        return detail::Outcome{true, std::to_string(ozk->size()) + " coefficients"};
    });

    run("pbw_round_trip", true, [&] {
        if (!ozk) ozk = poincare_ozk(k, opt.trunc);
        ranks = homotopy_ranks(k, opt.trunc);
        return detail::Outcome{pbw_reconstruct(*ranks) == *ozk, ""};
    });

    run("panov_ray_identity", true, [&] { return detail::Outcome{panov_ray_check(k).equal, ""}; });

    run("chi_inequality_equals_rank", true, [&] {
        if (!ranks) ranks = homotopy_ranks(k, opt.trunc);
        const auto& ix = ranks->index();
        long long tested = 0;
        std::mt19937_64 rng(opt.seed + 7);
        for (std::size_t a = 1; a < ix.size() && tested < 200; ++a) {
            const Exponent alpha = ix.exponent_vector(a);
            if (exponent_gcd(ix.exponent(a), m) != 1) continue;
            if (!is_squarefree(alpha) && rng() % 8 != 0) continue;
            const auto chi = chi_inequality(k, alpha);
            if (chi.value != Rational((*ranks)[a]) || !chi.nonnegative)
                return detail::Outcome{false, "alpha = " + detail::exponent_string(alpha)};
            ++tested;
        }
        return detail::Outcome{true, std::to_string(tested) + " multidegrees"};
    });

    run("odj_series_matches_normal_words", true, [&] {
        const auto odj = poincare_odj(k, word_bound);
        const auto counts = normal_word_counts(k, word_bound);
        const auto& ix = odj.index();
        for (std::size_t a = 0; a < ix.size(); ++a) {
            const auto it = counts.find(ix.exponent_vector(a));
            const long long words = it == counts.end() ? 0 : it->second;
            if (odj[a] != Rational(static_cast<long>(words)))
                return detail::Outcome{false, "alpha = " + detail::exponent_string(ix.exponent_vector(a))};
        }
        return detail::Outcome{true, "words up to length " + std::to_string(word_bound)};
    });

    run("zk_euler_characteristic", false, [&] {
        const auto table = zk_homology(k, Coefficients::rationals(), opt.sweep);
        const auto chi = reduced_euler_chars(k);
        long long expect = 0;
        for (std::size_t j = 0; j < subsets; ++j) expect += (mask_size(j) % 2 ? 1 : -1) * chi[j];
        const long long got = table.totals.euler_characteristic();
        return detail::Outcome{got == expect, std::to_string(got) + " vs " + std::to_string(expect)};
    });

    run("cat_links_equal_subcomplexes", false, [&] {
        const int a = cat_via_links(k), b = cat_via_subcomplexes(k, opt.sweep);
        return detail::Outcome{a == b, "links " + std::to_string(a) + ", subcomplexes " + std::to_string(b)};
    });

    run("cat_equals_toomer_maximum", true, [&] {
        const int c = cat_zk(k, opt.sweep);
        const auto t = toomer_all_fields(k, opt.sweep);
        const bool simplex_case = is_simplex(k);
        return detail::Outcome{simplex_case || c == t.maximum,
                               "cat " + std::to_string(c) + ", max Toomer " + std::to_string(t.maximum)};
    });

    run("cat_lower_bound_consistent", false, [&] {
        const int bound = cat_lower_bound(k, opt.sweep);
        const auto kf = flagification(k);
        const int cat_f = cat_via_subcomplexes(kf, opt.sweep);
        const bool ok = bound == cat_f - nu_direct(k) || (is_simplex(kf) && bound <= 0);
        return detail::Outcome{ok && bound <= cat_f,
                               "bound " + std::to_string(bound) + " <= cat(K^f) " + std::to_string(cat_f)};
    });

    if (opt.cup_search && flag) {
        PropertyResult r;
        r.name = "cup_witness_search";
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto s = cup_witness_search(k, opt.sweep, opt.cup_budget);
            r.status = CheckStatus::Info;
            if (s.witness)
                r.detail = "witness in degree " + std::to_string(s.d) + " over " + s.witness->field;
            else
                r.detail = s.budget_exhausted ? "budget exhausted, no witness" : "no witness";
        } catch (const std::exception& e) {
            r.status = CheckStatus::Fail;
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
    }
    return results;
}

inline bool all_passed(const std::vector<PropertyResult>& results) {
    for (const auto& r : results)
        if (r.status == CheckStatus::Fail) return false;
    return true;
}

}  // namespace flagtor
