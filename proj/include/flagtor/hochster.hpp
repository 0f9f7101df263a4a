/**
 * @file hochster.hpp
 * @brief (Co)homology of moment-angle complexes Z_K and real moment-angle complexes R_K
 *        as direct sums over full subcomplexes.
 *
 *   H_p(Z_K) = ⊕_J H̃_{p-|J|-1}(K_J),   H_p(R_K) = ⊕_J H̃_{p-1}(K_J),
 *
 * and dually for cohomology. The per-subset groups come from a 2^m sweep that
 * is memoized in process and, optionally, as JSON files in a cache directory.
 */
#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "flagtor/complexes.hpp"
#include "flagtor/homology.hpp"

namespace flagtor {

enum class Theory { Homology, Cohomology };

inline const char* to_string(Theory t) { return t == Theory::Homology ? "homology" : "cohomology"; }

struct SweepOptions {
    unsigned threads = 1;
    /// Directory for persistent sweep results; empty disables the disk cache.
    std::string cache_dir;
};

/// Reduced (co)homology of every full subcomplex K_J, indexed by the mask of J.
struct SubsetSweep {
    int vertex_count = 0;
    Coefficients coeff = Coefficients::rationals();
    Theory theory = Theory::Homology;
    std::vector<HomologyProfile> profiles;
    bool loaded_from_disk = false;

    const HomologyProfile& at(VertexMask j) const { return profiles.at(j); }
};

inline void require_sweepable(const SimplicialComplex& k) {
    if (k.vertex_count() > kMaxSweepVertices)
        throw BoundExceeded("subset sweep needs m <= " + std::to_string(kMaxSweepVertices) +
                            ", got m = " + std::to_string(k.vertex_count()));
}

namespace detail {

inline std::string hex64(std::uint64_t x) {
    std::ostringstream os;
    os << std::hex << x;
    return os.str();
}

inline std::filesystem::path sweep_cache_path(const std::string& dir, const SimplicialComplex& k,
                                              const Coefficients& c, Theory t) {
    std::string coeff = c.to_string();
    for (char& ch : coeff)
        if (ch == ':') ch = '_';
    return std::filesystem::path(dir) /
           (hex64(canonical_hash(k)) + "-" + coeff + "-" + to_string(t) + ".json");
}

inline nlohmann::json profile_to_json(const HomologyProfile& h) {
    nlohmann::json groups = nlohmann::json::array();
    for (int n = h.min_degree(); n <= h.max_degree(); ++n) {
        nlohmann::json tors = nlohmann::json::array();
        for (const Integer& q : h.torsion(n)) tors.push_back(q.get_str());
        groups.push_back({{"degree", n}, {"rank", h.rank(n)}, {"torsion", tors}});
    }
    return groups;
}

inline HomologyProfile profile_from_json(const nlohmann::json& groups) {
    HomologyProfile h;
    for (const auto& g : groups) {
        DegreeGroup d;
        d.rank = g.at("rank").get<long long>();
        for (const auto& q : g.at("torsion")) d.torsion.emplace_back(q.get<std::string>());
        h.add(g.at("degree").get<int>(), d);
    }
    return h;
}

inline bool load_sweep(const std::filesystem::path& path, SubsetSweep& out) {
    std::ifstream in(path);
    if (!in) return false;
    try {
        nlohmann::json j;
        in >> j;
        if (j.at("m").get<int>() != out.vertex_count) return false;
        out.profiles.assign(std::size_t{1} << out.vertex_count, HomologyProfile{});
        for (const auto& e : j.at("subsets"))
            out.profiles.at(e.at("J").get<std::uint64_t>()) = profile_from_json(e.at("groups"));
        out.loaded_from_disk = true;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

inline void store_sweep(const std::filesystem::path& path, const SubsetSweep& s) {
    nlohmann::json subsets = nlohmann::json::array();
    for (std::size_t j = 0; j < s.profiles.size(); ++j)
        if (!s.profiles[j].is_zero())
            subsets.push_back({{"J", j}, {"groups", profile_to_json(s.profiles[j])}});
    nlohmann::json out = {{"m", s.vertex_count},
                          {"coeff", s.coeff.to_string()},
                          {"theory", to_string(s.theory)},
                          {"subsets", subsets}};
    std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp);
        f << out.dump();
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

namespace detail {

using SweepKey = std::tuple<std::uint64_t, std::string, int>;

struct SweepMemo {
    std::mutex mutex;
    std::map<SweepKey, std::shared_ptr<const SubsetSweep>> memo;
};

inline SweepMemo& sweep_memo() {
    static SweepMemo m;
    return m;
}

}  // namespace detail

/// Computes the sweep without consulting any cache.
inline SubsetSweep compute_subset_sweep(const SimplicialComplex& k, const Coefficients& c, Theory t,
                                        unsigned threads = 1) {
    require_sweepable(k);
    SubsetSweep s;
    s.vertex_count = k.vertex_count();
    s.coeff = c;
    s.theory = t;
    const std::size_t total = std::size_t{1} << k.vertex_count();
    s.profiles.assign(total, HomologyProfile{});
    auto work = [&](std::size_t start, std::size_t stride) {
        for (std::size_t j = start; j < total; j += stride) {
            const auto faces = faces_within(k, j);
            s.profiles[j] = t == Theory::Homology ? reduced_homology(faces, c)
                                                  : reduced_cohomology(faces, c);
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
        for (auto& th : pool) th.join();
    }
    return s;
}

/// Shared, memoized sweep keyed by (complex hash, coefficients, theory).
inline std::shared_ptr<const SubsetSweep> subset_sweep(const SimplicialComplex& k,
                                                       const Coefficients& c, Theory t,
                                                       const SweepOptions& opts = {}) {
    require_sweepable(k);
    auto& [mutex, memo] = detail::sweep_memo();
    const detail::SweepKey key{canonical_hash(k), c.to_string(), static_cast<int>(t)};
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    auto s = std::make_shared<SubsetSweep>();
    s->vertex_count = k.vertex_count();
    s->coeff = c;
    s->theory = t;
    bool loaded = false;
    std::filesystem::path path;
    if (!opts.cache_dir.empty()) {
        path = detail::sweep_cache_path(opts.cache_dir, k, c, t);
        loaded = detail::load_sweep(path, *s);
    }
    if (!loaded) {
        *s = compute_subset_sweep(k, c, t, opts.threads);
        if (!opts.cache_dir.empty()) detail::store_sweep(path, *s);
    }
    std::lock_guard lock(mutex);
    return memo.emplace(key, std::move(s)).first->second;
}

/// Drops every in-process sweep (the disk cache is untouched).
inline void clear_sweep_memo() {
    auto& [mutex, memo] = detail::sweep_memo();
    std::lock_guard lock(mutex);
    memo.clear();
}

struct HochsterEntry {
    VertexMask subset;
    /// Degree p of Z_K or R_K.
    int degree;
    /// Degree of the contributing reduced (co)homology group of K_J.
    int subcomplex_degree;
    DegreeGroup group;
};

struct HochsterTable {
    Coefficients coeff = Coefficients::rationals();
    Theory theory = Theory::Homology;
    std::vector<HochsterEntry> entries;  // nonzero, sorted by (degree, subset)
    HomologyProfile totals;
};

namespace detail {

inline HochsterTable hochster_sum(const SubsetSweep& s, bool real) {
    HochsterTable t;
    t.coeff = s.coeff;
    t.theory = s.theory;
    t.totals = HomologyProfile(0);
    for (std::size_t j = 0; j < s.profiles.size(); ++j) {
        const HomologyProfile& h = s.profiles[j];
        const int shift = real ? 1 : mask_size(j) + 1;
        for (int n = h.min_degree(); n <= h.max_degree(); ++n) {
            if (h.group(n).is_zero()) continue;
            t.entries.push_back({j, n + shift, n, h.group(n)});
            t.totals.add(n + shift, h.group(n));
        }
    }
    std::sort(t.entries.begin(), t.entries.end(), [](const HochsterEntry& a, const HochsterEntry& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.subset < b.subset;
    });
    return t;
}

}  // namespace detail

inline HochsterTable zk_homology(const SimplicialComplex& k, const Coefficients& c,
                                 const SweepOptions& opts = {}) {
    return detail::hochster_sum(*subset_sweep(k, c, Theory::Homology, opts), false);
}

inline HochsterTable zk_cohomology(const SimplicialComplex& k, const Coefficients& c,
                                   const SweepOptions& opts = {}) {
    return detail::hochster_sum(*subset_sweep(k, c, Theory::Cohomology, opts), false);
}

inline HochsterTable rk_homology(const SimplicialComplex& k, const Coefficients& c,
                                 const SweepOptions& opts = {}) {
    return detail::hochster_sum(*subset_sweep(k, c, Theory::Homology, opts), true);
}

inline HochsterTable rk_cohomology(const SimplicialComplex& k, const Coefficients& c,
                                   const SweepOptions& opts = {}) {
    return detail::hochster_sum(*subset_sweep(k, c, Theory::Cohomology, opts), true);
}

}  // namespace flagtor
